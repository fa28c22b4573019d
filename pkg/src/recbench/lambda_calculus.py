"""Untyped lambda calculus over the single-letter, primed-variable syntax.

Variables are ``x``, ``x'``, ``x''`` ...; a variable is identified by its
prime count alone.  Terms are immutable dataclasses.  Reduction is
step-at-a-time so callers can bound it with fuel.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Union

DEFAULT_FUEL = 10_000

Strategy = Literal["normal", "cbv"]


@dataclass(frozen=True)
class Var:
    primes: int

    def __post_init__(self):
        if self.primes < 0:
            raise ValueError("prime count must be non-negative")


@dataclass(frozen=True)
class Abs:
    param: int
    body: "Term"


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


Term = Union[Var, Abs, App]


class LambdaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Outcome:
    """Result of :func:`normalize`; ``status`` is ``normalized`` or ``fuel-exhausted``."""

    status: Literal["normalized", "fuel-exhausted"]
    term: Term
    steps: int

    @property
    def normalized(self) -> bool:
        return self.status == "normalized"


# parsing

_LAMBDAS = ("λ", "\\")


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i].isspace():
        i += 1
    return i


def _variable(text: str, i: int) -> tuple[int, int]:
    if i >= len(text) or text[i] != "x":
        raise LambdaSyntaxError("expected variable 'x'", i)
    i += 1
    primes = 0
    while i < len(text) and text[i] in "'′":
        primes += 1
        i += 1
    return primes, i


def _separator(text: str, i: int) -> int:
    j = _skip_ws(text, i)
    if j == i:
        raise LambdaSyntaxError("expected whitespace", i)
    return j


def _close(text: str, i: int) -> int:
    if i >= len(text) or text[i] != ")":
        raise LambdaSyntaxError("expected ')'", i)
    return i + 1


def parse_lambda(text: str) -> Term:
    """Parse ``S -> X | (λX S) | (S S)``, ``X -> x | X'``.

    Whitespace runs stand in for the grammar's single space, and leading or
    trailing whitespace is ignored.  The parser keeps its own stack, so it
    halts on every input.
    """
    i = _skip_ws(text, 0)
    # pending frames: ("abs", param) | ("fn",) | ("arg", fn_term)
    stack: list = []
    while True:
        # parse a term start
        if i < len(text) and text[i] == "x":
            primes, i = _variable(text, i)
            value: Term = Var(primes)
        elif i < len(text) and text[i] == "(":
            i += 1
            if i < len(text) and text[i] in _LAMBDAS:
                param, i = _variable(text, i + 1)
                i = _separator(text, i)
                stack.append(("abs", param))
            else:
                stack.append(("fn",))
            continue
        else:
            raise LambdaSyntaxError("expected 'x' or '('", i)
        # reduce completed terms against pending frames
        while True:
            if not stack:
                i = _skip_ws(text, i)
                if i != len(text):
                    raise LambdaSyntaxError("trailing input", i)
                return value
            frame = stack.pop()
            if frame[0] == "abs":
                i = _close(text, i)
                value = Abs(frame[1], value)
            elif frame[0] == "fn":
                i = _separator(text, i)
                stack.append(("arg", value))
                break
            else:
                i = _close(text, i)
                value = App(frame[1], value)


def var_name(primes: int) -> str:
    return "x" + "'" * primes


def print_lambda(t: Term) -> str:
    if isinstance(t, Var):
        return var_name(t.primes)
    if isinstance(t, Abs):
        return f"(λ{var_name(t.param)} {print_lambda(t.body)})"
    return f"({print_lambda(t.fn)} {print_lambda(t.arg)})"


# variables

def free_vars(t: Term) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset({t.primes})
    if isinstance(t, Abs):
        return free_vars(t.body) - {t.param}
    return free_vars(t.fn) | free_vars(t.arg)


def all_vars(t: Term) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset({t.primes})
    if isinstance(t, Abs):
        return all_vars(t.body) | {t.param}
    return all_vars(t.fn) | all_vars(t.arg)


def _debruijn(t: Term, bound: tuple):
    if isinstance(t, Var):
        for depth, name in enumerate(reversed(bound)):
            if name == t.primes:
                return ("bound", depth)
        return ("free", t.primes)
    if isinstance(t, Abs):
        return ("abs", _debruijn(t.body, bound + (t.param,)))
    return ("app", _debruijn(t.fn, bound), _debruijn(t.arg, bound))


def alpha_equal(a: Term, b: Term) -> bool:
    return _debruijn(a, ()) == _debruijn(b, ())


def substitute(body: Term, name: int, value: Term) -> Term:
    """Capture-avoiding ``body[name := value]``.

    A binder that would capture a free variable of ``value`` is renamed to
    one past the largest prime count in sight.
    """
    if isinstance(body, Var):
        return value if body.primes == name else body
    if isinstance(body, App):
        return App(substitute(body.fn, name, value), substitute(body.arg, name, value))
    if body.param == name or name not in free_vars(body.body):
        return body
    value_free = free_vars(value)
    if body.param not in value_free:
        return Abs(body.param, substitute(body.body, name, value))
    fresh = max(all_vars(body) | all_vars(value) | {name}) + 1
    renamed = substitute(body.body, body.param, Var(fresh))
    return Abs(fresh, substitute(renamed, name, value))


# reduction

def _contract(redex: App) -> Term:
    return substitute(redex.fn.body, redex.fn.param, redex.arg)


def _step_normal(t: Term) -> Optional[Term]:
    if isinstance(t, Var):
        return None
    if isinstance(t, Abs):
        body = _step_normal(t.body)
        return None if body is None else Abs(t.param, body)
    if isinstance(t.fn, Abs):
        return _contract(t)
    fn = _step_normal(t.fn)
    if fn is not None:
        return App(fn, t.arg)
    arg = _step_normal(t.arg)
    return None if arg is None else App(t.fn, arg)


def _step_cbv(t: Term) -> Optional[Term]:
    # leftmost-innermost: operator, then operand, are reduced before the
    # enclosing redex fires, so the operand is always a normal form then
    if isinstance(t, Var):
        return None
    if isinstance(t, Abs):
        body = _step_cbv(t.body)
        return None if body is None else Abs(t.param, body)
    fn = _step_cbv(t.fn)
    if fn is not None:
        return App(fn, t.arg)
    arg = _step_cbv(t.arg)
    if arg is not None:
        return App(t.fn, arg)
    if isinstance(t.fn, Abs):
        return _contract(t)
    return None


def beta_step(t: Term, strategy: Strategy = "normal") -> Optional[Term]:
    """Contract one redex chosen by ``strategy``; ``None`` at normal form."""
    if strategy == "normal":
        return _step_normal(t)
    if strategy == "cbv":
        return _step_cbv(t)
    raise ValueError(f"unknown strategy {strategy!r}")


def normalize(t: Term, strategy: Strategy = "normal", fuel: int = DEFAULT_FUEL) -> Outcome:
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    steps = 0
    while True:
        nxt = beta_step(t, strategy)
        if nxt is None:
            return Outcome("normalized", t, steps)
        if steps == fuel:
            return Outcome("fuel-exhausted", t, steps)
        t = nxt
        steps += 1


# standard terms

IDENTITY = parse_lambda("(λx x)")
OMEGA = parse_lambda("((λx (x x)) (λx (x x)))")
# λn λf λa (f ((n f) a))
SUCC = parse_lambda("(λx (λx' (λx'' (x' ((x x') x'')))))")
# λm λn λf λa ((m f) ((n f) a))
PLUS = parse_lambda("(λx (λx' (λx'' (λx''' ((x x'') ((x' x'') x'''))))))")
# λf ((λx (f (x x))) (λx (f (x x))))
Y = parse_lambda("(λx' ((λx (x' (x x))) (λx (x' (x x)))))")


def church_encode(n: int) -> Term:
    """``λf λa f(f(...f(a)))`` with ``f = x`` and ``a = x'``."""
    if n < 0:
        raise ValueError("Church numerals are non-negative")
    body: Term = Var(1)
    for _ in range(n):
        body = App(Var(0), body)
    return Abs(0, Abs(1, body))


def church_decode(t: Term, fuel: int = DEFAULT_FUEL) -> Optional[int]:
    if free_vars(t):
        raise ValueError("church_decode needs a closed term")
    f = max(all_vars(t)) + 1
    a = f + 1
    out = normalize(App(App(t, Var(f)), Var(a)), "normal", fuel)
    if not out.normalized:
        return None
    term, count = out.term, 0
    while isinstance(term, App) and term.fn == Var(f):
        term = term.arg
        count += 1
    return count if term == Var(a) else None


def church_add(n: int, m: int) -> Term:
    return App(App(PLUS, church_encode(n)), church_encode(m))
