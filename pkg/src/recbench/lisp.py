"""A minimal Lisp: dispatcher evaluator, three kinds of variables, tape access.

The evaluator is an explicit-stack machine rather than a recursive Python
function, so a runaway Lisp recursion costs fuel instead of blowing the
Python stack.  Every dispatch of the evaluator consumes one unit of fuel.

Dispatch order: self-evaluating words (numbers, ``t``, ``nil``), ``quote``,
symbol lookup, the special forms ``define``/``set!``/``lambda``/``cond``,
then application (operator first, operands left to right).
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Callable, Literal, Optional, TextIO

from . import sexpr
from .sexpr import NIL, T, Pair, ParseError, Symbol, is_number, to_string
from .turing import MOVES, Tape

DEFAULT_FUEL = 10_000

QUOTE = Symbol("quote")
DEFINE = Symbol("define")
SET = Symbol("set!")
LAMBDA = Symbol("lambda")
COND = Symbol("cond")
SPECIAL_FORMS = frozenset({QUOTE, DEFINE, SET, LAMBDA, COND})

DEFINITION, MUTABLE, PARAMETER = "definition", "mutable", "parameter"


class LispError(Exception):
    """Evaluation fault.  ``expr`` is the offending expression, if known."""

    def __init__(self, message: str, expr=None):
        super().__init__(message)
        self.expr = expr

    def describe(self) -> str:
        msg = str(self)
        if self.expr is not None:
            msg += f" in {to_string(self.expr)}"
        return msg


class Env:
    """One frame of bindings plus a link to the enclosing frame."""

    __slots__ = ("bindings", "parent")

    def __init__(self, parent: Optional["Env"] = None):
        self.bindings: dict[Symbol, list] = {}
        self.parent = parent

    def find(self, name: Symbol) -> Optional[list]:
        env = self
        while env is not None:
            binding = env.bindings.get(name)
            if binding is not None:
                return binding
            env = env.parent
        return None

    def lookup(self, name: Symbol):
        binding = self.find(name)
        if binding is None:
            raise LispError(f"unbound symbol {name.text}", name)
        return binding[0]

    def kind(self, name: Symbol) -> Optional[str]:
        binding = self.find(name)
        return None if binding is None else binding[1]

    def define(self, name: Symbol, value, kind: str = DEFINITION) -> None:
        if name in self.bindings:
            raise LispError(f"{name.text} is already defined", name)
        self.bindings[name] = [value, kind]

    def set(self, name: Symbol, value) -> None:
        binding = self.find(name)
        if binding is None:
            raise LispError(f"unbound symbol {name.text}", name)
        if binding[1] == DEFINITION:
            raise LispError(f"{name.text} is a definition and cannot be modified", name)
        binding[0] = value
        binding[1] = MUTABLE


@dataclass(eq=False)
class Closure:
    params: tuple
    body: tuple
    env: Env

    def describe(self) -> str:
        return "#<closure (" + " ".join(p.text for p in self.params) + ")>"


@dataclass(eq=False)
class Primitive:
    name: str
    arity: int
    fn: Callable

    def describe(self) -> str:
        return f"#<primitive {self.name}>"


@dataclass
class EvalOutcome:
    status: Literal["value", "fuel-exhausted", "fault"]
    value: object = None
    steps: int = 0
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == "value"

    def render(self) -> str:
        if self.status == "value":
            return to_string(self.value)
        if self.status == "fault":
            return f"error: {self.error}"
        return f"fuel: exhausted after {self.steps} steps"


# primitives

def _word(x, who: str):
    if isinstance(x, Pair) or not (isinstance(x, Symbol) or is_number(x) or x is T or x is NIL):
        raise LispError(f"{who}: expected a word, got {to_string(x)}")
    return x


def _number(x, who: str) -> int:
    if not is_number(x):
        raise LispError(f"{who}: expected a number, got {to_string(x)}")
    return x


def _car(interp, x):
    if not isinstance(x, Pair):
        raise LispError(f"car: not a pair: {to_string(x)}")
    return x.car


def _cdr(interp, x):
    if not isinstance(x, Pair):
        raise LispError(f"cdr: not a pair: {to_string(x)}")
    return x.cdr


def _eq(interp, a, b):
    words = (Symbol, int)
    if isinstance(a, words) or a is T or a is NIL:
        if isinstance(b, words) or b is T or b is NIL:
            return T if a is b or (type(a) is type(b) and a == b) else NIL
    return NIL


def _tape(interp) -> Tape:
    if interp.tape is None:
        raise LispError("no tape attached")
    return interp.tape


def word_from_token(token: str):
    """The Lisp word a tape symbol reads as (``1`` is the number 1)."""
    try:
        value = sexpr.read(token)
    except ParseError:
        raise LispError(f"tape symbol {token!r} is not a Lisp word") from None
    if isinstance(value, Pair):
        raise LispError(f"tape symbol {token!r} is not a Lisp word")
    return value


def _read(interp):
    return word_from_token(_tape(interp).read())


def _write(interp, w):
    tape = _tape(interp)
    tape.write(to_string(_word(w, "write")))
    return w


def _move(interp, d):
    tape = _tape(interp)
    if not isinstance(d, Symbol) or d.text not in MOVES:
        raise LispError(f"move: expected left, right or halt, got {to_string(d)}")
    tape.move(d.text)
    return d


PRIMITIVES = {
    "cons": (2, lambda interp, a, b: Pair(a, b)),
    "car": (1, _car),
    "cdr": (1, _cdr),
    "atom?": (1, lambda interp, x: NIL if isinstance(x, Pair) else T),
    "eq?": (2, _eq),
    "1+": (1, lambda interp, n: _number(n, "1+") + 1),
    "1-": (1, lambda interp, n: max(_number(n, "1-") - 1, 0)),
    "number?": (1, lambda interp, x: T if is_number(x) else NIL),
    "read": (0, _read),
    "write": (1, _write),
    "move": (1, _move),
}


def _prelude_forms():
    text = resources.files("recbench").joinpath("assets/prelude.lisp").read_text()
    return sexpr.read_all(text)


def _check_name(name, form):
    if not isinstance(name, Symbol):
        raise LispError("variable name must be a symbol", form)
    if name in SPECIAL_FORMS:
        raise LispError(f"{name.text} is reserved", form)
    return name


def _lambda_parts(form):
    items = sexpr.to_list(form) if sexpr.is_proper_list(form) else None
    if items is None or len(items) < 3 or not sexpr.is_proper_list(items[1]):
        raise LispError("malformed lambda", form)
    params = tuple(_check_name(p, form) for p in sexpr.iter_list(items[1]))
    if len(set(params)) != len(params):
        raise LispError("repeated parameter", form)
    return params, tuple(items[2:])


def _cond_clauses(form):
    if not sexpr.is_proper_list(form):
        raise LispError("malformed cond", form)
    clauses = []
    for clause in sexpr.iter_list(form.cdr):
        if not sexpr.is_proper_list(clause) or len(sexpr.to_list(clause)) != 2:
            raise LispError("cond clause must be (test expr)", clause)
        clauses.append((clause.car, clause.cdr.car))
    return clauses


def _two_part(form, what: str):
    items = sexpr.to_list(form) if sexpr.is_proper_list(form) else []
    if len(items) != 3:
        raise LispError(f"malformed {what}", form)
    return _check_name(items[1], form), items[2]


class Interpreter:
    """One Lisp session: a global environment and an optional tape."""

    def __init__(self, tape: Optional[Tape] = None, prelude: bool = False):
        self.tape = tape
        self.global_env = Env()
        for name, (arity, fn) in PRIMITIVES.items():
            self.global_env.define(Symbol(name), Primitive(name, arity, fn))
        if prelude:
            for form in _prelude_forms():
                out = self.eval(form, fuel=DEFAULT_FUEL)
                if not out.ok:
                    raise RuntimeError(f"prelude failed: {out.render()}")

    def eval(self, expr, env: Optional[Env] = None, fuel: int = DEFAULT_FUEL) -> EvalOutcome:
        return self._run(("eval", expr, env or self.global_env), fuel)

    def apply(self, fn, args, fuel: int = DEFAULT_FUEL) -> EvalOutcome:
        return self._run(("apply", fn, list(args)), fuel)

    def eval_text(self, text: str, fuel: int = DEFAULT_FUEL) -> list[EvalOutcome]:
        """Evaluate every form in ``text`` with ``fuel`` each."""
        return [self.eval(form, fuel=fuel) for form in sexpr.read_all(text)]

    def _run(self, start, fuel: int) -> EvalOutcome:
        if fuel < 0:
            raise ValueError("fuel must be non-negative")
        steps = 0
        stack: list = []
        mode, *regs = start
        try:
            while True:
                if mode == "eval":
                    expr, env = regs
                    if steps >= fuel:
                        return EvalOutcome("fuel-exhausted", steps=steps)
                    steps += 1
                    mode, regs = self._dispatch(expr, env, stack)
                elif mode == "return":
                    if not stack:
                        return EvalOutcome("value", regs[0], steps)
                    mode, regs = self._resume(stack.pop(), regs[0], stack)
                else:
                    fn, args = regs
                    mode, regs = self._apply(fn, args, stack, None)
        except LispError as err:
            return EvalOutcome("fault", steps=steps, error=err.describe())

    def _dispatch(self, expr, env: Env, stack: list):
        if is_number(expr) or expr is T or expr is NIL:
            return "return", [expr]
        if isinstance(expr, Pair) and expr.car == QUOTE:
            if not (isinstance(expr.cdr, Pair) and expr.cdr.cdr is NIL):
                raise LispError("malformed quote", expr)
            return "return", [expr.cdr.car]
        if isinstance(expr, Symbol):
            return "return", [env.lookup(expr)]
        if not isinstance(expr, Pair):
            raise LispError("cannot evaluate", expr)
        head = expr.car
        if head == DEFINE:
            name, value_expr = _two_part(expr, "define")
            if name in env.bindings:
                raise LispError(f"{name.text} is already defined", expr)
            stack.append(("define", env, name, expr))
            return "eval", [value_expr, env]
        if head == SET:
            name, value_expr = _two_part(expr, "set!")
            stack.append(("set", env, name, expr))
            return "eval", [value_expr, env]
        if head == LAMBDA:
            params, body = _lambda_parts(expr)
            return "return", [Closure(params, body, env)]
        if head == COND:
            clauses = _cond_clauses(expr)
            if not clauses:
                return "return", [NIL]
            stack.append(("cond", env, clauses, 0))
            return "eval", [clauses[0][0], env]
        if not sexpr.is_proper_list(expr):
            raise LispError("malformed application", expr)
        exprs = sexpr.to_list(expr)
        stack.append(("args", env, exprs, [], expr))
        return "eval", [exprs[0], env]

    def _resume(self, frame, value, stack: list):
        kind = frame[0]
        if kind == "args":
            _, env, exprs, values, form = frame
            values.append(value)
            if len(values) < len(exprs):
                stack.append(frame)
                return "eval", [exprs[len(values)], env]
            return self._apply(values[0], values[1:], stack, form)
        if kind == "cond":
            _, env, clauses, i = frame
            if value is not NIL:
                return "eval", [clauses[i][1], env]
            if i + 1 == len(clauses):
                return "return", [NIL]
            stack.append(("cond", env, clauses, i + 1))
            return "eval", [clauses[i + 1][0], env]
        if kind == "seq":
            _, env, body, i = frame
            if i + 1 < len(body):
                stack.append(("seq", env, body, i + 1))
            return "eval", [body[i], env]
        if kind == "define":
            _, env, name, form = frame
            try:
                env.define(name, value)
            except LispError as err:
                raise LispError(str(err), form) from None
            return "return", [name]
        _, env, name, form = frame
        try:
            env.set(name, value)
        except LispError as err:
            raise LispError(str(err), form) from None
        return "return", [value]

    def _apply(self, fn, args: list, stack: list, form):
        if isinstance(fn, Primitive):
            if len(args) != fn.arity:
                raise LispError(f"{fn.name} takes {fn.arity} argument(s), got {len(args)}", form)
            try:
                return "return", [fn.fn(self, *args)]
            except LispError as err:
                raise LispError(str(err), form) from None
        if isinstance(fn, Closure):
            if len(args) != len(fn.params):
                raise LispError(
                    f"function takes {len(fn.params)} argument(s), got {len(args)}", form
                )
            frame = Env(fn.env)
            for name, arg in zip(fn.params, args):
                frame.bindings[name] = [arg, PARAMETER]
            if len(fn.body) > 1:
                stack.append(("seq", frame, fn.body, 1))
            return "eval", [fn.body[0], frame]
        raise LispError(f"not a function: {to_string(fn)}", form)

    # read-eval-print

    def repl(self, stream: TextIO, out: TextIO, fuel: int = DEFAULT_FUEL, prompt: str = "> ") -> list[EvalOutcome]:
        """Evaluate forms from ``stream`` as they complete, printing one line each."""
        outcomes = []
        buffer = ""
        if prompt:
            out.write(prompt)
            out.flush()
        for line in stream:
            buffer += line
            try:
                forms = sexpr.read_all(buffer)
            except ParseError as err:
                if err.kind == "unbalanced" and err.pos == len(buffer):
                    continue
                out.write(f"error: {err}\n")
                outcomes.append(EvalOutcome("fault", error=str(err)))
                forms = []
            buffer = ""
            for form in forms:
                result = self.eval(form, fuel=fuel)
                outcomes.append(result)
                out.write(result.render() + "\n")
            if prompt:
                out.write(prompt)
                out.flush()
        if buffer.strip():
            try:
                sexpr.read_all(buffer)
            except ParseError as err:
                out.write(f"error: {err}\n")
                outcomes.append(EvalOutcome("fault", error=str(err)))
        if prompt:
            out.write("\n")
        return outcomes

