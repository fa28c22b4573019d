"""Constructions that cross between formalisms.

* Merge over pure finite sets, and Zermelo numerals, where one-argument
  Merge is the successor and nothing more.
* A compiler from Turing-machine tables to Lisp programs that drive the
  interpreter's tape with ``cond``, ``set!``, ``eq?``, ``read``, ``write``
  and ``move``.
* The a^n b^n recognizer demo and a cross-formalism addition check.
"""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from itertools import product
from typing import Iterable, Optional

from . import lambda_calculus as lam
from . import sexpr, turing
from .lisp import DEFAULT_FUEL, EvalOutcome, Interpreter, LispError, word_from_token
from .sexpr import NIL, T, Pair, Symbol, from_list, to_string

# -- Merge and Zermelo numerals ---------------------------------------------

# A pure finite set is a frozenset of pure finite sets; hashing gives
# extensional equality for free.
EMPTY: frozenset = frozenset()


def merge(x: frozenset, y: frozenset) -> frozenset:
    return frozenset((x, y))


def zermelo_encode(n: int) -> frozenset:
    if n < 0:
        raise ValueError("Zermelo numerals are non-negative")
    s = EMPTY
    for _ in range(n):
        s = frozenset((s,))
    return s


def zermelo_decode(s: frozenset) -> Optional[int]:
    depth = 0
    while s:
        if len(s) != 1:
            return None
        (s,) = s
        depth += 1
    return depth


def show_set(s: frozenset) -> str:
    if not s:
        return "∅"
    return "{" + ", ".join(sorted(show_set(e) for e in s)) + "}"


# -- TM -> Lisp compiler ----------------------------------------------------

REQUIRED_PRIMITIVES = frozenset({"cond", "set!", "eq?", "read", "write", "move"})
PLUMBING = frozenset({
    "quote", "define", "lambda", "t", "nil", "left", "right", "halt",
    "state", "tm-run", "tm-loop", "tm-next", "tm-halt", "w", "s", "m",
})


@dataclass(frozen=True)
class CompiledProgram:
    """Lisp forms whose last form runs the machine.

    Running them leaves the final tape on the interpreter and evaluates to
    the final state on a halt, or ``nil`` when no clause matches.
    """

    forms: tuple
    required_primitives: frozenset = REQUIRED_PRIMITIVES

    def text(self) -> str:
        return "\n".join(to_string(f) for f in self.forms) + "\n"


def _word(name: str, what: str):
    try:
        w = word_from_token(name)
    except LispError:
        raise ValueError(f"{what} {name!r} cannot be written as a Lisp word") from None
    if to_string(w) != name:
        raise ValueError(f"{what} {name!r} does not print back as itself in Lisp")
    return w


def _q(x):
    return from_list([Symbol("quote"), x])


def _l(*items):
    return from_list(items)


def compile_tm(m: turing.Machine) -> CompiledProgram:
    for q in m.states:
        if q in ("t", "nil"):
            raise ValueError(f"state name {q!r} collides with a Lisp truth value")
    state_word = {q: _word(q, "state") for q in m.states}
    symbol_word = {s: _word(s, "symbol") for s in m.symbols}
    S = Symbol
    clauses = []
    for c in m.clauses:
        test = _l(S("cond"),
                  _l(_l(S("eq?"), S("state"), _q(state_word[c.state])),
                     _l(S("eq?"), _l(S("read")), _q(symbol_word[c.read]))),
                  _l(T, NIL))
        driver = S("tm-halt") if c.move == "halt" else S("tm-next")
        action = _l(driver,
                    _l(S("write"), _q(symbol_word[c.write])),
                    _l(S("set!"), S("state"), _q(state_word[c.next])),
                    _l(S("move"), _q(S(c.move))))
        clauses.append(_l(test, action))
    clauses.append(_l(T, NIL))
    loop = _l(S("define"), S("tm-loop"), _l(S("lambda"), NIL, Pair(S("cond"), from_list(clauses))))
    # arguments are evaluated left to right: write, set!, move, then recur
    nxt = _l(S("define"), S("tm-next"), _l(S("lambda"), _l(S("w"), S("s"), S("m")), _l(S("tm-loop"))))
    halt = _l(S("define"), S("tm-halt"), _l(S("lambda"), _l(S("w"), S("s"), S("m")), S("state")))
    run = _l(S("define"), S("tm-run"),
             _l(S("lambda"), _l(S("state")), loop, nxt, halt, _l(S("tm-loop"))))
    call = _l(S("tm-run"), _q(state_word[m.start]))
    return CompiledProgram((run, call))


def program_symbols(program: CompiledProgram) -> set[str]:
    """Every word in the program, printed."""
    seen: set[str] = set()
    todo = list(program.forms)
    while todo:
        x = todo.pop()
        if isinstance(x, Pair):
            todo.append(x.car)
            todo.append(x.cdr)
        else:
            seen.add(to_string(x))
    return seen


def allowed_symbols(m: turing.Machine) -> set[str]:
    return set(REQUIRED_PRIMITIVES | PLUMBING) | set(m.states) | set(m.symbols)


@dataclass
class CompiledRun:
    outcome: EvalOutcome
    tape: turing.Tape

    @property
    def halted(self) -> bool:
        return self.outcome.ok and self.outcome.value is not NIL


def run_compiled(program: CompiledProgram, m: turing.Machine, symbols: Iterable[str],
                 fuel: int = 1_000_000) -> CompiledRun:
    tape = turing.Tape.from_symbols(list(symbols), m.blank)
    interp = Interpreter(tape=tape)
    outcome = None
    for form in program.forms:
        outcome = interp.eval(form, fuel=fuel)
        if not outcome.ok:
            break
    return CompiledRun(outcome, tape)


def load_machine(name: str) -> turing.Machine:
    text = resources.files("recbench").joinpath(f"assets/machines/{name}.tm").read_text()
    return turing.parse_machine(text)


FIXTURES = ("succ", "adder", "flipper")


def input_alphabet(m: turing.Machine) -> list[str]:
    return [s for s in m.symbols if s != m.blank]


def compiler_equivalence(m: turing.Machine, max_len: int = 5, fuel: int = 10_000):
    """Compare the simulator and the compiled program on every input up to ``max_len``.

    Returns a list of ``(input, simulator outcome, compiled run)`` for every
    disagreement; empty means the two routes agree everywhere.
    """
    program = compile_tm(m)
    alphabet = input_alphabet(m)
    mismatches = []
    for n in range(max_len + 1):
        for word in product(alphabet, repeat=n):
            direct = turing.run(m, word, fuel)
            if direct.status == "fuel-exhausted":
                raise RuntimeError(f"simulator did not finish on {word}")
            compiled = run_compiled(program, m, word, fuel=100 * fuel)
            same = (compiled.outcome.ok and compiled.tape == direct.tape
                    and compiled.halted == (direct.status == "halted"))
            if same and compiled.halted:
                same = to_string(compiled.outcome.value) == to_string(word_from_token(direct.state))
            if not same:
                mismatches.append((word, direct, compiled))
    return mismatches


# -- a^n b^n ----------------------------------------------------------------

def anbn_member(word) -> bool:
    n = len(word)
    return n % 2 == 0 and list(word) == ["a"] * (n // 2) + ["b"] * (n // 2)


def anbn_interpreter() -> Interpreter:
    interp = Interpreter()
    text = resources.files("recbench").joinpath("assets/anbn.lisp").read_text()
    for out in interp.eval_text(text):
        if not out.ok:
            raise RuntimeError(f"anbn program failed to load: {out.render()}")
    return interp


@dataclass
class AnbnReport:
    checked: int
    accepted: list
    disagreements: list


def anbn_demo(n_max: int, fuel: int = DEFAULT_FUEL) -> AnbnReport:
    """Run the Lisp recognizer on every {a,b} string of length <= 2*n_max."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    interp = anbn_interpreter()
    recognizer = interp.global_env.lookup(Symbol("anbn?"))
    checked, accepted, disagreements = 0, [], []
    for n in range(2 * n_max + 1):
        for word in product("ab", repeat=n):
            out = interp.apply(recognizer, [from_list(Symbol(c) for c in word)], fuel)
            if not out.ok:
                raise RuntimeError(f"recognizer failed on {''.join(word)!r}: {out.render()}")
            verdict = out.value is not NIL
            checked += 1
            if verdict:
                accepted.append("".join(word))
            if verdict != anbn_member(word):
                disagreements.append("".join(word))
    return AnbnReport(checked, accepted, disagreements)


# -- addition three ways ----------------------------------------------------

def add_church(n: int, m: int, fuel: int = DEFAULT_FUEL) -> Optional[int]:
    return lam.church_decode(lam.church_add(n, m), fuel)


def add_lisp(n: int, m: int, fuel: int = DEFAULT_FUEL, interp: Optional[Interpreter] = None) -> Optional[int]:
    interp = interp or Interpreter(prelude=True)
    out = interp.eval(sexpr.read(f"(add {n} {m})"), fuel=fuel)
    return out.value if out.ok else None


def add_tm(n: int, m: int, fuel: int = DEFAULT_FUEL) -> Optional[int]:
    machine = load_machine("adder")
    out = turing.run(machine, ["1"] * n + ["0"] + ["1"] * m, fuel)
    if out.status != "halted":
        return None
    cells = out.tape.contents()
    if any(c != "1" for c in cells):
        return None
    return len(cells)


def numeral_agreement(limit: int = 10):
    """Pairs ``(n, m, church, lisp, tm)`` where any route misses ``n + m``."""
    interp = Interpreter(prelude=True)
    bad = []
    for n in range(limit + 1):
        for m in range(limit + 1):
            got = (add_church(n, m), add_lisp(n, m, interp=interp), add_tm(n, m))
            if any(g != n + m for g in got):
                bad.append((n, m) + got)
    return bad


# -- lambda terms <-> Lisp --------------------------------------------------

def _lisp_var(primes: int) -> Symbol:
    return Symbol(f"x{primes}")


def term_to_lisp(t: lam.Term):
    """``x''`` becomes the symbol ``x2``; abstractions become one-parameter lambdas."""
    if isinstance(t, lam.Var):
        return _lisp_var(t.primes)
    if isinstance(t, lam.Abs):
        return from_list([Symbol("lambda"), from_list([_lisp_var(t.param)]), term_to_lisp(t.body)])
    return from_list([term_to_lisp(t.fn), term_to_lisp(t.arg)])


def _primes(s) -> int:
    if not (isinstance(s, Symbol) and s.text[:1] == "x" and s.text[1:].isdigit()):
        raise ValueError(f"{to_string(s)} is not a translated variable")
    return int(s.text[1:])


def lisp_to_term(e) -> lam.Term:
    if isinstance(e, Symbol):
        return lam.Var(_primes(e))
    items = sexpr.to_list(e)
    if len(items) == 3 and items[0] == Symbol("lambda"):
        (param,) = sexpr.to_list(items[1])
        return lam.Abs(_primes(param), lisp_to_term(items[2]))
    if len(items) == 2:
        return lam.App(lisp_to_term(items[0]), lisp_to_term(items[1]))
    raise ValueError(f"{to_string(e)} is not a translated lambda term")


def closure_to_term(c) -> lam.Term:
    """Read a closure back as a closed term, substituting its captured bindings."""
    if len(c.params) != 1 or len(c.body) != 1:
        raise ValueError("only one-parameter, one-expression closures translate")
    t = lam.Abs(_primes(c.params[0]), lisp_to_term(c.body[0]))
    for v in sorted(lam.free_vars(t)):
        t = lam.substitute(t, v, closure_to_term(c.env.lookup(_lisp_var(v))))
    return t
