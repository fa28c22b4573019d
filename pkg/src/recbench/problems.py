"""Problems as conditions with an unknown, and the ways of resolving them.

A problem pairs an unknown with a one-argument Lisp condition and a finite
domain of candidates.  Resolutions come in four kinds:

``Routine``  stored solutions for one known problem
``Trial``    candidates tried in order; the first that satisfies wins
``Inverse``  the domain partitioned by the condition
``Analogy``  a Lisp transform splits the problem, child resolutions solve
             the parts, a Lisp combiner merges their solution lists

Problems and resolutions are S-expressions in both directions, so a
transform may build problems and a resolution can be stored as data::

    (problem x (lambda (x) (eq? (add x x) (mul x x))) (0 1 2 3 4))
    (routine <problem> (0 2))
    (trial (1 2 3 4))
    (inverse)                  ; or (inverse (<domain>...))
    (analogy <transform> <combiner> (<child>...))
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Union

from . import sexpr
from .lisp import DEFAULT_FUEL, Interpreter
from .sexpr import NIL, Pair, Symbol, from_list, to_string


class ProblemError(ValueError):
    pass


class FuelExhausted(Exception):
    """A condition, transform or combiner ran out of fuel."""

    def __init__(self, where: str, steps: int):
        super().__init__(f"fuel exhausted after {steps} steps in {where}")
        self.steps = steps


_PROBLEM = Symbol("problem")


@dataclass(frozen=True)
class Problem:
    unknown: Symbol
    condition: object
    domain: tuple = ()

    def to_sexpr(self):
        return from_list([_PROBLEM, self.unknown, self.condition, from_list(self.domain)])

    @classmethod
    def from_sexpr(cls, e) -> "Problem":
        items = _items(e, "problem")
        if len(items) != 4 or items[0] != _PROBLEM:
            raise ProblemError(f"expected (problem <unknown> <condition> (<domain>...)), got {to_string(e)}")
        if not isinstance(items[1], Symbol):
            raise ProblemError("the unknown must be a symbol")
        return cls(items[1], items[2], tuple(_items(items[3], "domain")))


def _items(e, what: str) -> list:
    if not sexpr.is_proper_list(e):
        raise ProblemError(f"{what} must be a proper list: {to_string(e)}")
    return sexpr.to_list(e)


# resolutions

@dataclass(frozen=True)
class Routine:
    key: object
    solutions: tuple = ()


@dataclass(frozen=True)
class Trial:
    candidates: tuple = ()


@dataclass(frozen=True)
class Inverse:
    domain: Optional[tuple] = None


@dataclass(frozen=True)
class Analogy:
    transform: object
    combiner: object
    children: tuple = ()


Resolution = Union[Routine, Trial, Inverse, Analogy]


def serialize(r: Resolution):
    if isinstance(r, Routine):
        return from_list([Symbol("routine"), r.key, from_list(r.solutions)])
    if isinstance(r, Trial):
        return from_list([Symbol("trial"), from_list(r.candidates)])
    if isinstance(r, Inverse):
        if r.domain is None:
            return from_list([Symbol("inverse")])
        return from_list([Symbol("inverse"), from_list(r.domain)])
    if isinstance(r, Analogy):
        children = from_list([serialize(c) for c in r.children])
        return from_list([Symbol("analogy"), r.transform, r.combiner, children])
    raise TypeError(f"not a resolution: {r!r}")


def deserialize(e) -> Resolution:
    items = _items(e, "resolution")
    head = items[0].text if items and isinstance(items[0], Symbol) else None
    if head == "routine" and len(items) == 3:
        return Routine(items[1], tuple(_items(items[2], "solutions")))
    if head == "trial" and len(items) == 2:
        return Trial(tuple(_items(items[1], "candidates")))
    if head == "inverse" and len(items) == 1:
        return Inverse()
    if head == "inverse" and len(items) == 2:
        return Inverse(tuple(_items(items[1], "domain")))
    if head == "analogy" and len(items) == 4:
        return Analogy(items[1], items[2], tuple(deserialize(c) for c in _items(items[3], "children")))
    raise ProblemError(f"malformed resolution {to_string(e)}")


# evaluation

def _call(fn_expr, args, fuel: int, where: str):
    """Evaluate ``(fn_expr 'arg ...)`` in a fresh interpreter with the prelude."""
    quoted = [from_list([Symbol("quote"), a]) for a in args]
    out = Interpreter(prelude=True).eval(from_list([fn_expr] + quoted), fuel=fuel)
    if out.status == "fuel-exhausted":
        raise FuelExhausted(where, out.steps)
    if out.status == "fault":
        raise ProblemError(f"{where}: {out.error}")
    return out.value


Verdict = Literal["satisfied", "unsatisfied", "fuel-exhausted"]


def check(p: Problem, candidate, fuel: int = DEFAULT_FUEL) -> Verdict:
    try:
        value = _call(p.condition, [candidate], fuel, "condition")
    except FuelExhausted:
        return "fuel-exhausted"
    return "unsatisfied" if value is NIL else "satisfied"


def _satisfies(p: Problem, candidate, fuel: int) -> bool:
    verdict = check(p, candidate, fuel)
    if verdict == "fuel-exhausted":
        raise FuelExhausted(f"condition on {to_string(candidate)}", fuel)
    return verdict == "satisfied"


def solve_routine(r: Routine, p: Problem) -> Optional[list]:
    if r.key != p.to_sexpr():
        return None
    return list(r.solutions)


def solve_trial(candidates, p: Problem, fuel: int = DEFAULT_FUEL):
    """First satisfying candidate, or ``None``."""
    for c in candidates:
        if _satisfies(p, c, fuel):
            return c
    return None


def solve_inverse(p: Problem, fuel: int = DEFAULT_FUEL, domain=None) -> tuple[list, list]:
    """Split the domain into ``(solutions, non_solutions)``, order kept."""
    yes, no = [], []
    for c in p.domain if domain is None else domain:
        (yes if _satisfies(p, c, fuel) else no).append(c)
    return yes, no


def run_resolution(r: Resolution, p: Problem, fuel: int = DEFAULT_FUEL) -> Optional[list]:
    """Solutions found by ``r``; ``None`` when a routine does not apply."""
    if isinstance(r, Routine):
        return solve_routine(r, p)
    if isinstance(r, Trial):
        found = solve_trial(r.candidates, p, fuel)
        return [] if found is None else [found]
    if isinstance(r, Inverse):
        return solve_inverse(p, fuel, r.domain)[0]
    if isinstance(r, Analogy):
        parts = _call(r.transform, [p.to_sexpr()], fuel, "transform")
        subproblems = [Problem.from_sexpr(e) for e in _items(parts, "transform result")]
        if len(subproblems) != len(r.children):
            raise ProblemError(
                f"transform gave {len(subproblems)} subproblems for {len(r.children)} child resolutions"
            )
        solved = []
        for child, sub in zip(r.children, subproblems):
            sols = run_resolution(child, sub, fuel)
            if sols is None:
                return None
            solved.append(from_list(sols))
        combined = _call(r.combiner, [from_list(solved)], fuel, "combiner")
        return _items(combined, "combiner result")
    raise TypeError(f"not a resolution: {r!r}")


def read_session(text: str) -> tuple[Problem, Resolution]:
    """A problem form optionally followed by a resolution form (default: inverse)."""
    forms = sexpr.read_all(text)
    if not forms or len(forms) > 2:
        raise ProblemError("expected a problem form and at most one resolution form")
    problem = Problem.from_sexpr(forms[0])
    resolution = deserialize(forms[1]) if len(forms) == 2 else Inverse()
    return problem, resolution


# the running example: x? [2x = x^2]

TWICE_IS_SQUARE = sexpr.read("(lambda (x) (twice-is-square x))")


def twice_is_square(domain=range(5)) -> Problem:
    return Problem(Symbol("x"), TWICE_IS_SQUARE, tuple(domain))
