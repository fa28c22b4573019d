"""Deterministic single-tape Turing machines.

A machine file is a three-line header followed by five-token clauses::

    states: q0 q1
    symbols: _ 1
    blank: _
    q0 1 q0 1 right
    q0 _ q0 1 halt

``#`` starts a comment.  The clause body is the regular language
``(QYQYZ)*``; :func:`parse_machine` reads it with one left-to-right scan and
no recursion.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Optional

DEFAULT_FUEL = 10_000

MOVES = ("left", "right", "halt")
_OFFSET = {"left": -1, "right": 1, "halt": 0}


class MachineSyntaxError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Clause:
    state: str
    read: str
    next: str
    write: str
    move: str

    def __post_init__(self):
        if self.move not in MOVES:
            raise ValueError(f"move must be one of {MOVES}, got {self.move!r}")


@dataclass(frozen=True)
class Machine:
    states: tuple[str, ...]
    symbols: tuple[str, ...]
    blank: str
    clauses: tuple[Clause, ...] = ()
    table: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self.states:
            raise ValueError("a machine needs at least one state")
        if self.blank not in self.symbols:
            raise ValueError(f"blank {self.blank!r} is not a declared symbol")
        table = {}
        for c in self.clauses:
            for s in (c.state, c.next):
                if s not in self.states:
                    raise ValueError(f"undeclared state {s!r}")
            for s in (c.read, c.write):
                if s not in self.symbols:
                    raise ValueError(f"undeclared symbol {s!r}")
            if (c.state, c.read) in table:
                raise ValueError(f"duplicate clause for ({c.state}, {c.read})")
            table[c.state, c.read] = c
        object.__setattr__(self, "table", table)

    @property
    def start(self) -> str:
        return self.states[0]


class Tape:
    """Bi-infinite tape; only non-blank cells are stored."""

    def __init__(self, blank: str, cells: Optional[dict] = None, head: int = 0):
        self.blank = blank
        self.cells = {k: v for k, v in (cells or {}).items() if v != blank}
        self.head = head

    @classmethod
    def from_symbols(cls, symbols, blank: str) -> "Tape":
        return cls(blank, dict(enumerate(symbols)))

    def read(self) -> str:
        return self.cells.get(self.head, self.blank)

    def write(self, symbol: str) -> None:
        if symbol == self.blank:
            self.cells.pop(self.head, None)
        else:
            self.cells[self.head] = symbol

    def move(self, direction: str) -> None:
        self.head += _OFFSET[direction]

    def copy(self) -> "Tape":
        return Tape(self.blank, self.cells, self.head)

    def contents(self) -> list[str]:
        """Symbols from the leftmost to the rightmost non-blank cell."""
        if not self.cells:
            return []
        lo, hi = min(self.cells), max(self.cells)
        return [self.cells.get(i, self.blank) for i in range(lo, hi + 1)]

    def __eq__(self, other):
        if not isinstance(other, Tape):
            return NotImplemented
        return (self.blank, self.cells, self.head) == (other.blank, other.cells, other.head)

    def __repr__(self):
        return f"Tape({' '.join(self.contents())!r}, head={self.head})"


@dataclass
class RunOutcome:
    status: Literal["halted", "stuck", "fuel-exhausted"]
    tape: Tape
    state: str
    steps: int


def parse_machine(text: str) -> Machine:
    header: dict[str, list[str]] = {}
    clauses = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(header) < 3:
            key = tokens[0]
            expected = ("states:", "symbols:", "blank:")[len(header)]
            if key != expected:
                raise MachineSyntaxError(f"expected header {expected!r}, got {key!r}", lineno)
            if key == "blank:" and len(tokens) != 2:
                raise MachineSyntaxError("blank: takes exactly one symbol", lineno)
            if len(tokens) < 2:
                raise MachineSyntaxError(f"{key} needs at least one name", lineno)
            if len(set(tokens[1:])) != len(tokens) - 1:
                raise MachineSyntaxError(f"repeated name in {key}", lineno)
            header[key] = tokens[1:]
            if key == "blank:" and tokens[1] not in header["symbols:"]:
                raise MachineSyntaxError(f"blank {tokens[1]!r} is not a declared symbol", lineno)
            continue
        if len(tokens) != 5:
            raise MachineSyntaxError(f"clause needs 5 tokens, got {len(tokens)}", lineno)
        state, read, nxt, write, move = tokens
        for name in (state, nxt):
            if name not in header["states:"]:
                raise MachineSyntaxError(f"unknown state {name!r}", lineno)
        for name in (read, write):
            if name not in header["symbols:"]:
                raise MachineSyntaxError(f"unknown symbol {name!r}", lineno)
        if move not in MOVES:
            raise MachineSyntaxError(f"unknown move {move!r}", lineno)
        if (state, read) in seen:
            raise MachineSyntaxError(f"duplicate clause for ({state}, {read})", lineno)
        seen.add((state, read))
        clauses.append(Clause(state, read, nxt, write, move))
    if len(header) < 3:
        raise MachineSyntaxError("missing header", len(text.splitlines()) + 1)
    return Machine(
        tuple(header["states:"]), tuple(header["symbols:"]), header["blank:"][0], tuple(clauses)
    )


def format_machine(m: Machine) -> str:
    lines = [
        "states: " + " ".join(m.states),
        "symbols: " + " ".join(m.symbols),
        "blank: " + m.blank,
    ]
    lines += [f"{c.state} {c.read} {c.next} {c.write} {c.move}" for c in m.clauses]
    return "\n".join(lines) + "\n"


def step(m: Machine, tape: Tape, state: str) -> Optional[tuple[Tape, str, str]]:
    """One transition on a copy of ``tape``.

    Returns ``(tape, next_state, move)``, or ``None`` when no clause matches.
    A ``halt`` move still writes; the caller stops afterwards.
    """
    if state not in m.states:
        raise ValueError(f"undeclared state {state!r}")
    clause = m.table.get((state, tape.read()))
    if clause is None:
        return None
    out = tape.copy()
    out.write(clause.write)
    out.move(clause.move)
    return out, clause.next, clause.move


def run(m: Machine, symbols, fuel: int = DEFAULT_FUEL) -> RunOutcome:
    symbols = list(symbols)
    for s in symbols:
        if s not in m.symbols:
            raise ValueError(f"input symbol {s!r} is not declared")
    tape = Tape.from_symbols(symbols, m.blank)
    state = m.start
    steps = 0
    table = m.table
    while True:
        if steps >= fuel:
            return RunOutcome("fuel-exhausted", tape, state, steps)
        clause = table.get((state, tape.read()))
        if clause is None:
            return RunOutcome("stuck", tape, state, steps)
        tape.write(clause.write)
        tape.move(clause.move)
        state = clause.next
        steps += 1
        if clause.move == "halt":
            return RunOutcome("halted", tape, state, steps)
