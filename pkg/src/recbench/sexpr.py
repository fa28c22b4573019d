"""S-expressions: words, pairs, a reader and a printer.

Every value the Lisp, the TM compiler and the problem calculus exchange is
one of these trees.  Words are symbols, non-negative integers, ``T`` and
``NIL``; a pair is an immutable ``(car . cdr)`` cell.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union


class _Constant:
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return self.name


NIL = _Constant("NIL")
T = _Constant("T")


@dataclass(frozen=True)
class Symbol:
    text: str

    def __post_init__(self):
        if not self.text or any(c in _DELIMITERS or c.isspace() for c in self.text) or "." in self.text:
            raise ValueError(f"invalid symbol text {self.text!r}")

    def __repr__(self):
        return f"Symbol({self.text!r})"


@dataclass(frozen=True)
class Pair:
    car: object
    cdr: object

    def __repr__(self):
        return f"Pair({self.car!r}, {self.cdr!r})"


Word = Union[Symbol, int, _Constant]
SExpr = Union[Word, Pair]

_DELIMITERS = frozenset("();'")


class ParseError(ValueError):
    """Reader rejection.  ``kind`` names the failure, ``pos`` the offset."""

    def __init__(self, kind: str, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.kind = kind
        self.pos = pos


def is_word(x) -> bool:
    return not isinstance(x, Pair)


def is_number(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def sym(text: str) -> Symbol:
    return Symbol(text)


def cons(x, y) -> Pair:
    return Pair(x, y)


def car(x):
    if not isinstance(x, Pair):
        raise TypeError(f"not a pair: {to_string(x)}")
    return x.car


def cdr(x):
    if not isinstance(x, Pair):
        raise TypeError(f"not a pair: {to_string(x)}")
    return x.cdr


def atom_p(x):
    return NIL if isinstance(x, Pair) else T


def from_list(items: Iterable, tail=NIL):
    out = tail
    for item in reversed(list(items)):
        out = Pair(item, out)
    return out


def to_list(x) -> list:
    """Elements of a proper list; ``TypeError`` on an improper one."""
    out = []
    while isinstance(x, Pair):
        out.append(x.car)
        x = x.cdr
    if x is not NIL:
        raise TypeError("improper list")
    return out


def iter_list(x) -> Iterator:
    while isinstance(x, Pair):
        yield x.car
        x = x.cdr


def is_proper_list(x) -> bool:
    while isinstance(x, Pair):
        x = x.cdr
    return x is NIL


QUOTE = Symbol("quote")


# reader

def _tokens(text: str):
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()'":
            yield c, c, i
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in _DELIMITERS:
                j += 1
            yield "atom", text[i:j], i
            i = j
    yield "eof", "", n


def _atom(token: str, pos: int):
    if token == ".":
        return None
    if "." in token:
        raise ParseError("dot", f"malformed dot in token {token!r}", pos)
    if token.isascii() and token.isdigit():
        return int(token)
    if token == "nil":
        return NIL
    if token == "t":
        return T
    return Symbol(token)


def _forms(text: str):
    """Yield ``(expr, end)`` per top-level expression.

    Uses an explicit stack instead of recursion, so any input halts.
    """
    # frames: [items, tail, state] with state in {"items", "dot", "tail"},
    # or the marker "quote" for a pending 'e
    stack: list = []
    for kind, tok, pos in _tokens(text):
        if kind == "eof":
            if stack and stack[-1] == "quote":
                raise ParseError("unbalanced", "unexpected end of input after quote", pos)
            if stack:
                raise ParseError("unbalanced", "unexpected end of input, missing ')'", pos)
            return
        if stack and stack[-1] != "quote" and stack[-1][2] == "tail" and kind != ")":
            raise ParseError("dot", "more than one expression after '.'", pos)
        if kind == "(":
            stack.append([[], NIL, "items"])
            continue
        if kind == "'":
            stack.append("quote")
            continue
        if kind == ")":
            if not stack:
                raise ParseError("unbalanced", "unexpected ')'", pos)
            top = stack[-1]
            if top == "quote":
                raise ParseError("unbalanced", "quote without an expression", pos)
            if top[2] == "dot":
                raise ParseError("dot", "missing expression after '.'", pos)
            stack.pop()
            value = from_list(top[0], top[1])
        else:
            value = _atom(tok, pos)
            if value is None:
                if not stack or stack[-1] == "quote" or not stack[-1][0]:
                    raise ParseError("dot", "misplaced '.'", pos)
                stack[-1][2] = "dot"
                continue
        while stack and stack[-1] == "quote":
            stack.pop()
            value = Pair(QUOTE, Pair(value, NIL))
        if not stack:
            yield value, pos + len(tok)
        elif stack[-1][2] == "dot":
            stack[-1][1] = value
            stack[-1][2] = "tail"
        else:
            stack[-1][0].append(value)


def read_all(text: str) -> list:
    """Read every expression in ``text``."""
    return [value for value, _ in _forms(text)]


def read(text: str):
    """Read exactly one expression, optionally surrounded by whitespace."""
    forms = _forms(text)
    try:
        value, end = next(forms)
    except StopIteration:
        raise ParseError("empty", "empty input", len(text)) from None
    for kind, _, pos in _tokens(text[end:]):
        if kind != "eof":
            raise ParseError("trailing", "trailing input after expression", end + pos)
    return value


# printer

def to_string(e) -> str:
    """Canonical text: list sugar, `` . `` for improper tails, no quote sugar."""
    if e is NIL:
        return "nil"
    if e is T:
        return "t"
    if isinstance(e, Symbol):
        return e.text
    if is_number(e):
        return str(e)
    if isinstance(e, Pair):
        parts = []
        while isinstance(e, Pair):
            parts.append(to_string(e.car))
            e = e.cdr
        if e is not NIL:
            parts.append(".")
            parts.append(to_string(e))
        return "(" + " ".join(parts) + ")"
    return _foreign(e)


def _foreign(e) -> str:
    describe = getattr(e, "describe", None)
    if describe is not None:
        return describe()
    return f"#<{type(e).__name__}>"
