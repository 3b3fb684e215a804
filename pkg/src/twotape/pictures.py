"""Pictures and 4-way automata.

A pair of unary words ``(a^m, a^n)`` is the same thing as an ``m x n``
picture of ``a``'s; a 4-way automaton on the picture becomes a two-tape
automaton by letting the first head track the row and the second the column.
The picture is surrounded by a frame of ``#`` (rows ``0`` and ``m + 1``,
columns ``0`` and ``n + 1``) and the head starts on the corner ``(0, 0)``,
just like the two heads start on ``(BEGIN, BEGIN)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (AlphabetMismatch, AutomatonSyntaxError, EmptyWord, NotUnary,
                     NotUnaryAlphabet, SemanticError)
from .model import BEGIN, END, Automaton, AutomatonBuilder, Move, move_allowed

BORDER = "#"


@dataclass(frozen=True)
class Picture:
    rows: int
    cols: int
    cells: tuple  # rows of letters

    def __post_init__(self):
        cells = tuple(tuple(r) for r in self.cells)
        object.__setattr__(self, "cells", cells)
        if len(cells) != self.rows or any(len(r) != self.cols for r in cells):
            raise ValueError(f"cells do not form a {self.rows}x{self.cols} matrix")

    @property
    def dims(self):
        return (self.rows, self.cols)

    def at(self, r: int, c: int):
        """Letter at frame position (r, c); ``#`` on the frame."""
        if 1 <= r <= self.rows and 1 <= c <= self.cols:
            return self.cells[r - 1][c - 1]
        return BORDER

    def in_frame(self, r: int, c: int) -> bool:
        return 0 <= r <= self.rows + 1 and 0 <= c <= self.cols + 1

    def letters(self) -> set:
        return {x for row in self.cells for x in row}


def product_of_words(u, v) -> Picture:
    """The picture ``u (x) v`` with cell (i, j) = (u_i, v_j)."""
    u, v = tuple(u), tuple(v)
    if not u or not v:
        raise EmptyWord("both words must be nonempty")
    return Picture(len(u), len(v), tuple(tuple((x, y) for y in v) for x in u))


def unary_pair_to_picture(p: int, q: int, letter: str = "a") -> Picture:
    if p < 1 or q < 1:
        raise EmptyWord("both words must be nonempty")
    return Picture(p, q, ((letter,) * q,) * p)


def picture_to_unary_pair(pic: Picture, letter: str = "a"):
    if pic.letters() - {letter}:
        raise NotUnary(f"picture uses letters other than {letter!r}")
    return (pic.rows, pic.cols)


def parse_picture(text: str) -> Picture:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise AutomatonSyntaxError("first line must be 'rows cols'", 1)
    try:
        m, n = int(lines[0][0]), int(lines[0][1])
    except ValueError:
        raise AutomatonSyntaxError("first line must be 'rows cols'", 1) from None
    rows = lines[1:]
    if len(rows) != m or any(len(r) != n for r in rows):
        raise AutomatonSyntaxError(f"expected {m} rows of {n} letters")
    return Picture(m, n, rows)


def serialize_picture(pic: Picture) -> str:
    out = [f"{pic.rows} {pic.cols}"]
    out += [" ".join(_letter_text(x) for x in row) for row in pic.cells]
    return "\n".join(out) + "\n"


def _letter_text(x):
    return ",".join(x) if isinstance(x, tuple) else x


# -- 4-way automata --------------------------------------------------------------

class Direction(enum.Enum):
    U = "U"
    D = "D"
    L = "L"
    R = "R"
    S = "S"

    @property
    def delta(self):
        return _DELTA[self]


_DELTA = {Direction.U: (-1, 0), Direction.D: (1, 0), Direction.L: (0, -1),
          Direction.R: (0, 1), Direction.S: (0, 0)}
# row moves drive the first head, column moves the second
_AS_MOVES = {Direction.U: ("L", "S"), Direction.D: ("R", "S"), Direction.L: ("S", "L"),
             Direction.R: ("S", "R"), Direction.S: ("S", "S")}


@dataclass(frozen=True)
class FourWayTransition:
    src: str
    symbol: str
    dst: str
    direction: Direction

    def to_line(self):
        return f"trans {self.src} {self.symbol} -> {self.dst} {self.direction.value}"


@dataclass(frozen=True)
class FourWayAutomaton:
    states: tuple
    alphabet: tuple
    transitions: tuple
    initial: frozenset
    final: frozenset
    universal: frozenset = frozenset()

    def __post_init__(self):
        for name in ("states", "alphabet", "transitions"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        for name in ("initial", "final", "universal"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if BORDER in self.alphabet:
            raise SemanticError("'#' is the frame symbol and cannot be a letter")
        known = set(self.states)
        for name in ("initial", "final", "universal"):
            if getattr(self, name) - known:
                raise SemanticError(f"{name} set mentions undeclared states")
        for t in self.transitions:
            if t.src not in known or t.dst not in known:
                raise SemanticError(f"transition uses undeclared state: {t.to_line()}")
            if t.symbol != BORDER and t.symbol not in self.alphabet:
                raise SemanticError(f"transition reads unknown symbol: {t.to_line()}")


def simulate_fourway(f: FourWayAutomaton, pic: Picture) -> bool:
    """Acceptance by a fixpoint over (state, row, col), frame included.

    Moves that would leave the frame are simply unavailable.
    """
    if pic.letters() - set(f.alphabet):
        raise AlphabetMismatch("picture uses letters outside the automaton's alphabet")
    by_key: dict = {}
    for t in f.transitions:
        by_key.setdefault((t.src, t.symbol), []).append(t)

    def succs(q, r, c):
        out = []
        for t in by_key.get((q, pic.at(r, c)), ()):
            dr, dc = t.direction.delta
            if pic.in_frame(r + dr, c + dc):
                out.append((t.dst, r + dr, c + dc))
        return out

    configs = [(q, r, c) for q in f.states
               for r in range(pic.rows + 2) for c in range(pic.cols + 2)]
    win: set = set()
    changed = True
    while changed:
        changed = False
        for cfg in configs:
            if cfg in win:
                continue
            q = cfg[0]
            if q in f.final:
                ok = True
            elif q in f.universal:
                ok = all(d in win for d in succs(*cfg))
            else:
                ok = any(d in win for d in succs(*cfg))
            if ok:
                win.add(cfg)
                changed = True
    return any((q, 0, 0) in win for q in f.initial)


_MARKER_PAIRS = tuple((x, y) for x in (BEGIN, "a", END) for y in (BEGIN, "a", END)
                      if (x, y) != ("a", "a"))


def fourway_to_twotape(f: FourWayAutomaton) -> Automaton:
    if f.alphabet != ("a",):
        raise NotUnaryAlphabet(f"conversion needs the alphabet ('a',), got {f.alphabet}")
    b = AutomatonBuilder(("a",))
    for q in f.states:
        b.state(q)
    for t in f.transitions:
        m1, m2 = _AS_MOVES[t.direction]
        reads = _MARKER_PAIRS if t.symbol == BORDER else (("a", "a"),)
        for x, y in reads:
            if move_allowed(x, Move(m1)) and move_allowed(y, Move(m2)):
                b.add(t.src, x, y, t.dst, m1, m2)
    return b.build(initial=[q for q in f.states if q in f.initial],
                   final=[q for q in f.states if q in f.final],
                   universal=[q for q in f.states if q in f.universal])


# -- text format ----------------------------------------------------------------------

def parse_fourway(text: str) -> FourWayAutomaton:
    """Same keywords as automaton files, with ``trans q x -> p U|D|L|R|S``."""
    sections: dict = {}
    trans = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split(";", 1)[0].split()
        if not toks:
            continue
        key, rest = toks[0], toks[1:]
        if key == "trans":
            if len(rest) != 5 or rest[2] != "->":
                raise AutomatonSyntaxError("expected 'trans q x -> p DIR'", lineno)
            try:
                d = Direction(rest[4])
            except ValueError:
                raise AutomatonSyntaxError(f"bad direction {rest[4]!r}", lineno) from None
            trans.append(FourWayTransition(rest[0], rest[1], rest[3], d))
        elif key in ("alphabet", "states", "initial", "final", "universal"):
            if key in sections:
                raise AutomatonSyntaxError(f"duplicate '{key}' line", lineno)
            sections[key] = rest
        else:
            raise AutomatonSyntaxError(f"unknown keyword {key!r}", lineno)
    for key in ("alphabet", "states"):
        if key not in sections:
            raise AutomatonSyntaxError(f"missing '{key}' line")
    return FourWayAutomaton(sections["states"], sections["alphabet"], trans,
                            sections.get("initial", ()), sections.get("final", ()),
                            sections.get("universal", ()))


def serialize_fourway(f: FourWayAutomaton) -> str:
    def ordered(s):
        return " ".join(q for q in f.states if q in s)

    lines = ["alphabet " + " ".join(f.alphabet), "states " + " ".join(f.states),
             ("initial " + ordered(f.initial)).rstrip(), ("final " + ordered(f.final)).rstrip()]
    if f.universal:
        lines.append("universal " + ordered(f.universal))
    lines += [t.to_line() for t in f.transitions]
    return "\n".join(lines) + "\n"
