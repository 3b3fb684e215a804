"""Domain types for two-way two-tape automata and the ``.2ta`` text format.

A file looks like::

    ; comment
    alphabet a b
    states q0 q1 qf
    initial q0
    final qf
    universal q1
    trans q0 BEGIN BEGIN -> q0 S R

``BEGIN`` and ``END`` stand for the left and right end markers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import AutomatonSyntaxError, SemanticError

BEGIN = "BEGIN"
END = "END"
MARKERS = (BEGIN, END)
RESERVED = frozenset({BEGIN, END, "->", ";"})


class Move(enum.Enum):
    L = "L"
    S = "S"
    R = "R"

    @property
    def chi(self) -> int:
        return _CHI[self]

    def __repr__(self):
        return f"Move.{self.value}"


_CHI = {Move.L: -1, Move.S: 0, Move.R: 1}
L, S, R = Move.L, Move.S, Move.R


def move_allowed(symbol: str, move: Move) -> bool:
    """Heads never leave the marked word."""
    if symbol == BEGIN:
        return move is not Move.L
    if symbol == END:
        return move is not Move.R
    return True


@dataclass(frozen=True)
class Transition:
    src: str
    read1: str
    read2: str
    dst: str
    move1: Move
    move2: Move

    @property
    def key(self):
        return (self.src, self.read1, self.read2)

    def respects_boundaries(self) -> bool:
        return move_allowed(self.read1, self.move1) and move_allowed(self.read2, self.move2)

    def to_line(self) -> str:
        return (f"trans {self.src} {self.read1} {self.read2} -> "
                f"{self.dst} {self.move1.value} {self.move2.value}")

    def __str__(self):
        return f"{self.src} ({self.read1},{self.read2}) -> {self.dst} ({self.move1.value},{self.move2.value})"


class Configuration(NamedTuple):
    state: str
    i: int
    j: int

    def label(self) -> str:
        return f"{self.state}@{self.i},{self.j}"


@dataclass(frozen=True)
class Automaton:
    """An alternating two-way two-tape automaton.

    States not listed in ``universal`` are existential; with ``universal``
    empty this is the plain non-deterministic model.
    """

    states: tuple
    alphabet: tuple
    transitions: tuple
    initial: frozenset
    final: frozenset
    universal: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        object.__setattr__(self, "universal", frozenset(self.universal))
        problems = list(_invariant_problems(self))
        if problems:
            raise SemanticError(problems[0])

    @cached_property
    def state_index(self) -> dict:
        return {q: n for n, q in enumerate(self.states)}

    @cached_property
    def letter_index(self) -> dict:
        return {a: n for n, a in enumerate(self.alphabet)}

    @cached_property
    def index(self) -> dict:
        """(state, symbol1, symbol2) -> [(transition number, transition)]."""
        idx: dict = {}
        for n, t in enumerate(self.transitions):
            idx.setdefault(t.key, []).append((n, t))
        return idx

    def is_universal(self, state: str) -> bool:
        return state in self.universal

    def config_key(self, c: Configuration):
        return (self.state_index[c.state], c.i, c.j)


def _invariant_problems(a: Automaton):
    states = set(a.states)
    if len(states) != len(a.states):
        yield "duplicate state id"
    if len(set(a.alphabet)) != len(a.alphabet):
        yield "duplicate letter"
    for letter in a.alphabet:
        if letter in RESERVED or not letter or any(ch.isspace() for ch in letter):
            yield f"reserved or invalid token used as letter: {letter!r}"
    for name, subset in (("initial", a.initial), ("final", a.final), ("universal", a.universal)):
        extra = subset - states
        if extra:
            yield f"{name} mentions undeclared state {sorted(extra)[0]}"
    symbols = set(a.alphabet) | set(MARKERS)
    seen = set()
    for t in a.transitions:
        if t.src not in states or t.dst not in states:
            yield f"undeclared state in transition {t}"
        if t.read1 not in symbols or t.read2 not in symbols:
            yield f"undeclared letter in transition {t}"
        if not t.respects_boundaries():
            yield f"transition moves off the tape: {t}"
        if t in seen:
            yield f"duplicate transition {t}"
        seen.add(t)


@dataclass(frozen=True)
class InputPair:
    u: tuple
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))

    @classmethod
    def of(cls, u: str | Sequence[str], v: str | Sequence[str]) -> "InputPair":
        """Build from strings (one letter per character) or token sequences."""
        return cls(tuple(u), tuple(v))

    @cached_property
    def tape1(self) -> tuple:
        return (BEGIN, *self.u, END)

    @cached_property
    def tape2(self) -> tuple:
        return (BEGIN, *self.v, END)

    def in_bounds(self, c: Configuration) -> bool:
        return 0 <= c.i <= len(self.u) + 1 and 0 <= c.j <= len(self.v) + 1

    def check_alphabet(self, alphabet: Iterable[str]):
        letters = set(alphabet)
        for tape, word in (("u", self.u), ("v", self.v)):
            for x in word:
                if x not in letters:
                    raise SemanticError(f"letter {x!r} of {tape} is not in the alphabet")

    def __str__(self):
        return f"({''.join(self.u) or 'ε'}, {''.join(self.v) or 'ε'})"


def split_word(text: str, tokens: bool = False) -> tuple:
    """Per-character by default, whitespace-separated tokens otherwise."""
    return tuple(text.split()) if tokens else tuple(text)


# -- text format -------------------------------------------------------------

_SECTIONS = ("alphabet", "states", "initial", "final", "universal")


def _strip_comment(tokens):
    for n, tok in enumerate(tokens):
        if tok.startswith(";"):
            return tokens[:n]
    return tokens


def parse_automaton(text: str) -> Automaton:
    sections: dict = {}
    section_lines: dict = {}
    trans = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _strip_comment(raw.split())
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]
        if keyword == "trans":
            if len(args) != 7 or args[3] != "->":
                raise AutomatonSyntaxError(
                    "expected 'trans SRC SYM1 SYM2 -> DST MOVE1 MOVE2'", lineno)
            src, r1, r2, _, dst, m1, m2 = args
            try:
                moves = Move(m1), Move(m2)
            except ValueError:
                raise AutomatonSyntaxError(f"moves must be L, S or R, got {m1} {m2}", lineno) from None
            trans.append((lineno, Transition(src, r1, r2, dst, *moves)))
        elif keyword in _SECTIONS:
            if keyword in sections:
                raise AutomatonSyntaxError(f"duplicate '{keyword}' line", lineno)
            sections[keyword] = args
            section_lines[keyword] = lineno
        else:
            raise AutomatonSyntaxError(f"unknown keyword {keyword!r}", lineno)

    for required in ("alphabet", "states"):
        if required not in sections:
            raise AutomatonSyntaxError(f"missing '{required}' line")

    alphabet = sections["alphabet"]
    for letter in alphabet:
        if letter in RESERVED:
            raise SemanticError(f"reserved token {letter!r} used as letter", section_lines["alphabet"])
    if len(set(alphabet)) != len(alphabet):
        raise SemanticError("duplicate letter", section_lines["alphabet"])
    states = sections["states"]
    if len(set(states)) != len(states):
        raise SemanticError("duplicate state id", section_lines["states"])
    declared = set(states)
    for name in ("initial", "final", "universal"):
        for q in sections.get(name, ()):
            if q not in declared:
                raise SemanticError(f"undeclared state {q!r} in '{name}'", section_lines[name])
        if len(set(sections.get(name, ()))) != len(sections.get(name, ())):
            raise SemanticError(f"state listed twice in '{name}'", section_lines[name])

    symbols = set(alphabet) | set(MARKERS)
    seen = set()
    for lineno, t in trans:
        for q in (t.src, t.dst):
            if q not in declared:
                raise SemanticError(f"undeclared state {q!r}", lineno)
        for x in (t.read1, t.read2):
            if x not in symbols:
                raise SemanticError(f"undeclared letter {x!r}", lineno)
        if not t.respects_boundaries():
            raise SemanticError(f"transition moves a head off the tape: {t}", lineno)
        if t in seen:
            raise SemanticError(f"duplicate transition: {t}", lineno)
        seen.add(t)

    return Automaton(
        states=states,
        alphabet=alphabet,
        transitions=[t for _, t in trans],
        initial=sections.get("initial", ()),
        final=sections.get("final", ()),
        universal=sections.get("universal", ()),
    )


def serialize_automaton(a: Automaton) -> str:
    def ordered(subset):
        return " ".join(q for q in a.states if q in subset)

    lines = [
        _join("alphabet", " ".join(a.alphabet)),
        _join("states", " ".join(a.states)),
        _join("initial", ordered(a.initial)),
        _join("final", ordered(a.final)),
    ]
    if a.universal:
        lines.append(_join("universal", ordered(a.universal)))
    lines.extend(t.to_line() for t in a.transitions)
    return "\n".join(lines) + "\n"


def _join(keyword, rest):
    return f"{keyword} {rest}" if rest else keyword


# -- validation --------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    deterministic: bool
    one_way: bool
    violations: list = field(default_factory=list)


def validate_automaton(a: Automaton) -> ValidationReport:
    """Determinism is checked over every symbol pair, markers included."""
    violations = []
    for entries in a.index.values():
        for x in range(len(entries)):
            for y in range(x + 1, len(entries)):
                violations.append((entries[x][1], entries[y][1]))
    one_way = all(Move.L not in (t.move1, t.move2) for t in a.transitions)
    return ValidationReport(deterministic=not violations, one_way=one_way, violations=violations)


class AutomatonBuilder:
    """Incremental construction used by the zoo and the closure constructions.

    States are registered in first-mention order; exact duplicate transitions
    are ignored, boundary violations raise.
    """

    def __init__(self, alphabet: Sequence[str]):
        self.alphabet = tuple(alphabet)
        self.states: dict = {}
        self.transitions: list = []
        self._seen: set = set()

    def state(self, q: str) -> str:
        self.states.setdefault(q, None)
        return q

    def add(self, src, read1, read2, dst, move1, move2):
        t = Transition(self.state(src), read1, read2, self.state(dst), Move(move1), Move(move2))
        if not t.respects_boundaries():
            raise SemanticError(f"transition moves a head off the tape: {t}")
        if t not in self._seen:
            self._seen.add(t)
            self.transitions.append(t)
        return t

    def build(self, initial=(), final=(), universal=()) -> Automaton:
        for q in (*initial, *final, *universal):
            self.state(q)
        return Automaton(tuple(self.states), self.alphabet, tuple(self.transitions),
                         frozenset(initial), frozenset(final), frozenset(universal))
