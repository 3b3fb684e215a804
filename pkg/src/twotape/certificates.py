"""Proofs of rejection.

A proof assigns to every cell ``(i, j)`` of the head-position grid and every
state ``q`` one of three values: bottom (absent: ``(q, i, j)`` never
occurs), top (an existential configuration that may occur) or a transition
(a universal configuration that may occur, together with the move the
universal player makes there).  Four local conditions make the annotation a
certificate that no accepting run exists:

1. every initial configuration is annotated;
2. no final-state configuration is annotated;
3. all successors of an annotated existential configuration are annotated;
4. the successor chosen at an annotated universal configuration is annotated.

Each condition at column ``j`` only looks at columns ``j-1 .. j+1``, which
is what makes two proofs with equal central columns glueable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .engine import GameSolution, initial_configurations, moves, solve, transition_between
from .errors import Accepted, DimensionMismatch, Diverges, FormatError, IncompatibleCenter
from .model import Automaton, Configuration, InputPair

TOP = "top"


@dataclass(frozen=True)
class Strat:
    transition: int


@dataclass
class RejectProof:
    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    @property
    def dims(self):
        return (self.rows, self.cols)

    def get(self, i: int, j: int, q: str):
        """Entry at (i, j, q); ``None`` stands for bottom."""
        return self.entries.get((i, j, q))

    def column(self, j: int) -> dict:
        return {(i, q): e for (i, jj, q), e in self.entries.items() if jj == j}

    def __eq__(self, other):
        return (isinstance(other, RejectProof) and self.dims == other.dims
                and self.entries == other.entries)


def _dims_for(inp: InputPair):
    return (len(inp.u) + 2, len(inp.v) + 2)


def extract_reject_proof(a: Automaton, inp: InputPair, sol: GameSolution | None = None) -> RejectProof:
    """Configurations reachable when the universal player follows ``sol.ustrat``."""
    if sol is None:
        sol = solve(a, inp, reachable_only=True)
    starts = initial_configurations(a)
    if any(c in sol.win for c in starts):
        raise Accepted(f"input {inp} is accepted")
    rows, cols = _dims_for(inp)
    proof = RejectProof(rows, cols)
    seen = set(starts)
    stack = list(reversed(starts))
    while stack:
        c = stack.pop()
        if a.is_universal(c.state):
            d = sol.ustrat[c]
            proof.entries[(c.i, c.j, c.state)] = Strat(transition_between(a, inp, c, d))
            nxt = [d]
        else:
            proof.entries[(c.i, c.j, c.state)] = TOP
            nxt = [d for _, d in moves(a, inp, c)]
        for d in reversed(nxt):
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return proof


@dataclass(frozen=True)
class Violation:
    condition: int  # 0 = malformed entry, 1..4 = the four conditions
    cell: tuple     # (i, j, state)
    detail: str = ""

    def __str__(self):
        i, j, q = self.cell
        return f"condition {self.condition} at ({q}, {i}, {j}): {self.detail}"


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    first_violation: Violation | None = None


def verify_column(a: Automaton, inp: InputPair, p: RejectProof, j: int):
    """First violation among cells of column ``j`` (rows, then states, in order).

    Reads entries of columns ``j-1``, ``j`` and ``j+1`` only.
    """
    for i in range(p.rows):
        for q in a.states:
            entry = p.get(i, j, q)
            if entry is None:
                continue
            cell = (i, j, q)
            c = Configuration(q, i, j)
            if a.is_universal(q):
                if not isinstance(entry, Strat):
                    return Violation(0, cell, "universal state needs a transition")
            elif entry != TOP:
                return Violation(0, cell, "existential state needs top")
            if q in a.final:
                return Violation(2, cell, "final configuration is reachable")
            if isinstance(entry, Strat):
                n = entry.transition
                if not 0 <= n < len(a.transitions):
                    return Violation(0, cell, f"no transition number {n}")
                t = a.transitions[n]
                if (t.src, t.read1, t.read2) != (q, inp.tape1[i], inp.tape2[j]):
                    return Violation(0, cell, f"transition {n} does not apply here")
                d = Configuration(t.dst, i + t.move1.chi, j + t.move2.chi)
                if p.get(d.i, d.j, d.state) is None:
                    return Violation(4, cell, f"strategy successor {d.label()} not allowed")
            else:
                for _, d in moves(a, inp, c):
                    if p.get(d.i, d.j, d.state) is None:
                        return Violation(3, cell, f"successor {d.label()} not allowed")
    return None


def verify_reject_proof(a: Automaton, inp: InputPair, p: RejectProof) -> VerifyResult:
    if p.dims != _dims_for(inp):
        raise DimensionMismatch(f"proof has dims {p.dims}, input needs {_dims_for(inp)}")
    for q in a.states:
        if q in a.initial and p.get(0, 0, q) is None:
            return VerifyResult(False, Violation(1, (0, 0, q), "initial configuration not allowed"))
    for (i, j, q) in p.entries:
        if not (0 <= i < p.rows and 0 <= j < p.cols) or q not in a.state_index:
            return VerifyResult(False, Violation(0, (i, j, q), "entry outside the grid"))
    for j in range(p.cols):
        v = verify_column(a, inp, p, j)
        if v is not None:
            return VerifyResult(False, v)
    return VerifyResult(True)


def glue(p1: RejectProof, inp1: InputPair, p2: RejectProof, inp2: InputPair, c: int):
    """Columns ``<= c`` from ``p1`` and ``> c`` from ``p2``.

    Requires identical first words, second words of equal length agreeing at
    extended positions ``c-1 .. c+1``, and proofs agreeing on those columns.
    """
    if inp1.u != inp2.u:
        raise IncompatibleCenter("first tapes differ")
    if len(inp1.v) != len(inp2.v):
        raise IncompatibleCenter("second tapes have different lengths")
    if p1.dims != _dims_for(inp1) or p2.dims != _dims_for(inp2):
        raise IncompatibleCenter("proof dimensions do not match the inputs")
    if not 1 <= c <= len(inp1.v):
        raise IncompatibleCenter(f"center column {c} must lie in 1..{len(inp1.v)}")
    for j in (c - 1, c, c + 1):
        if inp1.tape2[j] != inp2.tape2[j]:
            raise IncompatibleCenter(f"letters differ at column {j}")
        if p1.column(j) != p2.column(j):
            raise IncompatibleCenter(f"proofs differ at column {j}")
    v = inp1.v[:c] + inp2.v[c:]
    glued = RejectProof(p1.rows, p1.cols)
    for (i, j, q), e in p1.entries.items():
        if j <= c:
            glued.entries[(i, j, q)] = e
    for (i, j, q), e in p2.entries.items():
        if j > c:
            glued.entries[(i, j, q)] = e
    return InputPair(inp1.u, v), glued


# -- counting ----------------------------------------------------------------

def central_part_count(num_states: int, num_transitions: int, n: int) -> int:
    """Number of possible values of three proof columns of ``n + 2`` cells."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return ((num_transitions + 1) ** num_states) ** (3 * (n + 2))


def central_part_bound(a: Automaton, n: int) -> int:
    return central_part_count(len(a.states), len(a.transitions), n)


def threshold(num_states: int, num_transitions: int, cap: int = 10**6) -> int:
    """Least ``n >= 1`` with ``central_part_count(n) < n!``."""
    per_column = num_states * math.log(num_transitions + 1)
    for n in range(1, cap + 1):
        log_bound = 3 * (n + 2) * per_column
        log_fact = math.lgamma(n + 1)
        slack = 1e-9 * max(1.0, log_bound, log_fact) + 1e-9
        if log_bound > log_fact + slack:
            continue
        if log_bound < log_fact - slack:
            return n
        if central_part_count(num_states, num_transitions, n) < math.factorial(n):
            return n
    raise Diverges(f"no n <= {cap} beats the central-part count")


def pigeonhole_threshold(a: Automaton, cap: int = 10**6) -> int:
    return threshold(len(a.states), len(a.transitions), cap)


# -- JSON ----------------------------------------------------------------------

def proof_to_json(a: Automaton, inp: InputPair, p: RejectProof) -> str:
    cells = []
    for (i, j, q), e in sorted(p.entries.items(), key=lambda kv: (kv[0][1], kv[0][0], kv[0][2])):
        cell = {"state": q, "i": i, "j": j}
        if isinstance(e, Strat):
            cell["kind"] = "strat"
            cell["transition_index"] = e.transition
        else:
            cell["kind"] = "top"
        cells.append(cell)
    doc = {"u": list(inp.u), "v": list(inp.v), "cells": cells}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def proof_from_json(text: str):
    """Returns ``(InputPair, RejectProof)``; raises FormatError on bad input."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"certificate is not JSON: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"u", "v", "cells"}:
        raise FormatError("certificate needs exactly the fields u, v, cells")
    for name in ("u", "v"):
        if not isinstance(doc[name], list) or not all(isinstance(x, str) for x in doc[name]):
            raise FormatError(f"field {name} must be a list of letters")
    inp = InputPair(doc["u"], doc["v"])
    rows, cols = _dims_for(inp)
    proof = RejectProof(rows, cols)
    if not isinstance(doc["cells"], list):
        raise FormatError("field cells must be a list")
    for cell in doc["cells"]:
        try:
            q, i, j, kind = cell["state"], cell["i"], cell["j"], cell["kind"]
        except (KeyError, TypeError):
            raise FormatError(f"malformed cell {cell!r}") from None
        if not isinstance(q, str) or type(i) is not int or type(j) is not int:
            raise FormatError(f"malformed cell {cell!r}")
        if kind == "top" and set(cell) == {"state", "i", "j", "kind"}:
            entry = TOP
        elif kind == "strat" and type(cell.get("transition_index")) is int and len(cell) == 5:
            entry = Strat(cell["transition_index"])
        else:
            raise FormatError(f"malformed cell {cell!r}")
        if (i, j, q) in proof.entries:
            raise FormatError(f"cell ({q}, {i}, {j}) listed twice")
        proof.entries[(i, j, q)] = entry
    return inp, proof
