"""Closure constructions, synchronous transducers and growth bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .engine import Accept, simulate_deterministic
from .errors import (AlphabetClash, AlphabetMismatch, AutomatonSyntaxError,
                     HasUniversalStates, NotDeterministic, SemanticError)
from .model import (BEGIN, END, RESERVED, S, Automaton, AutomatonBuilder, InputPair,
                    Transition, validate_automaton)


def _same_alphabet(a: Automaton, b: Automaton):
    if set(a.alphabet) != set(b.alphabet):
        raise AlphabetMismatch(f"alphabets differ: {a.alphabet} vs {b.alphabet}")


def _renamed(a: Automaton, prefix: str):
    rn = {q: prefix + q for q in a.states}
    trans = [Transition(rn[t.src], t.read1, t.read2, rn[t.dst], t.move1, t.move2)
             for t in a.transitions]
    return rn, trans


def _symbols(a: Automaton):
    return (BEGIN, *a.alphabet, END)


def union(a: Automaton, b: Automaton) -> Automaton:
    """Disjoint union; the choice of initial configuration is existential."""
    _same_alphabet(a, b)
    ra, ta = _renamed(a, "A.")
    rb, tb = _renamed(b, "B.")
    return Automaton(
        states=[*ra.values(), *rb.values()],
        alphabet=a.alphabet,
        transitions=ta + tb,
        initial={ra[q] for q in a.initial} | {rb[q] for q in b.initial},
        final={ra[q] for q in a.final} | {rb[q] for q in b.final},
        universal={ra[q] for q in a.universal} | {rb[q] for q in b.universal},
    )


def intersection_universal(a: Automaton, b: Automaton) -> Automaton:
    """Fresh universal root branching to one existential hub per factor.

    The hubs keep each factor's choice among its own initial states
    existential; a factor without initial states gives a dead hub.
    """
    _same_alphabet(a, b)
    ra, ta = _renamed(a, "A.")
    rb, tb = _renamed(b, "B.")
    root, hub_a, hub_b = "AND", "ANY.A", "ANY.B"
    extra = [Transition(root, BEGIN, BEGIN, hub_a, S, S),
             Transition(root, BEGIN, BEGIN, hub_b, S, S)]
    extra += [Transition(hub_a, BEGIN, BEGIN, ra[q], S, S) for q in a.states if q in a.initial]
    extra += [Transition(hub_b, BEGIN, BEGIN, rb[q], S, S) for q in b.states if q in b.initial]
    return Automaton(
        states=[root, hub_a, hub_b, *ra.values(), *rb.values()],
        alphabet=a.alphabet,
        transitions=extra + ta + tb,
        initial={root},
        final={ra[q] for q in a.final} | {rb[q] for q in b.final},
        universal={root} | {ra[q] for q in a.universal} | {rb[q] for q in b.universal},
    )


def intersection_sequential(a: Automaton, b: Automaton) -> Automaton:
    """Run ``a``; on its first final state rewind both heads and run ``b``.

    Tape 1 is rewound first, then tape 2.  Deterministic inputs with a single
    initial state in ``b`` give a deterministic result.
    """
    _same_alphabet(a, b)
    if a.universal or b.universal:
        raise HasUniversalStates("sequential intersection needs automata without universal states")
    ra, _ = _renamed(a, "A.")
    rb, tb = _renamed(b, "B.")
    bld = AutomatonBuilder(a.alphabet)
    for q in [*ra.values()]:
        bld.state(q)
    rew1, rew2 = "REWIND.1", "REWIND.2"
    for t in a.transitions:
        if t.src in a.final:
            continue
        bld.add(ra[t.src], t.read1, t.read2, ra[t.dst], t.move1, t.move2)
    syms = _symbols(a)
    for f in a.states:
        if f in a.final:
            for x in syms:
                for y in syms:
                    bld.add(ra[f], x, y, rew1, "S", "S")
    for x in syms:
        for y in syms:
            if x != BEGIN:
                bld.add(rew1, x, y, rew1, "L", "S")
            else:
                bld.add(rew1, x, y, rew2, "S", "S")
    for y in syms:
        if y != BEGIN:
            bld.add(rew2, BEGIN, y, rew2, "S", "L")
    for q in b.states:
        if q in b.initial:
            bld.add(rew2, BEGIN, BEGIN, rb[q], "S", "S")
    for q in rb.values():
        bld.state(q)
    for t in tb:
        bld.add(t.src, t.read1, t.read2, t.dst, t.move1, t.move2)
    return bld.build(initial=[ra[q] for q in a.states if q in a.initial],
                     final=[rb[q] for q in b.states if q in b.final])


def complement_decide_deterministic(a: Automaton, inp: InputPair) -> bool:
    """Membership in the complement, by detecting looping runs."""
    if not validate_automaton(a).deterministic:
        raise NotDeterministic("automaton has conflicting transitions")
    if len(a.initial) > 1:
        raise NotDeterministic("more than one initial state")
    if not a.initial:
        return True
    return not isinstance(simulate_deterministic(a, inp), Accept)


def kapoutsis_bound(n: int, k: int) -> int:
    """C(2nk, nk+1): length bound for outputs of an input of length n."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    return math.comb(2 * n * k, n * k + 1)


# -- synchronous transducers -------------------------------------------------

@dataclass(frozen=True)
class SyncTransducer:
    """Deterministic one-tape automaton over letter pairs."""

    alphabet: tuple
    states: tuple
    initial: str
    final: frozenset
    delta: dict  # (state, x, y) -> state

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "final", frozenset(self.final))
        declared = set(self.states)
        if self.initial not in declared or not self.final <= declared:
            raise SemanticError("initial/final states must be declared")
        letters = set(self.alphabet)
        for (p, x, y), q in self.delta.items():
            if p not in declared or q not in declared:
                raise SemanticError(f"undeclared state in {p} {x} {y} -> {q}")
            if x not in letters or y not in letters:
                raise SemanticError(f"undeclared letter in {p} {x} {y} -> {q}")

    def run(self, u, v):
        """Final state after reading the pair, or None when stuck."""
        if len(u) != len(v):
            return None
        s = self.initial
        for x, y in zip(u, v):
            s = self.delta.get((s, x, y))
            if s is None:
                return None
        return s

    def accepts(self, u, v) -> bool:
        s = self.run(u, v)
        return s is not None and s in self.final


def parse_transducer(text: str) -> SyncTransducer:
    fields: dict = {}
    delta: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        for n, tok in enumerate(tokens):
            if tok.startswith(";"):
                tokens = tokens[:n]
                break
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]
        if keyword == "strans":
            if len(args) != 5 or args[3] != "->":
                raise AutomatonSyntaxError("expected 'strans SRC X Y -> DST'", lineno)
            p, x, y, _, q = args
            if (p, x, y) in delta:
                raise SemanticError(f"second transition for ({p}, {x}, {y})", lineno)
            delta[(p, x, y)] = q
        elif keyword in ("alphabet", "states", "initial", "final"):
            if keyword in fields:
                raise AutomatonSyntaxError(f"duplicate '{keyword}' line", lineno)
            fields[keyword] = args
        else:
            raise AutomatonSyntaxError(f"unknown keyword {keyword!r}", lineno)
    for required in ("alphabet", "states", "initial"):
        if required not in fields:
            raise AutomatonSyntaxError(f"missing '{required}' line")
    if len(fields["initial"]) != 1:
        raise SemanticError("a synchronous transducer has exactly one initial state")
    for letter in fields["alphabet"]:
        if letter in RESERVED:
            raise SemanticError(f"reserved token {letter!r} used as letter")
    return SyncTransducer(fields["alphabet"], fields["states"], fields["initial"][0],
                          fields.get("final", ()), delta)


def serialize_transducer(t: SyncTransducer) -> str:
    lines = ["alphabet " + " ".join(t.alphabet), "states " + " ".join(t.states),
             "initial " + t.initial]
    fin = " ".join(q for q in t.states if q in t.final)
    lines.append("final " + fin if fin else "final")
    for (p, x, y), q in t.delta.items():
        lines.append(f"strans {p} {x} {y} -> {q}")
    return "\n".join(lines) + "\n"


# -- lifting a synchronous relation to a two-way machine ---------------------

SEP = "#"


def sync_loop(bld: AutomatonBuilder, t: SyncTransducer, counter, prefix: str) -> dict:
    """Add the fetch/feed loop that runs ``t`` over two adjacent blocks.

    Entry ``M[s]`` expects the second head on the separator before the first
    block and the first head at position ``k`` (the next letter index); the
    loop fetches the ``k``-th letters of both blocks, feeds them to ``t`` and
    comes back to ``M[s']`` with the first head at ``k + 1``.  When the first
    head reads END every position was processed; the caller wires the exit
    from ``M[s]`` on ``(END, '#')``.  Returns ``{s: name of M[s]}``.
    """
    block = t.alphabet

    def st(kind, *parts):
        return f"{prefix}{kind}[{','.join(parts)}]"

    entry = {s: bld.state(st("M", s)) for s in t.states}
    for s in t.states:
        m, f1 = entry[s], st("F1", s)
        for x in counter:
            bld.add(m, x, SEP, f1, "L", "R")
            for z in block:
                bld.add(f1, x, z, f1, "L", "R")
        for y in block:
            g1, h1, f2 = st("G1", s, y), st("H1", s, y), st("F2", s, y)
            bld.add(f1, BEGIN, y, g1, "R", "L")
            for x in counter:
                for z in block:
                    bld.add(g1, x, z, g1, "R", "L")
                    bld.add(h1, x, z, h1, "S", "R")
                    bld.add(f2, x, z, f2, "L", "R")
                bld.add(g1, x, SEP, h1, "S", "R")
                bld.add(h1, x, SEP, f2, "L", "R")
            for z in block:
                nxt = t.delta.get((s, y, z))
                if nxt is not None:
                    bld.add(f2, BEGIN, z, st("G2", nxt), "R", "L")
    for s in t.states:
        g2, h2 = st("G2", s), st("H2", s)
        for x in counter:
            for z in block:
                bld.add(g2, x, z, g2, "R", "L")
                bld.add(h2, x, z, h2, "S", "L")
            bld.add(g2, x, SEP, h2, "S", "L")
            bld.add(h2, x, SEP, entry[s], "R", "S")
    return entry


def rewind(bld: AutomatonBuilder, name: str, symbols1, symbols2, then: str, move1="S", move2="S"):
    """``name`` drives tape 2 then tape 1 back to BEGIN, then enters ``then``."""
    for x in symbols1:
        for y in symbols2:
            if y != BEGIN:
                bld.add(name, x, y, name, "S", "L")
            elif x != BEGIN:
                bld.add(name, x, y, name, "L", "S")
            else:
                bld.add(name, x, y, then, move1, move2)


def lift_synchronous(t: SyncTransducer, alphabet=None) -> Automaton:
    """Deterministic machine for ``{(w, #u#v#) : (u, v) in t, |w| = |u| = |v|}``.

    The first tape only serves as a position counter, so ``w`` may use any
    letter; by default the alphabet is ``t``'s letters plus ``#`` and ``a``.
    """
    if SEP in t.alphabet:
        raise AlphabetClash("'#' cannot be a letter of the transducer")
    if alphabet is None:
        alphabet = [*t.alphabet, SEP] + ([] if "a" in t.alphabet else ["a"])
    alphabet = tuple(alphabet)
    if SEP not in alphabet or not set(t.alphabet) <= set(alphabet):
        raise AlphabetClash("alphabet must contain '#' and every transducer letter")
    counter = alphabet
    block = t.alphabet
    bld = AutomatonBuilder(alphabet)
    start = bld.state("start")
    bld.add(start, BEGIN, BEGIN, "shape.open", "R", "R")
    for x in (*counter, END):
        bld.add("shape.open", x, SEP, "shape.u", "S", "R")
    for x in counter:
        for z in block:
            bld.add("shape.u", x, z, "shape.u", "R", "R")
            bld.add("shape.v", x, z, "shape.v", "R", "R")
        bld.add("shape.back", x, SEP, "shape.back", "L", "S")
    bld.add("shape.u", END, SEP, "shape.back", "L", "S")
    bld.add("shape.back", BEGIN, SEP, "shape.v", "R", "R")
    bld.add("shape.v", END, SEP, "shape.close", "S", "R")
    bld.add("shape.close", END, END, "rewind", "S", "L")
    rewind(bld, "rewind", (BEGIN, *counter, END), (BEGIN, *block, SEP, END),
           "loop.M[" + t.initial + "]", "R", "R")
    entry = sync_loop(bld, t, counter, "loop.")
    for s in t.states:
        if s in t.final:
            bld.add(entry[s], END, SEP, "accept", "S", "S")
    return bld.build(initial=[start], final=["accept"])
