"""Operational semantics: successors, simulation and game-based acceptance.

Acceptance of an alternating automaton on a fixed input is a reachability
game on the (finite) configuration graph.  The existential player moves in
existential configurations, the universal player in universal ones; the
existential player wants to reach a final-state configuration or a universal
configuration without successors.  Final-state configurations are treated as
sinks.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .errors import NotAccepted, NotDeterministic, OutOfBounds
from .model import Automaton, Configuration, InputPair, validate_automaton


def moves(a: Automaton, inp: InputPair, c: Configuration) -> list:
    """[(transition number, successor)] in transition declaration order."""
    if not inp.in_bounds(c):
        raise OutOfBounds(f"configuration {c} outside input {inp}")
    out = []
    for n, t in a.index.get((c.state, inp.tape1[c.i], inp.tape2[c.j]), ()):
        out.append((n, Configuration(t.dst, c.i + t.move1.chi, c.j + t.move2.chi)))
    return out


def successors(a: Automaton, inp: InputPair, c: Configuration) -> list:
    return [d for _, d in moves(a, inp, c)]


def transition_between(a: Automaton, inp: InputPair, c: Configuration, d: Configuration) -> int:
    """Number of the (unique) transition leading from c to d."""
    for n, succ in moves(a, inp, c):
        if succ == d:
            return n
    raise ValueError(f"{d} is not a successor of {c}")


def initial_configurations(a: Automaton) -> list:
    return [Configuration(q, 0, 0) for q in a.states if q in a.initial]


def all_configurations(a: Automaton, inp: InputPair) -> Iterator[Configuration]:
    for q in a.states:
        for i in range(len(inp.u) + 2):
            for j in range(len(inp.v) + 2):
                yield Configuration(q, i, j)


class ConfigGraph:
    """Configuration graph of ``a`` on ``inp``.

    Successors are computed on demand; predecessors are built once, over
    every configuration (``reachable_only=False``) or over those reachable
    from the initial configurations.
    """

    def __init__(self, a: Automaton, inp: InputPair, reachable_only: bool = False):
        self.automaton = a
        self.input = inp
        self.reachable_only = reachable_only
        self._succ: dict = {}
        self._pred: dict | None = None
        self._nodes: list | None = None

    def successors(self, c: Configuration) -> list:
        try:
            return self._succ[c]
        except KeyError:
            s = self._succ[c] = successors(self.automaton, self.input, c)
            return s

    @property
    def nodes(self) -> list:
        if self._nodes is None:
            if self.reachable_only:
                self._nodes = self._reachable()
            else:
                self._nodes = list(all_configurations(self.automaton, self.input))
        return self._nodes

    def _reachable(self) -> list:
        a = self.automaton
        seen = set(initial_configurations(a))
        queue = deque(seen)
        while queue:
            c = queue.popleft()
            if c.state in a.final:
                continue
            for d in self.successors(c):
                if d not in seen:
                    seen.add(d)
                    queue.append(d)
        return sorted(seen, key=a.config_key)

    @property
    def predecessors(self) -> dict:
        if self._pred is None:
            pred = {c: [] for c in self.nodes}
            for c in self.nodes:
                if c.state in self.automaton.final:
                    continue
                for d in self.successors(c):
                    pred[d].append(c)
            self._pred = pred
        return self._pred


@dataclass(frozen=True)
class GameSolution:
    """Winning region of the existential player plus positional strategies.

    ``rank`` is the attractor round in which a configuration joined ``win``.
    ``ustrat`` picks, for a universal configuration outside ``win``, a
    successor that also stays outside ``win``.
    """

    win: frozenset
    estrat: dict
    ustrat: dict
    rank: dict
    target: frozenset = field(default=frozenset())

    def wins(self, c: Configuration) -> bool:
        return c in self.win


def solve(a: Automaton, inp: InputPair, reachable_only: bool = False, rng=None) -> GameSolution:
    """Backward attractor with pending-successor counters.

    ``rng`` (a ``random.Random``) shuffles successor lists; the winning
    region does not depend on it.
    """
    graph = ConfigGraph(a, inp, reachable_only)
    key = a.config_key
    final, universal = a.final, a.universal

    succ = {}
    for c in graph.nodes:
        s = [] if c.state in final else list(graph.successors(c))
        if rng is not None:
            rng.shuffle(s)
        succ[c] = s
    pred = graph.predecessors

    target = [c for c in graph.nodes
              if c.state in final or (c.state in universal and not succ[c])]
    rank = {c: 0 for c in target}
    pending = {c: len(succ[c]) for c in graph.nodes if c.state in universal and c not in rank}
    estrat = {}

    layer = sorted(target, key=key)
    r = 0
    while layer:
        nxt = []
        for c in layer:
            for p in pred[c]:
                if p in rank:
                    continue
                if p.state in universal:
                    pending[p] -= 1
                    if pending[p] == 0:
                        rank[p] = r + 1
                        nxt.append(p)
                else:
                    rank[p] = r + 1
                    estrat[p] = c
                    nxt.append(p)
        layer = sorted(nxt, key=key)
        r += 1

    ustrat = {}
    for c in graph.nodes:
        if c.state in universal and c not in rank and succ[c]:
            ustrat[c] = next(d for d in succ[c] if d not in rank)
    return GameSolution(frozenset(rank), estrat, ustrat, rank, frozenset(target))


def decide(a: Automaton, inp: InputPair) -> bool:
    # The outcome at a configuration only depends on what it can reach, so
    # the reachable part of the graph suffices.
    sol = solve(a, inp, reachable_only=True)
    return any(c in sol.win for c in initial_configurations(a))


def naive_decide(a: Automaton, inp: InputPair) -> bool:
    """Independent oracle: round-robin fixpoint over every configuration.

    Successors are recomputed from the raw transition list on each sweep.
    """
    t1, t2 = inp.tape1, inp.tape2
    configs = [(q, i, j) for q in a.states for i in range(len(t1)) for j in range(len(t2))]

    def succs(q, i, j):
        return [(t.dst, i + t.move1.chi, j + t.move2.chi) for t in a.transitions
                if t.src == q and t.read1 == t1[i] and t.read2 == t2[j]]

    win = set()
    changed = True
    while changed:
        changed = False
        for c in configs:
            if c in win:
                continue
            q = c[0]
            if q in a.final:
                good = True
            elif q in a.universal:
                good = all(d in win for d in succs(*c))
            else:
                good = any(d in win for d in succs(*c))
            if good:
                win.add(c)
                changed = True
    return any((q, 0, 0) in win for q in a.initial)


# -- deterministic runs ------------------------------------------------------

@dataclass(frozen=True)
class Accept:
    trace: tuple


@dataclass(frozen=True)
class RejectDead:
    trace: tuple


@dataclass(frozen=True)
class RejectLoop:
    trace: tuple
    lasso_start: int


def simulate_deterministic(a: Automaton, inp: InputPair):
    """Follow the unique run; a repeated configuration means a loop."""
    if len(a.initial) != 1:
        raise NotDeterministic(f"need exactly one initial state, have {len(a.initial)}")
    if not validate_automaton(a).deterministic:
        raise NotDeterministic("automaton has conflicting transitions")
    (q0,) = a.initial
    c = Configuration(q0, 0, 0)
    trace = [c]
    position = {c: 0}
    while True:
        if c.state in a.final:
            return Accept(tuple(trace))
        nxt = successors(a, inp, c)
        if not nxt:
            return RejectDead(tuple(trace))
        c = nxt[0]
        trace.append(c)
        if c in position:
            return RejectLoop(tuple(trace), position[c])
        position[c] = len(trace) - 1


# -- run trees ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RunTree:
    """A node of an accepting run tree.

    Subtrees rooted at equal configurations are the same object, so the
    in-memory structure is a DAG while the logical tree may be much larger.
    """

    config: Configuration
    children: tuple = ()

    def walk(self) -> Iterator["RunTree"]:
        """Distinct nodes, each once."""
        seen = set()
        stack = [self]
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            yield node
            stack.extend(reversed(node.children))

    def size(self) -> int:
        """Number of nodes of the unfolded tree."""
        return self._fold(lambda kids: 1 + sum(kids))

    def depth(self) -> int:
        return self._fold(lambda kids: 1 + max(kids, default=0))

    def _fold(self, combine):
        # children first; iterative because runs can be very deep
        memo: dict = {}
        stack = [(self, False)]
        while stack:
            node, ready = stack.pop()
            if id(node) in memo:
                continue
            if ready:
                memo[id(node)] = combine([memo[id(ch)] for ch in node.children])
            else:
                stack.append((node, True))
                stack.extend((ch, False) for ch in node.children if id(ch) not in memo)
        return memo[id(self)]


def extract_run_tree(a: Automaton, inp: InputPair, sol: GameSolution) -> RunTree:
    roots = [c for c in initial_configurations(a) if c in sol.win]
    if not roots:
        raise NotAccepted(f"input {inp} is rejected")
    memo: dict = {}
    # ranks strictly decrease along edges, so building in increasing rank
    # order never needs recursion
    order = _closure(a, inp, sol, roots[0])
    for c in sorted(order, key=lambda c: sol.rank[c]):
        if c.state in a.final or c in sol.target:
            memo[c] = RunTree(c)
        elif a.is_universal(c.state):
            memo[c] = RunTree(c, tuple(memo[d] for d in successors(a, inp, c)))
        else:
            memo[c] = RunTree(c, (memo[sol.estrat[c]],))
    return memo[roots[0]]


def _closure(a, inp, sol, root):
    seen = {root}
    stack = [root]
    while stack:
        c = stack.pop()
        if c.state in a.final or c in sol.target:
            continue
        nxt = successors(a, inp, c) if a.is_universal(c.state) else [sol.estrat[c]]
        for d in nxt:
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return seen


# -- enumeration -------------------------------------------------------------

def words(alphabet, max_len: int) -> Iterator[tuple]:
    """All words up to ``max_len`` in length-lexicographic order."""
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def enumerate_accepted(a: Automaton, max_u: int, max_v: int) -> list:
    out = []
    for u in words(a.alphabet, max_u):
        for v in words(a.alphabet, max_v):
            inp = InputPair(u, v)
            if decide(a, inp):
                out.append(inp)
    return out
