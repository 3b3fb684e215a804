"""Random generators and independent checkers shared by the tests."""

import itertools
from collections import deque

from twotape.engine import successors
from twotape.model import BEGIN, END, Automaton, Configuration, Move, Transition, move_allowed
from twotape.pictures import BORDER, Direction, FourWayAutomaton, FourWayTransition

MOVES = (Move.L, Move.S, Move.R)


def legal_moves(x):
    return [m for m in MOVES if move_allowed(x, m)]


def random_automaton(rng, max_states=4, max_trans=12, alphabet=None, universal=True,
                     deterministic=False):
    if alphabet is None:
        alphabet = ("a", "b")[: rng.randint(1, 2)]
    n = rng.randint(1, max_states)
    states = [f"q{k}" for k in range(n)]
    symbols = (BEGIN, *alphabet, END)
    trans, keys = [], set()
    for _ in range(rng.randint(0, max_trans)):
        src, x, y = rng.choice(states), rng.choice(symbols), rng.choice(symbols)
        if deterministic and (src, x, y) in keys:
            continue
        t = Transition(src, x, y, rng.choice(states), rng.choice(legal_moves(x)),
                       rng.choice(legal_moves(y)))
        if t not in trans:
            trans.append(t)
            keys.add((src, x, y))
    pick = lambda p: {q for q in states if rng.random() < p}
    initial = {states[0]} if deterministic else pick(0.5) or {states[0]}
    return Automaton(states, alphabet, trans, initial, pick(0.3),
                     pick(0.4) if universal and not deterministic else ())


def all_pairs(alphabet, max_len):
    ws = [w for n in range(max_len + 1) for w in itertools.product(alphabet, repeat=n)]
    return [(u, v) for u in ws for v in ws]


def reach_final_bfs(a, inp):
    """Existential-only acceptance: some path from an initial configuration hits F."""
    start = [Configuration(q, 0, 0) for q in a.initial]
    seen, queue = set(start), deque(start)
    while queue:
        c = queue.popleft()
        if c.state in a.final:
            return True
        for d in successors(a, inp, c):
            if d not in seen:
                seen.add(d)
                queue.append(d)
    return False


def check_run_tree(a, inp, tree):
    """Run-tree rules, checked on every distinct node.

    Shared subtrees satisfy the rules once for all their occurrences, so
    checking distinct nodes plus acyclicity covers the unfolded tree.
    Returns a list of problems (empty when the tree is an accepting run).
    """
    problems = []
    root = tree.config
    if root.state not in a.initial or (root.i, root.j) != (0, 0):
        problems.append(f"root {root} is not initial")
    nodes = list(tree.walk())
    for node in nodes:
        c = node.config
        if not (0 <= c.i <= len(inp.u) + 1 and 0 <= c.j <= len(inp.v) + 1):
            problems.append(f"{c} out of bounds")
            continue
        succ = successors(a, inp, c)
        kids = [ch.config for ch in node.children]
        if not node.children:
            if not (c.state in a.final or (c.state in a.universal and not succ)):
                problems.append(f"leaf {c} is neither final nor a dead universal")
        elif c.state in a.final:
            problems.append(f"final {c} has children")
        elif c.state in a.universal:
            if sorted(set(kids)) != sorted(set(succ)) or len(kids) != len(set(kids)):
                problems.append(f"universal {c} children {kids} != successors {succ}")
        elif len(kids) != 1 or kids[0] not in succ:
            problems.append(f"existential {c} children {kids} invalid")
    # finiteness: the node graph has no cycle (Kahn's algorithm)
    indeg = {id(n): 0 for n in nodes}
    for n in nodes:
        for ch in n.children:
            indeg[id(ch)] += 1
    ready = [n for n in nodes if indeg[id(n)] == 0]
    done = 0
    while ready:
        n = ready.pop()
        done += 1
        for ch in n.children:
            indeg[id(ch)] -= 1
            if indeg[id(ch)] == 0:
                ready.append(ch)
    if done != len(nodes):
        problems.append("run tree has a cycle")
    return problems


def random_fourway(rng, max_states=3, max_trans=10):
    n = rng.randint(1, max_states)
    states = [f"p{k}" for k in range(n)]
    trans = []
    for _ in range(rng.randint(0, max_trans)):
        t = FourWayTransition(rng.choice(states), rng.choice(("a", BORDER)), rng.choice(states),
                              rng.choice(list(Direction)))
        if t not in trans:
            trans.append(t)
    pick = lambda p: {q for q in states if rng.random() < p}
    return FourWayAutomaton(states, ("a",), trans, pick(0.5) or {states[0]}, pick(0.3), pick(0.3))


def tape2_oblivious_automaton(rng, alphabet=("a", "b"), max_states=3, max_rules=8):
    """Transitions depend on tape 2 only through letter vs marker."""
    n = rng.randint(1, max_states)
    states = [f"q{k}" for k in range(n)]
    sym1 = (BEGIN, *alphabet, END)
    classes = {BEGIN: (BEGIN,), "letter": tuple(alphabet), END: (END,)}
    trans = []
    for _ in range(rng.randint(1, max_rules)):
        src, x, cls, dst = rng.choice(states), rng.choice(sym1), rng.choice(list(classes)), rng.choice(states)
        m1 = rng.choice(legal_moves(x))
        m2 = rng.choice(legal_moves(classes[cls][0]))
        for y in classes[cls]:
            t = Transition(src, x, y, dst, m1, m2)
            if t not in trans:
                trans.append(t)
    pick = lambda p: {q for q in states if rng.random() < p}
    return Automaton(states, alphabet, trans, pick(0.5) or {states[0]}, pick(0.25), pick(0.4))
