"""Example automata, each with an independent brute-force oracle.

========== ============================================== =================
name       relation                                       kind
========== ============================================== =================
reverse    (u, reverse of u)                              deterministic
coprime    (a^p, a^q), p, q >= 1, gcd(p, q) = 1           deterministic
pow2       (a^p, a^p), p a power of two                   deterministic
perm-pair  (a^n, s$s), s encodes a permutation of size n  alternating
kari       (a^w, a^h), w = i*h + j*(h+1), h >= 1          non-deterministic
counting   (w, #b(0)#b(1)#...#b(2^n - 1)#), n = |w| >= 1  deterministic
lift-j     (w, #b(i)#b(i+1)#), |w| = n                    deterministic
========== ============================================== =================

``b`` is the n-bit binary writing with the least significant bit first.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .constructions import SEP, SyncTransducer, lift_synchronous, rewind, sync_loop
from .errors import NotAPermutation, UnknownName, WidthOverflow
from .model import BEGIN, END, Automaton, AutomatonBuilder, Move, move_allowed

BITS = ("0", "1")
PERM_ALPHABET = ("a", "0", "1", "#", "$")
COUNT_ALPHABET = ("a", "0", "1", "#")


# -- encodings -----------------------------------------------------------------

def lsb_binary(i: int, n: int) -> str:
    if i < 0 or i >= 2 ** n:
        raise WidthOverflow(f"{i} does not fit in {n} bits")
    return "".join(str((i >> t) & 1) for t in range(n))


def lsb_value(bits) -> int:
    return sum(int(b) << t for t, b in enumerate(bits))


@dataclass(frozen=True)
class PermutationEncoding:
    n: int
    sigma: tuple  # sigma[i - 1] = image of i
    text: str


def encode_permutation(sigma) -> PermutationEncoding:
    """Column ``i`` has its single 1 in row ``sigma(i)``."""
    sigma = tuple(sigma)
    n = len(sigma)
    if n < 1 or sorted(sigma) != list(range(1, n + 1)):
        raise NotAPermutation(f"{sigma} is not a permutation of 1..{n}")
    cols = ["".join("1" if sigma[i] == k else "0" for k in range(1, n + 1)) for i in range(n)]
    return PermutationEncoding(n, sigma, "#".join(cols))


def decode_permutation(text) -> tuple:
    text = "".join(text)
    cols = text.split("#")
    n = len(cols)
    for idx, col in enumerate(cols, start=1):
        if len(col) != n or set(col) - set(BITS):
            raise NotAPermutation(f"column {idx} is not a {n}-bit word")
        if col.count("1") != 1:
            raise NotAPermutation(f"column {idx} has {col.count('1')} ones")
    for k in range(n):
        ones = sum(col[k] == "1" for col in cols)
        if ones != 1:
            raise NotAPermutation(f"row {k + 1} has {ones} ones")
    return tuple(col.index("1") + 1 for col in cols)


def incrementer_transducer() -> SyncTransducer:
    """Adds one to an lsb-first number; overflow is rejected."""
    delta = {
        ("carry", "1", "0"): "carry",
        ("carry", "0", "1"): "copy",
        ("copy", "0", "0"): "copy",
        ("copy", "1", "1"): "copy",
    }
    return SyncTransducer(BITS, ("carry", "copy"), "carry", {"copy"}, delta)


def counting_word(n: int) -> str:
    return SEP + "".join(lsb_binary(i, n) + SEP for i in range(2 ** n))


# -- helpers -------------------------------------------------------------------

class _Builder(AutomatonBuilder):
    def maybe(self, src, x, y, dst, m1, m2):
        """Add the transition unless it would move a head off the tape."""
        if move_allowed(x, Move(m1)) and move_allowed(y, Move(m2)):
            self.add(src, x, y, dst, m1, m2)


# -- reverse -------------------------------------------------------------------

def reverse_automaton(alphabet=("a", "b")) -> Automaton:
    b = AutomatonBuilder(alphabet)
    for y in (BEGIN, *alphabet):
        b.add("qi", BEGIN, y, "qi", "S", "R")
    b.add("qi", BEGIN, END, "q", "R", "L")
    for x in alphabet:
        b.add("q", x, x, "q", "R", "L")
    b.add("q", END, BEGIN, "qf", "S", "S")
    return b.build(initial=["qi"], final=["qf"])


# -- coprime -------------------------------------------------------------------
#
# A ball starts in corner (0, 0) of the p x q box and moves diagonally,
# bouncing off the walls.  It passes through (p, 1) or (1, q) before hitting
# a corner exactly when gcd(p, q) = 1.  While a coordinate increases its head
# sits one cell ahead (so reading END means "at the far wall"); while it
# decreases the head sits on the coordinate (reading BEGIN means "at 0").

_SYM = (BEGIN, "a", END)


def _coord_checks(d, s):
    far = d == "+" and s == END
    zero = d == "-" and s == BEGIN
    return far, zero


def _probe(b, name, tape, d, on_false):
    """Accept iff the coordinate on ``tape`` equals 1, else go to ``on_false``.

    Head index equals the coordinate when ``d == '-'`` and exceeds it by one
    when ``d == '+'``; the probe walks left that many cells looking for BEGIN.
    """
    steps = 1 if d == "-" else 2
    back = ("S", "R") if tape == 2 else ("R", "S")
    left = ("S", "L") if tape == 2 else ("L", "S")
    b.state(name)
    for s1 in _SYM:
        for s2 in _SYM:
            b.maybe(name, s1, s2, f"{name}.1", *left)
    for k in range(1, steps + 1):
        here = f"{name}.{k}"
        for other in _SYM:
            for mine in _SYM:
                s1, s2 = (other, mine) if tape == 2 else (mine, other)
                if mine == BEGIN:
                    if k == steps:
                        b.maybe(here, s1, s2, "accept", "S", "S")
                    else:
                        b.maybe(here, s1, s2, f"{name}.ret{k}", *back)
                elif mine == "a":
                    if k < steps:
                        b.maybe(here, s1, s2, f"{name}.{k + 1}", *left)
                    else:
                        b.maybe(here, s1, s2, f"{name}.ret{k}", *back)
        # walking back: ret{k} is k - 1 steps from home
    for k in range(1, steps + 1):
        here = f"{name}.ret{k}"
        for s1 in _SYM:
            for s2 in _SYM:
                if k == 1:
                    b.maybe(here, s1, s2, on_false, "S", "S")
                else:
                    b.maybe(here, s1, s2, f"{name}.ret{k - 1}", *back)


def coprime_automaton() -> Automaton:
    b = _Builder(("a",))
    b.add("start", BEGIN, BEGIN, "first", "R", "R")
    b.add("first", "a", "a", "C[++0]", "R", "R")
    dirs = ("+", "-")
    for d1 in dirs:
        for d2 in dirs:
            c0, c1, c2 = f"C[{d1}{d2}0]", f"C[{d1}{d2}1]", f"C[{d1}{d2}2]"
            py, px = f"probeY[{d1}{d2}]", f"probeX[{d1}{d2}]"
            _probe(b, py, 2, d2, c1)
            _probe(b, px, 1, d1, c2)
            for s1 in _SYM:
                for s2 in _SYM:
                    xf, x0 = _coord_checks(d1, s1)
                    yf, y0 = _coord_checks(d2, s2)
                    # stage 0: at x = p, is y = 1?
                    if xf and not y0:
                        b.maybe(c0, s1, s2, py, "S", "S")
                    else:
                        b.maybe(c0, s1, s2, c1, "S", "S")
                    # stage 1: at y = q, is x = 1?
                    if yf and not x0:
                        b.maybe(c1, s1, s2, px, "S", "S")
                    else:
                        b.maybe(c1, s1, s2, c2, "S", "S")
                    # stage 2: corners reject, otherwise advance
                    if (xf or x0) and (yf or y0):
                        continue
                    n1, m1, e1 = _advance(d1, xf, x0)
                    n2, m2, e2 = _advance(d2, yf, y0)
                    if e1 == "S" and e2 == "S":
                        b.maybe(c2, s1, s2, f"C[{n1}{n2}0]", m1, m2)
                    else:
                        b.maybe(c2, s1, s2, f"E[{n1}{n2}{e1}{e2}]", m1, m2)
    for d1 in dirs:
        for d2 in dirs:
            for e1 in "LSR":
                for e2 in "LSR":
                    name = f"E[{d1}{d2}{e1}{e2}]"
                    if name not in b.states:
                        continue
                    for s1 in _SYM:
                        for s2 in _SYM:
                            b.maybe(name, s1, s2, f"C[{d1}{d2}0]", e1, e2)
    return b.build(initial=["start"], final=["accept"])


def _advance(d, far, zero):
    """(new direction, first move, extra move) for one coordinate."""
    if far:
        return "-", "L", "L"
    if zero:
        return "+", "R", "R"
    return d, ("R" if d == "+" else "L"), "S"


# -- powers of two ---------------------------------------------------------------

def pow2_automaton() -> Automaton:
    """Check p = q, then halve p repeatedly with the second head as scratch."""
    b = AutomatonBuilder(("a",))
    b.add("start", BEGIN, BEGIN, "eq0", "R", "R")
    b.add("eq0", "a", "a", "eq", "R", "R")
    b.add("eq", "a", "a", "eq", "R", "R")
    b.add("eq", END, END, "back", "L", "S")
    b.add("back", "a", END, "rw", "S", "L")
    b.add("rw", "a", "a", "rw", "S", "L")
    b.add("rw", "a", BEGIN, "A", "S", "S")
    # A: first head at m - 2s, second head at s
    for y in (BEGIN, "a"):
        b.add("A", "a", y, "B", "L", "S")
        b.add("B", "a", y, "A", "L", "R")
    b.add("B", BEGIN, BEGIN, "accept", "S", "S")
    b.add("A", BEGIN, "a", "C", "R", "L")
    # C: copy the half back onto the first head
    for x in (BEGIN, "a"):
        b.add("C", x, "a", "C", "R", "L")
    b.add("C", "a", BEGIN, "A", "S", "S")
    return b.build(initial=["start"], final=["accept"])


# -- Kari-Moore relation -----------------------------------------------------------

def kari_automaton() -> Automaton:
    """Each sweep of the second head consumes h letters of u, or guesses h + 1."""
    b = AutomatonBuilder(("a",))
    b.add("start", BEGIN, BEGIN, "nonempty", "R", "R")
    for x in ("a", END):
        b.add("nonempty", x, "a", "fwd", "S", "L")
    b.add("fwd", END, BEGIN, "accept", "S", "S")
    b.add("fwd", "a", BEGIN, "sweep.fwd", "S", "R")
    b.add("sweep.fwd", "a", "a", "sweep.fwd", "R", "R")
    for x in ("a", END):
        b.add("sweep.fwd", x, END, "bwd", "S", "S")
    b.add("sweep.fwd", "a", END, "bwd", "R", "S")
    b.add("bwd", END, END, "accept", "S", "S")
    b.add("bwd", "a", END, "sweep.bwd", "S", "L")
    b.add("sweep.bwd", "a", "a", "sweep.bwd", "R", "L")
    for x in ("a", END):
        b.add("sweep.bwd", x, BEGIN, "fwd", "S", "S")
    b.add("sweep.bwd", "a", BEGIN, "fwd", "R", "S")
    return b.build(initial=["start"], final=["accept"])


# -- pairs of equal permutations ----------------------------------------------------

def perm_pair_automaton() -> Automaton:
    """Alternating automaton for ``(a^n, s$s)`` with ``s`` a permutation code.

    Phases: block shape (lengths and counts via the first tape), one 1 per
    column, one 1 per row (counter sweep), then the universal inversion
    search, which can only be kept away from a final state forever when the
    two permutations differ.
    """
    b = _Builder(PERM_ALPHABET)
    t1 = (BEGIN, "a", END)
    t2 = (BEGIN, *PERM_ALPHABET[1:], END)
    seps = ("#", "$")

    # phase 1a: every block has length n >= 1, blocks separated by # or $
    b.add("shape.start", BEGIN, BEGIN, "shape.first", "R", "R")
    for z in BITS:
        b.add("shape.first", "a", z, "shape.blk", "R", "R")
        b.add("shape.blk", "a", z, "shape.blk", "R", "R")
    for s in seps:
        b.add("shape.blk", END, s, "shape.back", "L", "S")
        b.add("shape.back", "a", s, "shape.back", "L", "S")
        b.add("shape.back", BEGIN, s, "shape.blk", "R", "R")
    b.add("shape.blk", END, END, "count.rw", "S", "L")
    # phase 1b: n blocks on each side of a single $
    rewind(b, "count.rw", t1, t2, "count.L", "R", "R")
    for z in BITS:
        b.add("count.L", "a", z, "count.L", "S", "R")
        b.add("count.R", "a", z, "count.R", "S", "R")
    b.add("count.L", "a", "#", "count.L", "R", "R")
    b.add("count.R", "a", "#", "count.R", "R", "R")
    b.add("count.L", "a", "$", "count.endL", "R", "S")
    b.add("count.endL", END, "$", "count.back", "L", "S")
    b.add("count.back", "a", "$", "count.back", "L", "S")
    b.add("count.back", BEGIN, "$", "count.R", "R", "R")
    b.add("count.R", "a", END, "count.endR", "R", "S")
    b.add("count.endR", END, END, "col.rw", "S", "L")
    # phase 2: exactly one 1 per block
    rewind(b, "col.rw", t1, t2, "col.0", "S", "R")
    b.add("col.0", BEGIN, "0", "col.0", "S", "R")
    b.add("col.0", BEGIN, "1", "col.1", "S", "R")
    b.add("col.1", BEGIN, "0", "col.1", "S", "R")
    for s in seps:
        b.add("col.1", BEGIN, s, "col.0", "S", "R")
    b.add("col.1", BEGIN, END, "row.rw", "S", "L")
    # phase 3: for k = 1..n, exactly one block per side has a 1 in row k
    rewind(b, "row.rw", t1, t2, "row.next", "R", "S")
    b.add("row.next", "a", BEGIN, "row.fetch[0]", "L", "R")
    b.add("row.next", END, BEGIN, "inv.start", "S", "S")
    for c in (0, 1):
        fetch, ret, skip = f"row.fetch[{c}]", f"row.ret[{c}]", f"row.skip[{c}]"
        for z in BITS:
            b.add(fetch, "a", z, fetch, "L", "R")
            seen = c + (z == "1")
            if seen <= 1:
                b.add(fetch, BEGIN, z, f"row.ret[{seen}]", "R", "L")
            b.add(ret, "a", z, ret, "R", "L")
            b.add(skip, "a", z, skip, "S", "R")
        for s in (BEGIN, *seps):
            b.add(ret, "a", s, skip, "S", "R")
        b.add(skip, "a", "#", fetch, "L", "R")
    b.add("row.skip[1]", "a", "$", "row.fetch[0]", "L", "R")
    b.add("row.skip[1]", "a", END, "row.home", "S", "L")
    for z in (*BITS, *seps):
        b.add("row.home", "a", z, "row.home", "S", "L")
    b.add("row.home", "a", BEGIN, "row.next", "R", "S")

    # phase 4: inversion search
    b.add("inv.start", END, BEGIN, "inv.U0[L]", "S", "S")
    for x in t1:
        # universal choice of the starting 1, anywhere on either side
        for s in (BEGIN, "#"):
            b.add("inv.U0[L]", x, s, "inv.find[L]", "S", "R")
            b.add("inv.U0[L]", x, s, "inv.skip0[L]", "S", "R")
        b.add("inv.U0[L]", x, "$", "inv.find[R]", "S", "R")
        b.add("inv.U0[L]", x, "$", "inv.skip0[R]", "S", "R")
        b.add("inv.U0[R]", x, "#", "inv.find[R]", "S", "R")
        b.add("inv.U0[R]", x, "#", "inv.skip0[R]", "S", "R")
        for z in BITS:
            b.add("inv.skip0[L]", x, z, "inv.skip0[L]", "S", "R")
            b.add("inv.skip0[R]", x, z, "inv.skip0[R]", "S", "R")
        b.add("inv.skip0[L]", x, "#", "inv.U0[L]", "S", "S")
        b.add("inv.skip0[L]", x, "$", "inv.U0[L]", "S", "S")
        b.add("inv.skip0[R]", x, "#", "inv.U0[R]", "S", "S")
        b.add("inv.skip0[R]", x, END, "accept", "S", "S")

    other = {"L": "R", "R": "L"}
    side_end = {"L": "$", "R": END}
    for side in ("L", "R"):
        find, mr, choose, pick = (f"inv.find[{side}]", f"inv.right[{side}]",
                                  f"inv.U[{side}]", f"inv.pick[{side}]")
        home, count, jump = f"inv.home[{side}]", f"inv.count[{side}]", f"inv.jump[{side}]"
        for x in t1:
            # standing on a 1: walk to the end of its block
            b.add(find, x, "0", find, "S", "R")
            b.add(find, x, "1", mr, "S", "R")
            for z in BITS:
                b.add(mr, x, z, mr, "S", "R")
            b.add(mr, x, "#", choose, "S", "S")
            b.add(mr, x, side_end[side], "accept", "S", "S")
            # universal: take the next column, or skip it
            b.add(choose, x, "#", pick, "S", "R")
            b.add(choose, x, "#", mr, "S", "R")
            b.add(pick, x, "0", pick, "S", "R")
            b.add(pick, x, "1", home, "S", "S")
            # row number of this 1 goes to the first head
            b.maybe(home, x, "1", home, "L", "S")
        b.add(home, BEGIN, "1", count, "R", "L")
        for z in BITS:
            b.add(count, "a", z, count, "R", "L")
        for s in (BEGIN, *seps):
            b.add(count, "a", s, jump, "S", "S")
        # look for the 1 of that row on the other side
        tgt = other[side]
        seek, back, nxt = f"inv.seek[{tgt}]", f"inv.back[{tgt}]", f"inv.next[{tgt}]"
        if side == "L":
            for z in (BEGIN, *BITS, "#"):
                b.add(jump, "a", z, jump, "S", "R")
            b.add(jump, "a", "$", seek, "L", "R")
        else:
            for z in (*BITS, *seps):
                b.add(jump, "a", z, jump, "S", "L")
            b.add(jump, "a", BEGIN, seek, "L", "R")
        for z in BITS:
            b.add(seek, "a", z, seek, "L", "R")
            b.add(back, "a", z, back, "R", "L")
            b.add(nxt, "a", z, nxt, "S", "R")
        b.add(seek, BEGIN, "1", f"inv.right[{tgt}]", "S", "R")
        b.add(seek, BEGIN, "0", back, "R", "L")
        for s in (BEGIN, *seps):
            b.add(back, "a", s, nxt, "S", "R")
        b.add(nxt, "a", "#", seek, "L", "R")

    universal = [q for q in b.states if q.startswith(("inv.U0[", "inv.U["))]
    return b.build(initial=["shape.start"], final=["accept"], universal=universal)


# -- counting ----------------------------------------------------------------------

def counting_automaton(alphabet=COUNT_ALPHABET) -> Automaton:
    """Blocks of |w| bits, the first all zeros, each the successor of the
    previous one, the last all ones."""
    alphabet = tuple(alphabet)
    b = AutomatonBuilder(alphabet)
    counter = alphabet
    b.add("start", BEGIN, BEGIN, "shape.open", "R", "R")
    for x in counter:
        b.add("shape.open", x, SEP, "shape.blk", "S", "R")
        for z in BITS:
            b.add("shape.blk", x, z, "shape.blk", "R", "R")
        for y in (*BITS, SEP, END):
            b.add("shape.back", x, y, "shape.back", "L", "S")
    b.add("shape.blk", END, SEP, "shape.back", "L", "R")
    for z in BITS:
        b.add("shape.back", BEGIN, z, "shape.blk", "R", "S")
    b.add("shape.back", BEGIN, END, "zero.rw", "S", "L")
    for y in (*BITS, SEP):
        b.add("zero.rw", BEGIN, y, "zero.rw", "S", "L")
    b.add("zero.rw", BEGIN, BEGIN, "zero.open", "S", "R")
    b.add("zero.open", BEGIN, SEP, "zero.scan", "S", "R")
    b.add("zero.scan", BEGIN, "0", "zero.scan", "S", "R")
    b.add("zero.scan", BEGIN, SEP, "zero.home", "S", "L")
    b.add("zero.home", BEGIN, "0", "zero.home", "S", "L")
    b.add("zero.home", BEGIN, SEP, "loop.M[carry]", "R", "S")
    entry = sync_loop(b, incrementer_transducer(), counter, "loop.")
    b.add(entry["copy"], END, SEP, "ones.skip", "S", "R")
    for z in BITS:
        b.add("ones.skip", END, z, "ones.skip", "S", "R")
        b.add("ones.home", END, z, "ones.home", "S", "L")
    b.add("ones.skip", END, SEP, "ones.scan", "S", "R")
    b.add("ones.scan", END, "1", "ones.scan", "S", "R")
    b.add("ones.scan", END, SEP, "ones.end", "S", "R")
    b.add("ones.end", END, END, "accept", "S", "S")
    b.add("ones.scan", END, "0", "ones.home", "S", "L")
    b.add("ones.home", END, SEP, "ones.rw", "L", "S")
    for x in counter:
        b.add("ones.rw", x, SEP, "ones.rw", "L", "S")
    b.add("ones.rw", BEGIN, SEP, entry["carry"], "R", "S")
    return b.build(initial=["start"], final=["accept"])


def lift_j_automaton(alphabet=COUNT_ALPHABET) -> Automaton:
    return lift_synchronous(incrementer_transducer(), alphabet)


# -- registry ------------------------------------------------------------------------

_BUILDERS = {
    "reverse": reverse_automaton,
    "coprime": coprime_automaton,
    "pow2": pow2_automaton,
    "perm-pair": perm_pair_automaton,
    "kari": kari_automaton,
    "counting": counting_automaton,
    "lift-j": lift_j_automaton,
}
NAMES = tuple(_BUILDERS)


def zoo_automaton(name: str, alphabet=None) -> Automaton:
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise UnknownName(f"unknown zoo automaton {name!r}; known: {', '.join(NAMES)}") from None
    if alphabet is None:
        return build()
    if name in ("reverse", "counting", "lift-j"):
        return build(tuple(alphabet))
    raise UnknownName(f"zoo automaton {name!r} has a fixed alphabet")


# -- oracles ---------------------------------------------------------------------------

def _unary(w):
    return all(x == "a" for x in w)


def _reverse(u, v):
    return tuple(v) == tuple(reversed(tuple(u)))


def _coprime(u, v):
    p, q = len(u), len(v)
    return _unary(u) and _unary(v) and p >= 1 and q >= 1 and gcd(p, q) == 1


def _pow2(u, v):
    p, q = len(u), len(v)
    return _unary(u) and _unary(v) and p == q and p >= 1 and p & (p - 1) == 0


def _perm_pair(u, v):
    n = len(u)
    if n < 1 or not _unary(u):
        return False
    text = "".join(v)
    if any(len(x) != 1 for x in v) or text.count("$") != 1:
        return False
    left, right = text.split("$")
    if left != right:
        return False
    try:
        sigma = decode_permutation(left)
    except NotAPermutation:
        return False
    return len(sigma) == n


def _kari(u, v):
    w, h = len(u), len(v)
    if h < 1 or not (_unary(u) and _unary(v)):
        return False
    return any(w - i * h >= 0 and (w - i * h) % (h + 1) == 0 for i in range(w + 1))


def _counting(u, v):
    n = len(u)
    return n >= 1 and "".join(v) == counting_word(n) and all(len(x) == 1 for x in v)


def _incr(u, v):
    n = len(u)
    if n < 1 or len(v) != n or any(x not in BITS for x in (*u, *v)):
        return False
    return lsb_value(v) == lsb_value(u) + 1


def _lift_j(u, v):
    text = "".join(v)
    if any(len(x) != 1 for x in v):
        return False
    parts = text.split(SEP)
    if len(parts) != 4 or parts[0] or parts[3]:
        return False
    x, y = parts[1], parts[2]
    return len(u) == len(x) == len(y) and _incr(x, y)


_ORACLES = {
    "reverse": _reverse,
    "coprime": _coprime,
    "pow2": _pow2,
    "perm-pair": _perm_pair,
    "kari": _kari,
    "counting": _counting,
    "incr": _incr,
    "lift-j": _lift_j,
}
ORACLE_NAMES = tuple(_ORACLES)


def oracle(name: str, u, v) -> bool:
    try:
        check = _ORACLES[name]
    except KeyError:
        raise UnknownName(f"unknown oracle {name!r}; known: {', '.join(ORACLE_NAMES)}") from None
    return check(tuple(u), tuple(v))

