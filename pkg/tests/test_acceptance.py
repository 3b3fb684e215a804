"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` or through pytest
(the lines are repeated in the terminal summary).
"""

import itertools
import math
import random
import time

from helpers import (all_pairs, random_automaton, random_fourway, tape2_oblivious_automaton)
from twotape.certificates import (central_part_count, extract_reject_proof, glue,
                                  pigeonhole_threshold, proof_from_json, proof_to_json, threshold,
                                  verify_reject_proof)
from twotape.constructions import (complement_decide_deterministic, intersection_sequential,
                                   intersection_universal, kapoutsis_bound, union)
from twotape.engine import decide, naive_decide
from twotape.errors import Accepted, IncompatibleCenter
from twotape.model import Automaton, InputPair, parse_automaton, serialize_automaton
from twotape.pictures import fourway_to_twotape, simulate_fourway, unary_pair_to_picture
from twotape.zoo import (NAMES, counting_word, encode_permutation, oracle, zoo_automaton)


def _finish(report, num, title, ok, detail, started, limit=None):
    elapsed = time.perf_counter() - started
    if limit is not None and elapsed >= limit:
        ok = False
        detail += f"; too slow ({elapsed:.1f}s >= {limit}s)"
    report(f"{'PASS' if ok else 'FAIL'} {num}: {title} ({detail}, {elapsed:.2f}s)")
    assert ok, detail


def _mismatches(a, cases, expected):
    return [(u, v) for u, v in cases if decide(a, InputPair(u, v)) != expected(u, v)]


def test_criterion_01_reverse(report):
    t0 = time.perf_counter()
    a = zoo_automaton("reverse", ("a", "b"))
    cases = all_pairs(("a", "b"), 5)
    bad = _mismatches(a, cases, lambda u, v: v == u[::-1])
    _finish(report, 1, "reverse relation, exhaustive |u|,|v| <= 5",
            len(cases) == 3969 and not bad, f"{len(cases)} pairs, {len(bad)} mismatches", t0, 5)


def test_criterion_02_coprime(report):
    t0 = time.perf_counter()
    a = zoo_automaton("coprime")
    cases = [(("a",) * p, ("a",) * q) for p in range(1, 41) for q in range(1, 41)]
    bad = _mismatches(a, cases, lambda u, v: math.gcd(len(u), len(v)) == 1)
    _finish(report, 2, "coprime pairs, 1 <= p,q <= 40",
            len(cases) == 1600 and not bad, f"{len(cases)} pairs, {len(bad)} mismatches", t0, 30)


def test_criterion_03_pow2(report):
    t0 = time.perf_counter()
    a = zoo_automaton("pow2")
    powers = {1, 2, 4, 8, 16, 32, 64}
    cases = [(("a",) * p, ("a",) * q) for p in range(1, 65) for q in range(1, 65)]
    bad = _mismatches(a, cases, lambda u, v: len(u) == len(v) and len(u) in powers)
    _finish(report, 3, "powers of two, 1 <= p,q <= 64", not bad,
            f"{len(cases)} pairs, {len(bad)} mismatches", t0, 30)


def _malformed_tapes(rng, n, count):
    """Second tapes outside the relation: mutations and random strings."""
    perms = list(itertools.permutations(range(1, n + 1)))
    out = set()
    while len(out) < count:
        s = encode_permutation(rng.choice(perms)).text
        good = s + "$" + s
        kind = rng.randrange(4)
        if kind == 0:
            k = rng.randrange(len(good))
            cand = good[:k] + rng.choice("01#$") + good[k + 1:]
        elif kind == 1:
            k = rng.randrange(len(good))
            cand = good[:k] + good[k + 1:]
        elif kind == 2:
            k = rng.randrange(len(good) + 1)
            cand = good[:k] + rng.choice("01#$") + good[k:]
        else:
            cand = "".join(rng.choice("01#$") for _ in range(len(good)))
        if not oracle("perm-pair", "a" * n, cand):
            out.add(cand)
    return sorted(out)


def test_criterion_04_perm_pair(report):
    t0 = time.perf_counter()
    a = zoo_automaton("perm-pair")
    rng = random.Random(4)
    errors, pairs, malformed = [], 0, 0
    for n in (1, 2, 3):
        u = "a" * n
        perms = list(itertools.permutations(range(1, n + 1)))
        for s, t in itertools.product(perms, repeat=2):
            pairs += 1
            v = encode_permutation(s).text + "$" + encode_permutation(t).text
            if decide(a, InputPair.of(u, v)) != (s == t):
                errors.append((u, v))
        for v in _malformed_tapes(rng, n, 50):
            malformed += 1
            if decide(a, InputPair.of(u, v)):
                errors.append((u, v))
    ident = encode_permutation((1, 2, 3, 4)).text
    swap = encode_permutation((2, 1, 3, 4)).text
    spot = [(ident + "$" + ident, True), (ident + "$" + swap, False)]
    for v, want in spot:
        if decide(a, InputPair.of("aaaa", v)) != want:
            errors.append(("aaaa", v))
    ok = pairs == 41 and malformed == 150 and not errors
    _finish(report, 4, "permutation pairs n <= 3, malformed tapes, n = 4 spot checks", ok,
            f"{pairs} pairs, {malformed} malformed, 2 spot checks, {len(errors)} errors", t0, 60)


def _mutations(word, symbols):
    out = set()
    for k in range(len(word)):
        for c in symbols:
            out.add(word[:k] + c + word[k + 1:])
        out.add(word[:k] + word[k + 1:])
    for k in range(len(word) + 1):
        for c in symbols:
            out.add(word[:k] + c + word[k:])
    out.discard(word)
    return sorted(out)


def test_criterion_05_counting(report):
    t0 = time.perf_counter()
    a = zoo_automaton("counting")
    errors, checked = [], 0
    for n in (1, 2, 3, 4):
        u = "a" * n
        canon = counting_word(n)
        if not decide(a, InputPair.of(u, canon)):
            errors.append((u, canon))
        for v in _mutations(canon, "01#"):
            checked += 1
            if decide(a, InputPair.of(u, v)):
                errors.append((u, v))
    accepted = [w for w in ("".join(x) for k in range(8) for x in itertools.product("01#", repeat=k))
                if decide(a, InputPair.of("a", w))]
    ok = not errors and accepted == ["#0#1#"]
    _finish(report, 5, "counting relation n <= 4, mutations, exhaustive n = 1", ok,
            f"{checked} mutations, {len(errors)} errors, accepted for n=1: {accepted}", t0, 60)


def test_criterion_06_certificates(report):
    t0 = time.perf_counter()
    rng = random.Random(6)
    problems, rejected, accepted = [], 0, 0
    for _ in range(200):
        a = random_automaton(rng, max_states=4, max_trans=12)
        for u, v in all_pairs(a.alphabet, 3):
            inp = InputPair(u, v)
            ok = decide(a, inp)
            if ok != naive_decide(a, inp):
                problems.append(("naive", inp))
            if ok:
                accepted += 1
                try:
                    extract_reject_proof(a, inp)
                    problems.append(("extracted", inp))
                except Accepted:
                    pass
            else:
                rejected += 1
                if not verify_reject_proof(a, inp, extract_reject_proof(a, inp)).ok:
                    problems.append(("verify", inp))
    _finish(report, 6, "certificate soundness on 200 random automata", not problems,
            f"{rejected} rejected, {accepted} accepted, {len(problems)} discrepancies", t0)


def _glue_instances(rng, want):
    """Pairs of rejected inputs whose proofs agree on three central columns."""
    found = []
    # tape-2-oblivious machines: proofs coincide wherever the letters do
    while len(found) < want:
        a = tape2_oblivious_automaton(rng)
        u = tuple(rng.choice("ab") for _ in range(rng.randint(0, 3)))
        length = rng.randint(3, 6)
        v1 = tuple(rng.choice("ab") for _ in range(length))
        c = rng.randint(1, length)
        v2 = tuple(v1[k] if c - 2 <= k <= c else rng.choice("ab") for k in range(length))
        found.append((a, InputPair(u, v1), InputPair(u, v2), c))
    # plus whatever a blind search over arbitrary machines turns up
    for _ in range(400):
        a = random_automaton(rng, alphabet=("a", "b"))
        u = tuple(rng.choice("ab") for _ in range(rng.randint(0, 2)))
        v1 = tuple(rng.choice("ab") for _ in range(4))
        v2 = tuple(rng.choice("ab") for _ in range(4))
        found.append((a, InputPair(u, v1), InputPair(u, v2), rng.randint(1, 4)))
    return found


def test_criterion_07_glue(report):
    t0 = time.perf_counter()
    rng = random.Random(7)
    glued, failures = 0, []
    for a, i1, i2, c in _glue_instances(rng, 40):
        if decide(a, i1) or decide(a, i2):
            continue
        p1, p2 = extract_reject_proof(a, i1), extract_reject_proof(a, i2)
        try:
            inp, p = glue(p1, i1, p2, i2, c)
        except IncompatibleCenter:
            continue
        glued += 1
        if not verify_reject_proof(a, inp, p).ok or decide(a, inp):
            failures.append((i1, i2, c))
    ok = glued >= 10 and not failures
    _finish(report, 7, "gluing compatible proofs", ok,
            f"{glued} glued instances, {len(failures)} failures", t0)


def test_criterion_08_constructions(report):
    t0 = time.perf_counter()
    rng = random.Random(8)
    ab = ("a", "b")
    pairs = [InputPair(u, v) for u, v in all_pairs(ab, 3)]
    bad = 0
    for _ in range(100):
        a = random_automaton(rng, alphabet=ab)
        b = random_automaton(rng, alphabet=ab)
        ea = Automaton(a.states, ab, a.transitions, a.initial, a.final)
        eb = Automaton(b.states, ab, b.transitions, b.initial, b.final)
        u_, i_, s_ = union(a, b), intersection_universal(a, b), intersection_sequential(ea, eb)
        for p in pairs:
            x, y = decide(a, p), decide(b, p)
            bad += decide(u_, p) != (x or y)
            bad += decide(i_, p) != (x and y)
            bad += decide(s_, p) != (decide(ea, p) and decide(eb, p))
    for _ in range(100):
        d = random_automaton(rng, alphabet=ab, deterministic=True)
        for p in pairs:
            bad += complement_decide_deterministic(d, p) != (not decide(d, p))
    _finish(report, 8, "union, intersections and deterministic complement", bad == 0,
            f"100 pairs x {len(pairs)} inputs, 100 deterministic machines, {bad} discrepancies", t0)


def test_criterion_09_growth(report):
    t0 = time.perf_counter()
    a = zoo_automaton("counting")
    k = len(a.states)
    rows, ok = [], True
    for n in range(1, 7):
        v = counting_word(n)
        length = len(v)
        accepted = decide(a, InputPair.of("a" * n, v))
        bound = kapoutsis_bound(n, k)
        ok &= accepted and length == (n + 1) * 2 ** n + 1 and length <= bound
        rows.append(f"n={n}: |v|={length}")
    _finish(report, 9, f"growth of the counting relation vs C(2nk, nk+1), k={k}", ok,
            ", ".join(rows), t0)


def test_criterion_10_pictures(report):
    t0 = time.perf_counter()
    rng = random.Random(10)
    bad = 0
    for _ in range(100):
        f = random_fourway(rng, max_states=3)
        conv = fourway_to_twotape(f)
        for m in range(1, 6):
            for n in range(1, 6):
                bad += simulate_fourway(f, unary_pair_to_picture(m, n)) != \
                    decide(conv, InputPair.of("a" * m, "a" * n))
    _finish(report, 10, "4-way simulation vs converted two-tape automaton", bad == 0,
            f"100 automata x 25 pictures, {bad} discrepancies", t0)


def test_criterion_11_formats(report):
    t0 = time.perf_counter()
    rng = random.Random(11)
    bad = 0
    machines = [zoo_automaton(n) for n in NAMES]
    machines += [random_automaton(rng) for _ in range(50)]
    for a in machines:
        text = serialize_automaton(a)
        b = parse_automaton(text)
        bad += b != a or serialize_automaton(b) != text
    certs = 0
    for a in machines[len(NAMES):]:
        inp = InputPair(tuple(rng.choice(a.alphabet) for _ in range(2)), (a.alphabet[0],))
        if decide(a, inp):
            continue
        text = proof_to_json(a, inp, extract_reject_proof(a, inp))
        inp2, p2 = proof_from_json(text)
        bad += proof_to_json(a, inp2, p2) != text
        certs += 1
    _finish(report, 11, "automaton and certificate round trips", bad == 0 and certs > 0,
            f"{len(machines)} automata, {certs} certificates, {bad} differences", t0)


def _binom_pascal(n, k):
    row = [1]
    for _ in range(n):
        row = [1] + [row[x] + row[x + 1] for x in range(len(row) - 1)] + [1]
    return row[k] if 0 <= k <= n else 0


def _central_naive(q, d, n):
    total = 1
    for _ in range(3 * (n + 2)):
        for _ in range(q):
            total *= d + 1
    return total


def _threshold_naive(q, d):
    n, fact = 1, 1
    while _central_naive(q, d, n) >= fact:
        n += 1
        fact *= n
    return n


def test_criterion_12_bounds(report):
    t0 = time.perf_counter()
    bad = []
    if kapoutsis_bound(2, 2) != 56:
        bad.append("kapoutsis(2,2)")
    degenerate = Automaton(("q",), ("a",), (), {"q"}, ())
    if pigeonhole_threshold(degenerate) != 2:
        bad.append("pigeonhole |Δ|=0")
    for n in range(0, 4):
        for k in range(1, 4):
            if kapoutsis_bound(n, k) != _binom_pascal(2 * n * k, n * k + 1):
                bad.append(f"kapoutsis({n},{k})")
    for q in range(1, 4):
        for d in range(0, 4):
            for n in range(1, 4):
                if central_part_count(q, d, n) != _central_naive(q, d, n):
                    bad.append(f"central({q},{d},{n})")
    for q, d in ((1, 0), (1, 1), (1, 2), (2, 1)):
        if threshold(q, d) != _threshold_naive(q, d):
            bad.append(f"threshold({q},{d})")
    _finish(report, 12, "exact bounds against naive big-integer versions", not bad,
            f"{len(bad)} mismatches {bad}" if bad else "all equal", t0)


if __name__ == "__main__":
    import sys
    tests = [(k, v) for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for name, fn in tests:
        try:
            fn(print)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
