"""Command-line front end.

Exit status: 0 accepted / ok, 1 rejected / verification failed, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import sys

from . import certificates as cert
from . import constructions as cons
from . import pictures as pic
from .dot import run_tree_to_dot, trace_to_dot
from .engine import (RejectLoop, decide, enumerate_accepted, extract_run_tree,
                     initial_configurations, simulate_deterministic, solve)
from .errors import Accepted, TwoTapeError
from .model import (InputPair, parse_automaton, serialize_automaton, split_word,
                    validate_automaton)
from .zoo import oracle, zoo_automaton

OK, NO, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _load(path):
    return parse_automaton(_read(path))


def _input(args, a=None):
    inp = InputPair(split_word(args.u, args.tokens), split_word(args.v, args.tokens))
    if a is not None:
        inp.check_alphabet(a.alphabet)
    return inp


def _letters(text):
    return tuple(x for x in text.split(",") if x) if text else None


# -- commands ---------------------------------------------------------------------

def cmd_check(args):
    automata = [_load(p) for p in args.automaton]
    inp = _input(args, automata[0])
    for a in automata[1:]:
        inp.check_alphabet(a.alphabet)
    verdicts = [decide(a, inp) for a in automata]
    ok = all(verdicts) if args.all else any(verdicts)
    if args.trace:
        if len(automata) != 1:
            raise UsageError("--trace needs a single automaton")
        _write(args.trace, _trace_dot(automata[0], inp))
    print("ACCEPT" if ok else "REJECT")
    return OK if ok else NO


def _trace_dot(a, inp):
    if len(a.initial) == 1 and validate_automaton(a).deterministic:
        out = simulate_deterministic(a, inp)
        lasso = out.lasso_start if isinstance(out, RejectLoop) else None
        return trace_to_dot(out.trace, lasso_start=lasso)
    sol = solve(a, inp, reachable_only=True)
    if not any(c in sol.win for c in initial_configurations(a)):
        raise UsageError("input is rejected; a rejected input has no run tree "
                         "(use 'certificate extract' instead)")
    return run_tree_to_dot(extract_run_tree(a, inp, sol), a.universal, a.final)


def cmd_solve(args):
    a = _load(args.automaton)
    inp = _input(args, a)
    sol = solve(a, inp, reachable_only=True)
    starts = initial_configurations(a)
    ok = any(c in sol.win for c in starts)
    print("ACCEPT" if ok else "REJECT")
    print(f"winning configurations: {len(sol.win)}")
    for c in starts:
        rank = sol.rank.get(c)
        print(f"  {c.label()}: " + (f"rank {rank}" if rank is not None else "losing"))
    if ok and args.trace:
        _write(args.trace, run_tree_to_dot(extract_run_tree(a, inp, sol), a.universal, a.final))
    if not ok and args.out:
        _write(args.out, cert.proof_to_json(a, inp, cert.extract_reject_proof(a, inp, sol)))
    return OK if ok else NO


def cmd_certificate(args):
    a = _load(args.automaton)
    if args.mode == "extract":
        inp = _input(args, a)
        try:
            proof = cert.extract_reject_proof(a, inp)
        except Accepted:
            print("input is accepted; no certificate of rejection exists")
            return NO
        _write(args.out, cert.proof_to_json(a, inp, proof))
        return OK
    if not args.cert:
        raise UsageError("certificate verify needs --cert FILE")
    inp, proof = cert.proof_from_json(_read(args.cert))
    inp.check_alphabet(a.alphabet)
    res = cert.verify_reject_proof(a, inp, proof)
    if res.ok:
        print("OK")
        return OK
    print(f"INVALID: {res.first_violation}")
    return NO


def cmd_enumerate(args):
    a = _load(args.automaton)
    sep = " " if args.tokens else ""
    for inp in enumerate_accepted(a, args.max_u, args.max_v):
        u = sep.join(inp.u) or "ε"
        v = sep.join(inp.v) or "ε"
        print(f"{u}\t{v}")
    return OK


def cmd_zoo(args):
    a = zoo_automaton(args.name, _letters(args.alphabet))
    _write(args.out, serialize_automaton(a))
    return OK


def cmd_construct(args):
    if args.kind == "lift-sync":
        if len(args.inputs) != 1:
            raise UsageError("lift-sync needs one transducer file")
        t = cons.parse_transducer(_read(args.inputs[0]))
        a = cons.lift_synchronous(t, _letters(args.alphabet))
    else:
        if len(args.inputs) != 2:
            raise UsageError(f"{args.kind} needs two automaton files")
        x, y = (_load(p) for p in args.inputs)
        build = {"union": cons.union, "intersect": cons.intersection_universal,
                 "intersect-seq": cons.intersection_sequential}[args.kind]
        a = build(x, y)
    _write(args.out, serialize_automaton(a))
    return OK


def cmd_oracle(args):
    ok = oracle(args.name, split_word(args.u, args.tokens), split_word(args.v, args.tokens))
    print("true" if ok else "false")
    return OK if ok else NO


def cmd_bounds(args):
    if args.kind == "kapoutsis":
        if args.n is None or args.k is None:
            raise UsageError("bounds kapoutsis needs --n and --k")
        print(cons.kapoutsis_bound(args.n, args.k))
        return OK
    q, d = _sizes(args)
    if args.kind == "central":
        if args.n is None:
            raise UsageError("bounds central needs --n")
        print(cert.central_part_count(q, d, args.n))
    else:
        print(cert.threshold(q, d, args.cap))
    return OK


def _sizes(args):
    if args.automaton:
        a = _load(args.automaton)
        return len(a.states), len(a.transitions)
    if args.states is None or args.transitions is None:
        raise UsageError("give -a FILE or both --states and --transitions")
    return args.states, args.transitions


def cmd_picture(args):
    if args.kind == "product":
        p = pic.product_of_words(split_word(args.u, args.tokens), split_word(args.v, args.tokens))
        _write(args.out, pic.serialize_picture(p))
        return OK
    if not args.automaton:
        raise UsageError(f"picture {args.kind} needs -a FILE")
    f = pic.parse_fourway(_read(args.automaton))
    if args.kind == "convert":
        _write(args.out, serialize_automaton(pic.fourway_to_twotape(f)))
        return OK
    if args.picture:
        p = pic.parse_picture(_read(args.picture))
    elif args.rows is not None and args.cols is not None:
        p = pic.unary_pair_to_picture(args.rows, args.cols)
    else:
        raise UsageError("picture run needs --picture FILE or --rows and --cols")
    ok = pic.simulate_fourway(f, p)
    print("ACCEPT" if ok else "REJECT")
    return OK if ok else NO


# -- argument parsing -----------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="twotape", description="Two-way two-tape automata toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    def words(p, required=True):
        p.add_argument("--u", required=required, default="", help="first word")
        p.add_argument("--v", required=required, default="", help="second word")
        p.add_argument("--tokens", action="store_true",
                       help="words are whitespace-separated letter tokens")

    p = sub.add_parser("check", help="decide membership of a pair")
    p.add_argument("-a", "--automaton", action="append", required=True,
                   help="automaton file; repeat for a semantic union (or --all: intersection)")
    p.add_argument("--all", action="store_true", help="require every automaton to accept")
    words(p)
    p.add_argument("--trace", help="write the run (trace or run tree) as DOT")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="solve the acceptance game")
    p.add_argument("-a", "--automaton", required=True)
    words(p)
    p.add_argument("-o", "--out", help="certificate file written when the input is rejected")
    p.add_argument("--trace", help="run tree DOT written when the input is accepted")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("certificate", help="extract or verify proofs of rejection")
    p.add_argument("mode", choices=["extract", "verify"])
    p.add_argument("-a", "--automaton", required=True)
    words(p, required=False)
    p.add_argument("-o", "--out")
    p.add_argument("--cert", help="certificate to verify")
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("enumerate", help="list accepted pairs up to given lengths")
    p.add_argument("-a", "--automaton", required=True)
    p.add_argument("--max-u", type=int, required=True)
    p.add_argument("--max-v", type=int, required=True)
    p.add_argument("--tokens", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("zoo", help="write a named example automaton")
    p.add_argument("name")
    p.add_argument("--alphabet", help="comma-separated letters (reverse, counting, lift-j)")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_zoo)

    p = sub.add_parser("construct", help="closure constructions")
    p.add_argument("kind", choices=["union", "intersect", "intersect-seq", "lift-sync"])
    p.add_argument("inputs", nargs="+", help="automaton files (transducer file for lift-sync)")
    p.add_argument("--alphabet", help="target alphabet for lift-sync")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("oracle", help="evaluate a brute-force oracle")
    p.add_argument("name")
    words(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bounds", help="exact counting bounds")
    p.add_argument("kind", choices=["kapoutsis", "central", "pigeonhole"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("-a", "--automaton")
    p.add_argument("--states", type=int)
    p.add_argument("--transitions", type=int)
    p.add_argument("--cap", type=int, default=10**6)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("picture", help="pictures and 4-way automata")
    p.add_argument("kind", choices=["product", "convert", "run"])
    p.add_argument("-a", "--automaton", help="4-way automaton file")
    words(p, required=False)
    p.add_argument("--picture", help="picture file")
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_picture)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, TwoTapeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
