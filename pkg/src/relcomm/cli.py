"""Command-line entry point: ``relcomm <command> [options]``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bounds import bound_report
from .catalog import catalog, get_ring, named_subring
from .commutators import commutator_subgroup, relative_center
from .isoclinism import build_product_isoclinism, parse_witness, theorem41_check, verify_isoclinism
from .probability import ACCELERATED, ORACLE, pr_brute, pr_distribution
from .ring import DEFAULT_ENUM_BOUND, Element, Ring, Subring, ring_zn
from .ringfile import RingFileError, load_ring_file
from .verify import CLAIMS, build_corpus, run_suite


def fmt_element(e: Element) -> str:
    return str(e)


def parse_vector(text: str) -> list[int]:
    return [int(t) for t in text.replace("[", " ").replace("]", " ").replace(",", " ").split()]


class Context:
    def __init__(self, files: list[str]):
        self.files = [load_ring_file(f) for f in files]

    def ring(self, name: str) -> Ring:
        for rf in self.files:
            if name in rf.rings:
                return rf.rings[name]
        return get_ring(name)

    def subring(self, R: Ring, name: str | None) -> Subring:
        if name is None:
            return R.full()
        for rf in self.files:
            decl = rf.subrings.get(name)
            if decl is not None and decl.ring == R.name:
                return decl.subring
        return named_subring(R, name)


def _mode(args) -> str:
    return ORACLE if args.oracle else ACCELERATED


def cmd_catalog(args, out) -> int:
    for R in catalog():
        comm = "yes" if R.is_commutative else "no"
        print(f"{R.name} size={R.size} orders={' '.join(map(str, R.spec.orders)) or '-'} commutative={comm}", file=out)
    return 0


def cmd_table(args, out) -> int:
    ctx = Context(args.file)
    R = ctx.ring(args.ring)
    S = ctx.subring(R, args.subring)
    for e, p in pr_distribution(S, R, _mode(args)):
        print(f"{fmt_element(e)};{p.numerator};{p.denominator}", file=out)
    return 0


def cmd_pr(args, out) -> int:
    ctx = Context(args.file)
    R = ctx.ring(args.ring)
    S = ctx.subring(R, args.subring)
    r = R.element(parse_vector(args.r)) if args.r else R.zero
    p = pr_brute(S, R, r, _mode(args))
    print(f"{fmt_element(r)};{p.numerator};{p.denominator}", file=out)
    return 0


def cmd_bounds(args, out) -> int:
    ctx = Context(args.file)
    R = ctx.ring(args.ring)
    S = ctx.subring(R, args.subring)
    r = R.element(parse_vector(args.r)) if args.r else R.zero
    rep = bound_report(S, R, r, _mode(args))
    print(f"exact;{rep.exact}", file=out)
    print(f"p_min;{rep.p_min};m_S;{rep.m_S};M_S;{rep.M_S};|Z(S,R)|;{rep.center_size};|K(S,R)|;{rep.commutator_set_size}",
          file=out)
    for b in rep.bounds:
        value = "vacuous" if b.vacuous else str(b.value)
        print(f"{b.name};{b.side};{value};holds={'yes' if b.holds else 'no'};tight={'yes' if b.tight else 'no'}", file=out)
    return 0 if rep.all_hold else 1


def cmd_witness(args, out) -> int:
    ctx = Context(args.file)
    R = ctx.ring(args.ring)
    S = ctx.subring(R, args.subring)
    A = ctx.ring(args.factor)
    w = build_product_isoclinism(S, R, A)
    report = verify_isoclinism(w)
    text = w.serialize()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    print(report, file=out)
    if report.passed:
        for r in commutator_subgroup(S, R).indices:
            p1, p2 = theorem41_check(w, r, _mode(args), report=report)
            print(f"{fmt_element(R.element(r))};{p1};{fmt_element(w.R2.element(w.beta[int(r)]))};{p2}", file=out)
    return 0 if report.passed else 1


def cmd_check_witness(args, out) -> int:
    ctx = Context(args.file)
    R1, R2 = ctx.ring(args.ring), ctx.ring(args.ring2)
    S1, S2 = ctx.subring(R1, args.subring), ctx.subring(R2, args.subring2)
    w = parse_witness(Path(args.witness).read_text(encoding="utf-8"), S1, S2)
    report = verify_isoclinism(w)
    print(report, file=out)
    return 0 if report.passed else 1


def cmd_verify(args, out) -> int:
    if not args.all and not args.claim:
        print("verify: pass --all or --claim <id>", file=sys.stderr)
        return 2
    corpus = build_corpus(args.file, max_enum=args.max_enum, mode=ORACLE)
    claims = None if args.all else args.claim
    result = run_suite(claims, corpus, threads=args.threads)
    for line in result.lines():
        print(line, file=out)
    print(f"wall-time {result.wall_time:.2f}s", file=sys.stderr)
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="relcomm", description="Relative commuting probabilities of finite rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ring=True):
        p.add_argument("--file", action="append", default=[], help="ring definition file (repeatable)")
        p.add_argument("--oracle", action="store_true", help="count every pair explicitly")
        if ring:
            p.add_argument("--ring", required=True)
            p.add_argument("--subring", default=None, help="zero, full, center, a builtin name or a file subring")

    sub.add_parser("catalog", help="list builtin rings").set_defaults(func=cmd_catalog)

    p = sub.add_parser("table", help="distribution of commutator values as CSV")
    common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("pr", help="a single probability")
    common(p)
    p.add_argument("--r", default=None, help="target coefficient vector, e.g. '0 1 0'")
    p.set_defaults(func=cmd_pr)

    p = sub.add_parser("bounds", help="evaluate every bound on one instance")
    common(p)
    p.add_argument("--r", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("witness", help="product isoclinism witness for (S, R) and (S x A, R x A)")
    common(p)
    p.add_argument("--factor", default="Z2", help="commutative ring A")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("check-witness", help="verify a serialized witness")
    common(p)
    p.add_argument("--ring2", required=True)
    p.add_argument("--subring2", default=None)
    p.add_argument("--witness", required=True)
    p.set_defaults(func=cmd_check_witness)

    p = sub.add_parser("verify", help="run the claim verification suite")
    common(p, ring=False)
    p.add_argument("--all", action="store_true")
    p.add_argument("--claim", action="append", choices=list(CLAIMS))
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-enum", type=int, default=DEFAULT_ENUM_BOUND)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    try:
        return args.func(args, out)
    except (RingFileError, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
