"""Run every claim over the catalog and write a per-claim summary.

    python3 scripts/run_verification.py --threads 4 --out results/verify.tsv
"""

import argparse
import sys
from pathlib import Path

from relcomm.verify import CLAIMS, build_corpus, run_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--max-enum", type=int, default=64)
    ap.add_argument("--file", action="append", default=[], help="extra ring file")
    ap.add_argument("--out", type=Path, help="write the full record list here")
    args = ap.parse_args()

    corpus = build_corpus(args.file, max_enum=args.max_enum)
    result = run_suite(list(CLAIMS), corpus, threads=args.threads)

    width = max(map(len, CLAIMS))
    for claim, (n, failed) in result.summary().items():
        print(f"{claim:<{width}}  instances={n:<5} failures={failed}")
    print(f"wall time {result.wall_time:.1f}s", file=sys.stderr)

    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text("\n".join(result.lines()) + "\n")
    return 0 if result.passed else 1


if __name__ == "__main__":
    sys.exit(main())
