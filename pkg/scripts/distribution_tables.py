"""Print the commutator distribution of each designated (S, R) pair, next to
the image-size bounds at r = 0 so the gap between them is visible.

    python3 scripts/distribution_tables.py --ring M2_Z2 --ring T2_Z3
"""

import argparse

from relcomm.bounds import DegenerateCenter, image_bound, m_and_M
from relcomm.catalog import CATALOG_NAMES, designated_subrings, get_ring
from relcomm.commutators import relative_center
from relcomm.probability import pr_distribution


def describe(R, label, S):
    d = pr_distribution(S, R)
    print(f"{R.name} / {label}  |S|={S.count}  support={len(d.support())}")
    for elem, p in d:
        print(f"  {elem}  {p}")
    try:
        m, M = m_and_M(S, R)
    except DegenerateCenter:
        print("  S is central, distribution is a point mass")
        return
    idx = S.count // relative_center(S, R).count
    lo, hi = image_bound(M, idx), image_bound(m, idx)
    print(f"  m_S={m} M_S={M} |S:Z|={idx}  {lo} <= {d.as_dict().get(0, 0)} <= {hi}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--ring", action="append", choices=CATALOG_NAMES)
    args = ap.parse_args()
    for name in args.ring or ["T2_Z2", "M2_Z2", "T2_Z3", "N3_Z2"]:
        R = get_ring(name)
        for label, S in designated_subrings(R):
            describe(R, label, S)
        print()


if __name__ == "__main__":
    main()
