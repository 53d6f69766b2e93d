"""Upper and lower bounds for Pr_r(S, R), evaluated exactly on concrete instances."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .commutators import _idx, commutator_set, image_matrix, relative_center
from .probability import ORACLE, pr_brute
from .ring import Ring, Subring, additive_index, as_subring

LOWER, UPPER = "lower", "upper"


class DegenerateCenter(ValueError):
    """Raised when S = Z(S, R), so the image-size extremes are undefined."""


class NotNested(ValueError):
    pass


def smallest_prime_divisor(n: int) -> int:
    if n < 2:
        raise ValueError("n must be >= 2")
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def m_and_M(S, R) -> tuple[int, int]:
    """Min and max of ``|[x, R]|`` over x in S outside Z(S, R)."""
    S, T = as_subring(S), as_subring(R)
    Z = relative_center(S, T)
    outside = S.members & ~Z.members
    if not outside.any():
        raise DegenerateCenter("S = Z(S, R)")
    sizes = image_matrix(T)[outside].sum(axis=1)
    return int(sizes.min()), int(sizes.max())


def image_bound(t: int, c: Fraction | int) -> Fraction:
    """``(1/t) * (1 + (t - 1)/c)``; decreasing in t for c > 1."""
    return Fraction(1, t) * (1 + Fraction(t - 1) / c)


@dataclass(frozen=True)
class Bound:
    name: str
    side: str
    value: Fraction | None
    holds: bool
    tight: bool
    vacuous: bool = False
    note: str = ""


@dataclass
class BoundReport:
    ring: str
    subring_size: int
    r: int
    exact: Fraction
    p_min: int | None
    m_S: int | None
    M_S: int | None
    center_size: int
    commutator_set_size: int
    bounds: list[Bound] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return all(b.holds for b in self.bounds)

    def failures(self) -> list[Bound]:
        return [b for b in self.bounds if not b.holds]


def _compare(name, side, value, exact, extra_ok=True, note="") -> Bound:
    ok = value >= exact if side == UPPER else value <= exact
    return Bound(name, side, value, bool(ok and extra_ok), value == exact, note=note)


def bound_report(S, R, r, mode: str = ORACLE) -> BoundReport:
    """Evaluate every applicable bound for Pr_r(S, R).

    ``R`` must be the whole ring (not a proper subring); bounds that need
    ``S != Z(S, R)`` are marked vacuous when S is central.
    """
    if isinstance(R, Subring):
        if not R.is_full:
            raise ValueError("bound_report expects R to be the ambient ring")
        R = R.parent
    S = as_subring(S)
    full = R.full()
    ri = _idx(r)
    exact = pr_brute(S, full, ri, mode)
    Z = relative_center(S, full)
    K = int(commutator_set(S, full).sum())
    p = smallest_prime_divisor(R.size) if R.size >= 2 else None
    try:
        m, M = m_and_M(S, full)
    except DegenerateCenter:
        m = M = None
    rep = BoundReport(R.name, S.count, ri, exact, p, m, M, Z.count, K)
    c = Fraction(S.count, Z.count)
    zero_pr = pr_brute(S, full, 0, mode)
    add = rep.bounds.append

    if ri != 0 and p is not None:
        v = Fraction(S.count - Z.count, p * S.count)
        add(_compare("noncentral-over-p", UPPER, v, exact, extra_ok=v < Fraction(1, p)))
        add(_compare("one-over-p", UPPER, Fraction(1, p), exact, extra_ok=exact < Fraction(1, p)))

    # Pr_r <= Pr_0, with equality only at r = 0
    add(_compare("target-zero", UPPER, zero_pr, exact, extra_ok=(zero_pr == exact) == (ri == 0)))

    full_pr = pr_brute(full, full, ri, mode)
    idx = additive_index(R, S)
    add(_compare("index-times-full", UPPER, idx * full_pr, exact))

    if ri == 0:
        add(_compare("prior-upper", UPPER, Fraction((p - 1) * Z.count + S.count, p * S.count), exact)
            if p is not None else Bound("prior-upper", UPPER, None, True, False, vacuous=True))
        prior_lower = image_bound(K, c)
        add(_compare("prior-lower", LOWER, prior_lower, exact))
        if m is None:
            for name, side in (("image-lower", LOWER), ("image-upper", UPPER)):
                add(Bound(name, side, None, exact == 1, False, vacuous=True, note="S = Z(S,R)"))
        else:
            lo, hi = image_bound(M, c), image_bound(m, c)
            equal = m == M
            # either side is tight exactly when m_S = M_S
            add(_compare("image-lower", LOWER, lo, exact, extra_ok=(lo == exact) == equal))
            add(_compare("image-upper", UPPER, hi, exact, extra_ok=(hi == exact) == equal))
            add(Bound("image-lower-vs-prior", LOWER, lo, lo >= prior_lower and K >= M, lo == prior_lower))
            prior_hi = Fraction((p - 1) * Z.count + S.count, p * S.count)
            add(Bound("image-upper-vs-prior", UPPER, hi, hi <= prior_hi and p <= m, hi == prior_hi))
            if S.is_full:
                # whole-ring case: upper bound uses m_R throughout
                add(_compare("ring-image-lower", LOWER, image_bound(M, c), exact))
                add(_compare("ring-image-upper", UPPER, image_bound(m, c), exact))
    return rep


def monotonicity_check(S1: Subring, S2: Subring, R, r, mode: str = ORACLE) -> tuple[Fraction, Fraction, bool]:
    """``Pr_r(S1, R)`` and ``|S2 : S1| Pr_r(S2, R)`` for nested S1 <= S2.

    The flag is true when left <= right and equality occurs exactly when no
    x in S2 outside S1 has r in ``[x, R]``.
    """
    if not S1.issubset(S2):
        raise NotNested("S1 is not contained in S2")
    T = as_subring(R)
    ri = _idx(r)
    left = pr_brute(S1, T, ri, mode)
    right = Fraction(S2.count, S1.count) * pr_brute(S2, T, ri, mode)
    outside = S2.members & ~S1.members
    predicted_equal = not image_matrix(T)[outside, ri].any()
    return left, right, bool(left <= right and (left == right) == predicted_equal)


def inequality_family_check(n: int, m: int, c: int) -> bool:
    """``image_bound(n, c) >= image_bound(m, c)`` for m >= n, with equality iff m = n or c = 1."""
    a, b = image_bound(n, c), image_bound(m, c)
    return a >= b and (a == b) == (m == n or c == 1)


__all__ = [
    "Bound",
    "BoundReport",
    "DegenerateCenter",
    "NotNested",
    "bound_report",
    "image_bound",
    "inequality_family_check",
    "m_and_M",
    "monotonicity_check",
    "smallest_prime_divisor",
]
