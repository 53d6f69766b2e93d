"""Exact relative commuting probabilities Pr_r(S, R).

Three independent routes are provided:

* :func:`pr_brute` counts pairs ``(x, y)`` in ``S x R`` with ``[x, y] = r``.
  In ``"oracle"`` mode commutators are recomputed from the structure constants
  by bilinear expansion, bypassing the cached tables used elsewhere.
* :func:`pr_centralizer_formula` sums ``|C_R(x)|`` over x in S with r in ``[x, R]``.
* :func:`pr_image_formula` sums ``1/|[x, R]|`` over the same x, with image
  sizes counted directly rather than derived from centralizers.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .commutators import (
    _idx,
    centralizer_sizes,
    commutator_subgroup,
    image_matrix,
    relative_center,
)
from .ring import Element, Ring, Subring, _bilinear, as_subring

Rational = Fraction

ORACLE = "oracle"
ACCELERATED = "accelerated"
_CHUNK = 128


class NotPrimeOrder(ValueError):
    pass


def _check_pair(S: Subring, T: Subring) -> None:
    if S.parent is not T.parent:
        raise ValueError("S and R must live in the same parent ring")


def _oracle_counts(S: Subring, T: Subring) -> np.ndarray:
    """Number of pairs in S x T with commutator r, for every r; pairs enumerated exhaustively."""
    P = S.parent
    key = ("pairs", S.key, T.key)
    if key in P._cache:
        return P._cache[key]
    counts = np.zeros(P.size, dtype=np.int64)
    if P.k == 0:
        counts[0] = S.count * T.count
    else:
        consts, orders = P.consts, P.orders
        Y = P.coeffs[T.indices]
        for start in range(0, S.count, _CHUNK):
            X = P.coeffs[S.indices[start:start + _CHUNK]]
            xy = _bilinear(consts, orders, X, Y)
            yx = _bilinear(consts, orders, Y, X).transpose(1, 0, 2)
            comm = ((xy - yx) % orders) @ P.weights
            counts += np.bincount(comm.ravel(), minlength=P.size)
    counts.setflags(write=False)
    P._cache[key] = counts
    return counts


def _accelerated_counts(S: Subring, T: Subring) -> np.ndarray:
    """Pair counts via solution-set sizes: each nonempty ``{y : [x, y] = r}`` has ``|C_R(x)|`` elements."""
    im = image_matrix(T)[S.indices]
    cs = centralizer_sizes(T)[S.indices]
    return (im * cs[:, None]).sum(axis=0)


def pair_counts(S, R, mode: str = ORACLE) -> np.ndarray:
    S, T = as_subring(S), as_subring(R)
    _check_pair(S, T)
    if mode == ORACLE:
        return _oracle_counts(S, T)
    if mode == ACCELERATED:
        return _accelerated_counts(S, T)
    raise ValueError(f"unknown mode {mode!r}")


def pr_brute(S, R, r, mode: str = ORACLE) -> Fraction:
    """Fraction of pairs (x, y) in S x R with xy - yx = r."""
    S, T = as_subring(S), as_subring(R)
    return Fraction(int(pair_counts(S, T, mode)[_idx(r)]), S.count * T.count)


def pr_centralizer_formula(S, R, r) -> Fraction:
    S, T = as_subring(S), as_subring(R)
    _check_pair(S, T)
    hit = image_matrix(T)[S.indices, _idx(r)]
    total = int(centralizer_sizes(T)[S.indices][hit].sum())
    return Fraction(total, S.count * T.count)


def _image_sizes(T: Subring) -> np.ndarray:
    P = T.parent
    key = ("isize", T.key)
    if key not in P._cache:
        P._cache[key] = image_matrix(T).sum(axis=1)
    return P._cache[key]


def pr_image_formula(S, R, r) -> Fraction:
    S, T = as_subring(S), as_subring(R)
    _check_pair(S, T)
    hit = image_matrix(T)[S.indices, _idx(r)]
    sizes = Counter(int(s) for s in _image_sizes(T)[S.indices][hit])
    if not sizes:
        return Fraction(0)
    L = lcm(*sizes)
    return Fraction(sum(c * (L // s) for s, c in sizes.items()), L * S.count)


@dataclass(frozen=True)
class Distribution:
    """The map r -> Pr_r(S, R) restricted to its support, in index order."""

    pairs: tuple[tuple[Element, Fraction], ...]

    def support(self) -> list[int]:
        return [e.index for e, _ in self.pairs]

    def total(self) -> Fraction:
        return sum((p for _, p in self.pairs), Fraction(0))

    def as_dict(self) -> dict[int, Fraction]:
        return {e.index: p for e, p in self.pairs}

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def pr_distribution(S, R, mode: str = ORACLE) -> Distribution:
    S, T = as_subring(S), as_subring(R)
    counts = pair_counts(S, T, mode)
    denom = S.count * T.count
    P = S.parent
    return Distribution(tuple((P.element(int(i)), Fraction(int(counts[i]), denom)) for i in np.flatnonzero(counts)))


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def pr_prime_case(S, R, r) -> Fraction:
    """Closed form valid when the commutator subgroup ``[S, R]`` has prime order p."""
    S, T = as_subring(S), as_subring(R)
    p = commutator_subgroup(S, T).count
    if not _is_prime(p):
        raise NotPrimeOrder(f"|[S,R]| = {p} is not prime")
    Z = relative_center(S, T)
    idx = Fraction(S.count, Z.count)
    if _idx(r) == 0:
        return Fraction(1, p) * (1 + (p - 1) / idx)
    if _idx(r) not in commutator_subgroup(S, T):
        return Fraction(0)
    return Fraction(1, p) * (1 - 1 / idx)


def relative_index(S: Subring, Z: Subring) -> int:
    """``|S : Z|`` for nested subrings."""
    q, rem = divmod(S.count, Z.count)
    assert rem == 0
    return q


__all__ = [
    "ACCELERATED",
    "Distribution",
    "NotPrimeOrder",
    "ORACLE",
    "Rational",
    "pair_counts",
    "pr_brute",
    "pr_centralizer_formula",
    "pr_distribution",
    "pr_image_formula",
    "pr_prime_case",
    "relative_index",
]
