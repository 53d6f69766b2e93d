"""Centralizers, relative centers, commutator sets and additive quotients."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .ring import Element, Ring, Subring, _readonly, as_subring


class NotASubgroup(ValueError):
    pass


def _idx(x) -> int:
    return x.index if isinstance(x, Element) else int(x)


@dataclass(frozen=True, eq=False)
class AdditiveSubgroup:
    parent: Ring
    members: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.members, dtype=bool)
        object.__setattr__(self, "members", _readonly(m))
        if not is_additive_subgroup(self.parent, m):
            raise NotASubgroup(f"subset of {self.parent.name} is not an additive subgroup")

    @cached_property
    def count(self) -> int:
        return int(self.members.sum())

    def __len__(self):
        return self.count

    @cached_property
    def indices(self) -> np.ndarray:
        return _readonly(np.flatnonzero(self.members))

    def __contains__(self, x) -> bool:
        return bool(self.members[_idx(x)])

    def __eq__(self, other):
        if not isinstance(other, (AdditiveSubgroup, Subring)):
            return NotImplemented
        return self.parent is other.parent and np.array_equal(self.members, other.members)

    __hash__ = None


def is_additive_subgroup(R: Ring, mask: np.ndarray) -> bool:
    if mask.shape != (R.size,) or not mask[0]:
        return False
    idx = np.flatnonzero(mask)
    return bool(mask[R.neg[idx]].all() and mask[np.ravel(R.add(idx[:, None], idx[None, :]))].all())


def additive_closure(R: Ring, mask: np.ndarray) -> np.ndarray:
    """Membership array of the additive subgroup generated by ``mask``."""
    out = np.asarray(mask, dtype=bool).copy()
    out[0] = True
    gens = np.flatnonzero(out)
    while True:
        idx = np.flatnonzero(out)
        new = out.copy()
        new[np.ravel(R.add(idx[:, None], gens[None, :]))] = True
        if np.array_equal(new, out):
            return out
        out = new


def _rows(R: Ring, xs: np.ndarray) -> np.ndarray:
    """Commutator rows ``[x, y]`` for every x in ``xs`` and every y in R."""
    if R.dense:
        return R.comm_table[xs]
    all_y = np.arange(R.size)
    return np.asarray(R.commutator(np.asarray(xs)[:, None], all_y[None, :]))


def centralizer(T: Ring | Subring, x) -> np.ndarray:
    """Members of T that commute with x."""
    T = as_subring(T)
    row = _rows(T.parent, np.array([_idx(x)]))[0]
    return T.members & (row == 0)


def relative_center(S: Subring, R: Ring | Subring) -> Subring:
    """Elements of S commuting with every element of R."""
    S, T = as_subring(S), as_subring(R)
    key = ("center", S.key, T.key)
    cache = S.parent._cache
    if key not in cache:
        rows = _rows(S.parent, S.indices)[:, T.indices]
        mask = np.zeros(S.parent.size, dtype=bool)
        mask[S.indices[(rows == 0).all(axis=1)]] = True
        cache[key] = Subring(S.parent, mask)
    return cache[key]


def image_matrix(R: Ring | Subring) -> np.ndarray:
    """Boolean matrix whose row x is the membership array of ``[x, R]``."""
    T = as_subring(R)
    P = T.parent
    key = ("image", T.key)
    if key not in P._cache:
        rows = _rows(P, np.arange(P.size))[:, T.indices]
        im = np.zeros((P.size, P.size), dtype=bool)
        im[np.repeat(np.arange(P.size), rows.shape[1]), rows.ravel()] = True
        P._cache[key] = _readonly(im)
    return P._cache[key]


def centralizer_sizes(R: Ring | Subring) -> np.ndarray:
    """``|C_R(x)|`` for every element x of the parent ring."""
    T = as_subring(R)
    P = T.parent
    key = ("csize", T.key)
    if key not in P._cache:
        rows = _rows(P, np.arange(P.size))[:, T.indices]
        P._cache[key] = _readonly((rows == 0).sum(axis=1))
    return P._cache[key]


def commutator_image(R: Ring | Subring, x) -> AdditiveSubgroup:
    """``[x, R] = {[x, y] : y in R}``, checked to be an additive subgroup."""
    T = as_subring(R)
    mask = image_matrix(T)[_idx(x)].copy()
    return AdditiveSubgroup(T.parent, mask)


def commutator_set(S: Subring, R: Ring | Subring) -> np.ndarray:
    """The raw set K(S, R) of commutator values; not closed under + in general."""
    S = as_subring(S)
    return image_matrix(R)[S.indices].any(axis=0)


def commutator_subgroup(S: Subring, R: Ring | Subring) -> AdditiveSubgroup:
    S = as_subring(S)
    return AdditiveSubgroup(S.parent, additive_closure(S.parent, commutator_set(S, R)))


def t_set(S: Subring, R: Ring | Subring, x, r) -> np.ndarray:
    """``{y in R : [x, y] = r}`` for x in S."""
    S, T = as_subring(S), as_subring(R)
    if _idx(x) not in S:
        raise ValueError("x must lie in S")
    row = _rows(S.parent, np.array([_idx(x)]))[0]
    return T.members & (row == _idx(r))


@dataclass(frozen=True, eq=False)
class QuotientGroup:
    """Coset decomposition of ``(R, +)`` by an additive subgroup N.

    ``coset_of[i]`` is the coset number of element i; cosets are numbered in
    order of their representatives, which are the minimal element indices.
    """

    parent: Ring
    subgroup: AdditiveSubgroup
    coset_of: np.ndarray = field(repr=False)
    reps: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.reps)

    def __len__(self):
        return len(self.reps)

    @cached_property
    def cosets(self) -> list[np.ndarray]:
        return [_readonly(self.coset_of == c) for c in range(len(self.reps))]

    def coset(self, x) -> int:
        return int(self.coset_of[_idx(x)])

    def image_of(self, T: Subring) -> np.ndarray:
        """Boolean mask over cosets meeting T."""
        out = np.zeros(len(self.reps), dtype=bool)
        out[self.coset_of[T.indices]] = True
        return out


def quotient_group(R: Ring, N: AdditiveSubgroup | Subring) -> QuotientGroup:
    if isinstance(N, Subring):
        N = AdditiveSubgroup(N.parent, N.members)
    coset_of = np.full(R.size, -1, dtype=np.int64)
    reps = []
    n_idx = N.indices
    for e in range(R.size):
        if coset_of[e] >= 0:
            continue
        coset_of[np.asarray(R.add(e, n_idx))] = len(reps)
        reps.append(e)
    return QuotientGroup(R, N, _readonly(coset_of), tuple(reps))
