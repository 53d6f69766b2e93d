"""Finite rings given by structure constants over a direct sum of cyclic groups.

An element is a coefficient vector ``(c_1, ..., c_k)`` with ``0 <= c_l < n_l``.
Elements are numbered by their mixed-radix index (coordinate 1 is the least
significant digit), and every set-valued result in this package is a boolean
membership array over those indices.
"""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

DENSE_THRESHOLD = 4096
DEFAULT_ENUM_BOUND = 64


class RingError(ValueError):
    """Base class for invalid ring definitions."""


class CoefficientOutOfRange(RingError):
    pass


class NotWellDefined(RingError):
    def __init__(self, i: int, j: int, l: int, msg: str):
        super().__init__(msg)
        self.triple = (i, j, l)


class NotAssociative(RingError):
    def __init__(self, i: int, j: int, l: int, msg: str):
        super().__init__(msg)
        self.triple = (i, j, l)


class NotASubring(ValueError):
    pass


class EnumerationBoundExceeded(ValueError):
    pass


class EnumerationTruncated(UserWarning):
    pass


@dataclass(frozen=True)
class RingSpec:
    name: str
    orders: tuple[int, ...]
    structure_constants: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        object.__setattr__(
            self,
            "structure_constants",
            tuple(tuple(tuple(int(c) for c in vec) for vec in row) for row in self.structure_constants),
        )

    @property
    def k(self) -> int:
        return len(self.orders)

    @classmethod
    def from_array(cls, name: str, orders: Sequence[int], consts) -> "RingSpec":
        arr = np.asarray(consts, dtype=np.int64)
        return cls(name, tuple(orders), tuple(tuple(tuple(v) for v in row) for row in arr.tolist()))

    def constants_array(self) -> np.ndarray:
        k = self.k
        if k == 0:
            return np.zeros((0, 0, 0), dtype=np.int64)
        return np.asarray(self.structure_constants, dtype=np.int64).reshape(k, k, k)


@dataclass(frozen=True)
class Element:
    coeffs: tuple[int, ...]
    index: int

    def __str__(self):
        return "[" + " ".join(str(c) for c in self.coeffs) + "]"


def _bilinear(consts: np.ndarray, orders: np.ndarray, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Coefficient vectors of all products ``X[a] * Y[b]``, shape ``(a, b, k)``."""
    XC = np.einsum("ai,ijl->ajl", X, consts)
    return np.einsum("ajl,bj->abl", XC, Y) % orders


def _validate(spec: RingSpec) -> np.ndarray:
    k = spec.k
    orders = np.asarray(spec.orders, dtype=np.int64)
    if any(n < 1 for n in spec.orders):
        raise RingError(f"{spec.name}: cyclic orders must be >= 1, got {spec.orders}")
    if len(spec.structure_constants) != k or any(len(row) != k for row in spec.structure_constants):
        raise RingError(f"{spec.name}: structure constant table must be {k}x{k}")
    for i, row in enumerate(spec.structure_constants):
        for j, vec in enumerate(row):
            if len(vec) != k:
                raise RingError(f"{spec.name}: product e{i + 1}*e{j + 1} must have {k} coefficients")
            for l, c in enumerate(vec):
                if not 0 <= c < spec.orders[l]:
                    raise CoefficientOutOfRange(
                        f"{spec.name}: coefficient {c} of e{l + 1} in e{i + 1}*e{j + 1} "
                        f"is outside [0, {spec.orders[l]})"
                    )
    consts = spec.constants_array()
    for i, j, l in itertools.product(range(k), repeat=3):
        c = consts[i, j, l]
        n_i, n_j, n_l = spec.orders[i], spec.orders[j], spec.orders[l]
        if (n_i * c) % n_l or (n_j * c) % n_l:
            raise NotWellDefined(
                i + 1, j + 1, l + 1,
                f"{spec.name}: e{i + 1}*e{j + 1} has coefficient {c} on e{l + 1}, "
                f"incompatible with orders {n_i}, {n_j}, {n_l}",
            )
    # both association orders are trilinear, so generator triples suffice
    eye = np.eye(k, dtype=np.int64)
    prods = _bilinear(consts, orders, eye, eye)
    for i, j, l in itertools.product(range(k), repeat=3):
        left = _bilinear(consts, orders, prods[i, j][None, :], eye[l][None, :])[0, 0]
        right = _bilinear(consts, orders, eye[i][None, :], prods[j, l][None, :])[0, 0]
        if not np.array_equal(left, right):
            raise NotAssociative(
                i + 1, j + 1, l + 1,
                f"{spec.name}: (e{i + 1}e{j + 1})e{l + 1} = {left.tolist()} "
                f"but e{i + 1}(e{j + 1}e{l + 1}) = {right.tolist()}",
            )
    return consts


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Ring:
    """A validated finite ring. Use :func:`build_ring` to construct one."""

    def __init__(self, spec: RingSpec, dense_threshold: int = DENSE_THRESHOLD):
        self.spec = spec
        self.consts = _readonly(_validate(spec))
        self.orders = _readonly(np.asarray(spec.orders, dtype=np.int64))
        self.size = int(np.prod(self.orders)) if spec.k else 1
        w = np.ones(spec.k, dtype=np.int64)
        for l in range(1, spec.k):
            w[l] = w[l - 1] * self.orders[l - 1]
        self.weights = _readonly(w)
        idx = np.arange(self.size, dtype=np.int64)
        self.coeffs = _readonly((idx[:, None] // w[None, :]) % self.orders[None, :])
        self.neg = _readonly(self.encode(-self.coeffs))
        self.dense = self.size <= dense_threshold
        self.mul_table = None
        self.add_table = None
        if self.dense:
            self.add_table = _readonly(self.encode(self.coeffs[:, None, :] + self.coeffs[None, :, :]))
            self.mul_table = _readonly(self.encode(_bilinear(self.consts, self.orders, self.coeffs, self.coeffs)))
        # derived-data cache keyed by subring keys; values are never mutated
        self._cache: dict = {}

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def k(self) -> int:
        return self.spec.k

    def __repr__(self):
        return f"Ring({self.name!r}, orders={list(self.spec.orders)}, size={self.size})"

    def encode(self, coeffs) -> np.ndarray | int:
        c = np.asarray(coeffs, dtype=np.int64) % self.orders
        out = c @ self.weights if self.k else np.zeros(c.shape[:-1], dtype=np.int64)
        return int(out) if np.ndim(out) == 0 else out

    def element(self, value) -> Element:
        """Element from an index or a coefficient vector."""
        if isinstance(value, Element):
            return value
        if isinstance(value, (int, np.integer)):
            i = int(value)
            if not 0 <= i < self.size:
                raise IndexError(f"element index {i} out of range for {self.name}")
        else:
            vec = [int(c) for c in value]
            if len(vec) != self.k:
                raise ValueError(f"{self.name} elements have {self.k} coefficients, got {len(vec)}")
            i = self.encode(vec)
        return Element(tuple(int(c) for c in self.coeffs[i]), i)

    def elements(self) -> list[Element]:
        return [self.element(i) for i in range(self.size)]

    @property
    def zero(self) -> Element:
        return self.element(0)

    def generator(self, i: int) -> Element:
        """The i-th additive generator (0-based)."""
        vec = [0] * self.k
        vec[i] = 1
        return self.element(vec)

    # Index-level arithmetic; arguments may be ints or broadcastable arrays.
    def add(self, a, b):
        if self.add_table is not None:
            return self.add_table[a, b]
        return self.encode(self.coeffs[a] + self.coeffs[b])

    def sub(self, a, b):
        return self.add(a, self.neg[b])

    def mul(self, a, b):
        if self.mul_table is not None:
            return self.mul_table[a, b]
        a_arr, b_arr = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        X = self.coeffs[a_arr.ravel()]
        Y = self.coeffs[b_arr.ravel()]
        prod = np.einsum("ni,nj,ijl->nl", X, Y, self.consts) % self.orders
        out = self.encode(prod).reshape(a_arr.shape)
        return int(out) if out.ndim == 0 else out

    def commutator(self, a, b):
        return self.sub(self.mul(a, b), self.mul(b, a))

    @cached_property
    def comm_table(self) -> np.ndarray:
        """``comm_table[x, y]`` is the index of ``xy - yx``."""
        idx = np.arange(self.size)
        return _readonly(np.asarray(self.commutator(idx[:, None], idx[None, :])))

    @cached_property
    def is_commutative(self) -> bool:
        return not self.comm_table.any()

    def full(self) -> "Subring":
        if "full" not in self._cache:
            self._cache["full"] = Subring(self, np.ones(self.size, dtype=bool))
        return self._cache["full"]

    def zero_subring(self) -> "Subring":
        return Subring(self, _zero_mask(self))


def _zero_mask(R: Ring) -> np.ndarray:
    m = np.zeros(R.size, dtype=bool)
    m[0] = True
    return m


@dataclass(frozen=True, eq=False)
class Subring:
    """An additively and multiplicatively closed subset of ``parent``.

    Construction does not re-check closure; use :func:`make_subring` or
    :func:`subring_closure` for validated instances.
    """

    parent: Ring
    members: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.members, dtype=bool)
        if m.shape != (self.parent.size,):
            raise ValueError("membership array does not match parent ring size")
        object.__setattr__(self, "members", _readonly(m))

    @cached_property
    def count(self) -> int:
        return int(self.members.sum())

    def __len__(self):
        return self.count

    @cached_property
    def indices(self) -> np.ndarray:
        return _readonly(np.flatnonzero(self.members))

    @cached_property
    def key(self) -> bytes:
        return np.packbits(self.members).tobytes()

    def __contains__(self, x) -> bool:
        i = x.index if isinstance(x, Element) else int(x)
        return bool(self.members[i])

    def __eq__(self, other):
        if not isinstance(other, Subring):
            return NotImplemented
        return self.parent is other.parent and self.key == other.key

    def __hash__(self):
        return hash((id(self.parent), self.key))

    def issubset(self, other: "Subring") -> bool:
        return self.parent is other.parent and not (self.members & ~other.members).any()

    @property
    def is_full(self) -> bool:
        return self.count == self.parent.size

    def __repr__(self):
        return f"Subring(of {self.parent.name}, size={self.count})"


def as_subring(T: Ring | Subring) -> Subring:
    return T.full() if isinstance(T, Ring) else T


def build_ring(spec: RingSpec, dense_threshold: int = DENSE_THRESHOLD) -> Ring:
    """Validate ``spec`` and return the ring it presents.

    Raises CoefficientOutOfRange, NotWellDefined or NotAssociative.
    """
    return Ring(spec, dense_threshold=dense_threshold)


def ring_zn(n: int) -> Ring:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return build_ring(RingSpec("Z1", (), ()))
    return build_ring(RingSpec(f"Z{n}", (n,), (((1 % n,),),)))


def _matrix_units(n: int, d: int, keep) -> Ring:
    units = [(p, q) for p in range(d) for q in range(d) if keep(p, q)]
    pos = {u: i for i, u in enumerate(units)}
    k = len(units)
    consts = np.zeros((k, k, k), dtype=np.int64)
    for (p, q), (r, s) in itertools.product(units, repeat=2):
        if q == r and (p, s) in pos:
            consts[pos[(p, q)], pos[(r, s)], pos[(p, s)]] = 1
    return consts, units


def matrix_ring(n: int, d: int) -> Ring:
    """d x d matrices over Z_n; generator order E_11, E_12, ..., E_dd (row-major)."""
    if n < 2 or d < 1:
        raise ValueError("matrix_ring needs n >= 2 and d >= 1")
    consts, units = _matrix_units(n, d, lambda p, q: True)
    return build_ring(RingSpec.from_array(f"M{d}_Z{n}", [n] * len(units), consts))


def upper_triangular_ring(n: int, d: int) -> Ring:
    """Upper-triangular d x d matrices over Z_n; generators E_pq, p <= q, row-major."""
    if n < 2 or d < 2:
        raise ValueError("upper_triangular_ring needs n >= 2 and d >= 2")
    consts, units = _matrix_units(n, d, lambda p, q: p <= q)
    return build_ring(RingSpec.from_array(f"T{d}_Z{n}", [n] * len(units), consts))


def strictly_upper_triangular_ring(n: int, d: int) -> Ring:
    """Strictly upper-triangular d x d matrices over Z_n (no identity)."""
    if n < 2 or d < 2:
        raise ValueError("strictly_upper_triangular_ring needs n >= 2 and d >= 2")
    consts, units = _matrix_units(n, d, lambda p, q: p < q)
    return build_ring(RingSpec.from_array(f"N{d}_Z{n}", [n] * len(units), consts))


def matrix_unit_index(d: int, p: int, q: int, upper: bool = False, strict: bool = False) -> int:
    """Generator position of E_pq (1-based p, q) in the matrix ring constructors."""
    if strict:
        units = [(a, b) for a in range(1, d + 1) for b in range(1, d + 1) if a < b]
    elif upper:
        units = [(a, b) for a in range(1, d + 1) for b in range(1, d + 1) if a <= b]
    else:
        units = [(a, b) for a in range(1, d + 1) for b in range(1, d + 1)]
    return units.index((p, q))


def direct_product(R1: Ring, R2: Ring, name: str | None = None) -> Ring:
    """Componentwise product. Index of ``(x1, x2)`` is ``x1 + |R1| * x2``."""
    k1, k2 = R1.k, R2.k
    k = k1 + k2
    consts = np.zeros((k, k, k), dtype=np.int64)
    consts[:k1, :k1, :k1] = R1.consts
    consts[k1:, k1:, k1:] = R2.consts
    orders = list(R1.spec.orders) + list(R2.spec.orders)
    return build_ring(RingSpec.from_array(name or f"{R1.name}x{R2.name}", orders, consts))


def pair_index(R1: Ring, x1: int, x2: int) -> int:
    return int(x1) + R1.size * int(x2)


def product_subring(S1: Subring, S2: Subring, R12: Ring) -> Subring:
    """S1 x S2 inside ``R12 = direct_product(S1.parent, S2.parent)``."""
    if R12.size != S1.parent.size * S2.parent.size:
        raise ValueError("R12 is not the product of the parents")
    return Subring(R12, np.outer(S2.members, S1.members).ravel())


# Element-level arithmetic

def elem_add(R: Ring, x: Element, y: Element) -> Element:
    return R.element(R.add(x.index, y.index))


def elem_neg(R: Ring, x: Element) -> Element:
    return R.element(int(R.neg[x.index]))


def elem_mul(R: Ring, x: Element, y: Element) -> Element:
    return R.element(R.mul(x.index, y.index))


def elem_commutator(R: Ring, x: Element, y: Element) -> Element:
    return R.element(R.commutator(x.index, y.index))


# Subrings

def _close(R: Ring, mask: np.ndarray) -> np.ndarray:
    mask = mask.copy()
    mask[0] = True
    while True:
        idx = np.flatnonzero(mask)
        new = mask.copy()
        new[R.neg[idx]] = True
        new[np.ravel(R.add(idx[:, None], idx[None, :]))] = True
        new[np.ravel(R.mul(idx[:, None], idx[None, :]))] = True
        if np.array_equal(new, mask):
            return mask
        mask = new


def _mask_of(R: Ring, items: Iterable) -> np.ndarray:
    mask = np.zeros(R.size, dtype=bool)
    for x in items:
        mask[x.index if isinstance(x, Element) else R.element(x).index] = True
    return mask


def subring_closure(R: Ring, generators: Iterable) -> Subring:
    """Smallest subring of R containing ``generators`` (Elements, indices or vectors)."""
    return Subring(R, _close(R, _mask_of(R, generators)))


def is_subring(R: Ring, subset) -> bool:
    mask = np.asarray(subset, dtype=bool) if not isinstance(subset, (set, frozenset, list)) else _mask_of(R, subset)
    if mask.shape != (R.size,) or not mask[0]:
        return False
    idx = np.flatnonzero(mask)
    return bool(
        mask[R.neg[idx]].all()
        and mask[np.ravel(R.add(idx[:, None], idx[None, :]))].all()
        and mask[np.ravel(R.mul(idx[:, None], idx[None, :]))].all()
    )


def make_subring(R: Ring, subset) -> Subring:
    """Validated Subring from a membership array or a collection of elements."""
    mask = np.asarray(subset, dtype=bool) if not isinstance(subset, (set, frozenset, list)) else _mask_of(R, subset)
    if not is_subring(R, mask):
        raise NotASubring(f"subset of {R.name} is not a subring")
    return Subring(R, mask)


def enumerate_subrings(R: Ring, cap: int = 100_000, max_order: int = DEFAULT_ENUM_BOUND) -> list[Subring]:
    """All subrings of R, smallest first, by breadth-first one-element extension.

    Emits an EnumerationTruncated warning if more than ``cap`` subrings exist.
    """
    if R.size > max_order:
        raise EnumerationBoundExceeded(f"{R.name} has {R.size} elements > bound {max_order}")
    start = Subring(R, _close(R, _zero_mask(R)))
    seen = {start.key: start}
    queue = deque([start])
    truncated = False
    while queue and not truncated:
        S = queue.popleft()
        for g in np.flatnonzero(~S.members):
            mask = S.members.copy()
            mask[g] = True
            T = Subring(R, _close(R, mask))
            if T.key not in seen:
                if len(seen) >= cap:
                    truncated = True
                    break
                seen[T.key] = T
                queue.append(T)
    if truncated:
        warnings.warn(f"subring enumeration of {R.name} stopped at cap={cap}", EnumerationTruncated)
    return sorted(seen.values(), key=lambda S: (S.count, S.indices.tolist()))


def additive_index(R: Ring, S: Subring) -> int:
    q, rem = divmod(R.size, S.count)
    if rem:
        raise NotASubring(f"|S| = {S.count} does not divide |R| = {R.size}")
    return q
