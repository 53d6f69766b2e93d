"""Builtin rings and their named subrings."""

from __future__ import annotations

from functools import lru_cache

from .commutators import relative_center
from .ring import (
    Ring,
    Subring,
    direct_product,
    matrix_ring,
    ring_zn,
    strictly_upper_triangular_ring,
    subring_closure,
    upper_triangular_ring,
)


def _builders() -> dict:
    out = {f"Z{n}": (lambda n=n: ring_zn(n)) for n in range(1, 13)}
    for n in (2, 3, 4):
        out[f"M2_Z{n}"] = lambda n=n: matrix_ring(n, 2)
    for n in (2, 3):
        out[f"T2_Z{n}"] = lambda n=n: upper_triangular_ring(n, 2)
    out["N3_Z2"] = lambda: strictly_upper_triangular_ring(2, 3)
    out["T2_Z2xZ3"] = lambda: direct_product(upper_triangular_ring(2, 2), ring_zn(3))
    out["M2_Z2xZ2"] = lambda: direct_product(matrix_ring(2, 2), ring_zn(2))
    return out


BUILDERS = _builders()
CATALOG_NAMES = tuple(BUILDERS)


@lru_cache(maxsize=None)
def get_ring(name: str) -> Ring:
    try:
        return BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin ring {name!r}") from None


def catalog() -> list[Ring]:
    return [get_ring(n) for n in CATALOG_NAMES]


# Generator coefficient vectors for the named subrings of each builtin.
# M2 order: E11 E12 E21 E22; T2 order: E11 E12 E22; N3 order: E12 E13 E23.
_M2 = {
    "upper": [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1)],
    "diag": [(1, 0, 0, 0), (0, 0, 0, 1)],
    "e12": [(0, 1, 0, 0)],
    "e11": [(1, 0, 0, 0)],
    "scalar": [(1, 0, 0, 1)],
}
_T2 = {
    "diag": [(1, 0, 0), (0, 0, 1)],
    "e12": [(0, 1, 0)],
    "e11": [(1, 0, 0)],
}
NAMED_GENERATORS: dict[str, dict[str, list[tuple[int, ...]]]] = {
    "M2_Z2": _M2,
    "M2_Z3": _M2,
    "M2_Z4": _M2,
    "T2_Z2": _T2,
    "T2_Z3": _T2,
    "N3_Z2": {"e12": [(1, 0, 0)], "e13": [(0, 1, 0)]},
    "T2_Z2xZ3": {
        "T2": [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)],
        "e12": [(0, 1, 0, 0)],
        "diag": [(1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)],
    },
    "M2_Z2xZ2": {
        "M2": [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0)],
        "upper": [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 0, 1, 0)],
        "e12": [(0, 1, 0, 0, 0)],
    },
}


def named_subring(R: Ring, name: str) -> Subring:
    """Resolve ``zero``, ``full``, ``center`` or a ring-specific name."""
    if name == "zero":
        return R.zero_subring()
    if name == "full":
        return R.full()
    if name == "center":
        return relative_center(R.full(), R.full())
    gens = NAMED_GENERATORS.get(R.name, {})
    if name not in gens:
        raise KeyError(f"{R.name} has no named subring {name!r}")
    return subring_closure(R, gens[name])


def designated_subrings(R: Ring) -> list[tuple[str, Subring]]:
    """Named subrings of R, deduplicated, in a fixed order."""
    names = ["zero", "full", "center", *NAMED_GENERATORS.get(R.name, {})]
    out, seen = [], set()
    for name in names:
        S = named_subring(R, name)
        if S.key not in seen:
            seen.add(S.key)
            out.append((name, S))
    return out
