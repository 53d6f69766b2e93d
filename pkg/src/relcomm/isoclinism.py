"""Z-isoclinisms between pairs (S1, R1) and (S2, R2).

A witness stores ``alpha`` as a map between coset numbers of the quotients
``R_i / Z(S_i, R_i)`` and ``beta`` as a map between element indices of the
commutator subgroups ``[S_i, R_i]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .commutators import (
    AdditiveSubgroup,
    QuotientGroup,
    _idx,
    centralizer_sizes,
    commutator_subgroup,
    image_matrix,
    quotient_group,
    relative_center,
)
from .probability import ORACLE, pr_brute
from .ring import Ring, Subring, direct_product, pair_index, product_subring

CLAUSES = (
    "alpha-bijective",
    "alpha-additive",
    "alpha-subring",
    "beta-bijective",
    "beta-additive",
    "compatibility",
    "well-defined",
)


class ShapeMismatch(ValueError):
    pass


class NotCommutativeFactor(ValueError):
    pass


class InvalidWitness(ValueError):
    pass


class ROutsideCommutatorSubgroup(ValueError):
    pass


class IdentityViolation(AssertionError):
    """An intermediate identity of the invariance argument failed on an instance."""


@dataclass(frozen=True, eq=False)
class ZIsoclinismWitness:
    S1: Subring
    S2: Subring
    q1: QuotientGroup
    q2: QuotientGroup
    alpha: tuple[int, ...]
    beta: dict[int, int] = field(repr=False)

    @property
    def R1(self) -> Ring:
        return self.S1.parent

    @property
    def R2(self) -> Ring:
        return self.S2.parent

    def beta_inverse(self) -> dict[int, int]:
        return {v: k for k, v in self.beta.items()}

    def serialize(self) -> str:
        lines = [f"witness {self.R1.name} {self.R2.name}"]
        lines += [f"alpha {self.q1.reps[a]} {self.q2.reps[b]}" for a, b in enumerate(self.alpha)]
        lines += [f"beta {a} {b}" for a, b in sorted(self.beta.items())]
        lines.append("end")
        return "\n".join(lines) + "\n"


def make_witness(S1: Subring, S2: Subring, alpha_reps: dict[int, int], beta: dict[int, int]) -> ZIsoclinismWitness:
    """Build a witness from representative-index pairs (any member of a coset may be used)."""
    q1 = quotient_group(S1.parent, relative_center(S1, S1.parent.full()))
    q2 = quotient_group(S2.parent, relative_center(S2, S2.parent.full()))
    alpha = [-1] * q1.order
    for a, b in alpha_reps.items():
        alpha[q1.coset(a)] = q2.coset(b)
    return ZIsoclinismWitness(S1, S2, q1, q2, tuple(alpha), dict(beta))


def parse_witness(text: str, S1: Subring, S2: Subring) -> ZIsoclinismWitness:
    alpha, beta = {}, {}
    for line in text.splitlines():
        parts = line.split("#", 1)[0].split()
        if not parts or parts[0] in ("witness", "end"):
            continue
        if parts[0] == "alpha":
            alpha[int(parts[1])] = int(parts[2])
        elif parts[0] == "beta":
            beta[int(parts[1])] = int(parts[2])
        else:
            raise ValueError(f"unexpected witness line: {line!r}")
    return make_witness(S1, S2, alpha, beta)


@dataclass
class VerificationReport:
    clauses: list[tuple[str, bool, str]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.clauses)

    def failed(self) -> list[str]:
        return [name for name, ok, _ in self.clauses if not ok]

    def __str__(self):
        return "\n".join(f"{name}\t{'PASS' if ok else 'FAIL'}\t{detail}" for name, ok, detail in self.clauses)


def _commutator_groups(w: ZIsoclinismWitness) -> tuple[AdditiveSubgroup, AdditiveSubgroup]:
    return (
        commutator_subgroup(w.S1, w.R1.full()),
        commutator_subgroup(w.S2, w.R2.full()),
    )


def verify_isoclinism(w: ZIsoclinismWitness, seed: int = 0) -> VerificationReport:
    """Check every clause of the Z-isoclinism definition; one line per clause."""
    R1, R2, q1, q2 = w.R1, w.R2, w.q1, w.q2
    C1, C2 = _commutator_groups(w)
    if len(w.alpha) != q1.order or q1.order != q2.order:
        raise ShapeMismatch(f"quotient orders {q1.order} vs {q2.order}, alpha has {len(w.alpha)} entries")
    if C1.count != C2.count or set(w.beta) != set(C1.indices.tolist()):
        raise ShapeMismatch("beta must be defined exactly on [S1,R1] and |[S1,R1]| = |[S2,R2]|")
    alpha = np.asarray(w.alpha, dtype=np.int64)
    clauses = []

    ok = bool((alpha >= 0).all() and len(set(w.alpha)) == q2.order)
    clauses.append(("alpha-bijective", ok, "" if ok else "alpha is not a permutation of cosets"))

    reps1, reps2 = np.asarray(q1.reps), np.asarray(q2.reps)
    sums1 = q1.coset_of[np.asarray(R1.add(reps1[:, None], reps1[None, :]))]
    if ok:
        img = reps2[alpha]
        sums2 = q2.coset_of[np.asarray(R2.add(img[:, None], img[None, :]))]
        bad = np.argwhere(alpha[sums1] != sums2)
        ok_add = bad.size == 0
        detail = "" if ok_add else f"cosets of {reps1[bad[0][0]]} and {reps1[bad[0][1]]}"
    else:
        ok_add, detail = False, "alpha not bijective"
    clauses.append(("alpha-additive", ok_add, detail))

    s1_cosets = q1.image_of(w.S1)
    s2_cosets = q2.image_of(w.S2)
    mapped = np.zeros(q2.order, dtype=bool)
    mapped[alpha[s1_cosets & (alpha >= 0)]] = True
    ok_s = bool(np.array_equal(mapped, s2_cosets)) and bool((alpha[s1_cosets] >= 0).all())
    clauses.append(("alpha-subring", ok_s, "" if ok_s else "alpha(S1/Z1) != S2/Z2"))

    b_keys = np.asarray(sorted(w.beta), dtype=np.int64)
    b_vals = np.asarray([w.beta[k] for k in b_keys.tolist()], dtype=np.int64)
    ok_b = len(set(b_vals.tolist())) == len(b_vals) and set(b_vals.tolist()) == set(C2.indices.tolist())
    clauses.append(("beta-bijective", ok_b, "" if ok_b else "beta is not a bijection onto [S2,R2]"))

    beta_arr = np.full(R1.size, -1, dtype=np.int64)
    beta_arr[b_keys] = b_vals
    lhs = beta_arr[np.asarray(R1.add(b_keys[:, None], b_keys[None, :]))]
    rhs = np.asarray(R2.add(b_vals[:, None], b_vals[None, :])) if (b_vals >= 0).all() and (b_vals < R2.size).all() else None
    if rhs is None:
        ok_ba, detail = False, "beta values outside R2"
    else:
        bad = np.argwhere(lhs != rhs)
        ok_ba = bad.size == 0
        detail = "" if ok_ba else f"beta({b_keys[bad[0][0]]} + {b_keys[bad[0][1]]}) mismatch"
    clauses.append(("beta-additive", ok_ba, detail))

    def compat(x1s, y1s, x2s, y2s) -> tuple[bool, str]:
        c1 = np.asarray(R1.commutator(x1s[:, None], y1s[None, :]))
        c2 = np.asarray(R2.commutator(x2s[:, None], y2s[None, :]))
        got = beta_arr[c1]
        bad = np.argwhere(got != c2)
        if bad.size == 0:
            return True, ""
        i, j = bad[0]
        return False, f"beta([{x1s[i]},{y1s[j]}]) = {got[i, j]} but [{x2s[i]},{y2s[j]}] = {c2[i, j]}"

    if not (ok and ok_b and (b_vals < R2.size).all()):
        clauses.append(("compatibility", False, "alpha or beta not bijective"))
        clauses.append(("well-defined", False, "alpha or beta not bijective"))
        return VerificationReport(clauses)

    s_cos = np.flatnonzero(s1_cosets)
    x1 = reps1[s_cos]
    y1 = reps1
    x2, y2 = reps2[alpha[s_cos]], reps2[alpha]
    clauses.append(("compatibility", *compat(x1, y1, x2, y2)))

    # one random alternate member per coset on each side
    rng = random.Random(seed)

    def alternates(q: QuotientGroup, cosets) -> np.ndarray:
        members = q.subgroup.indices
        R = q.parent
        return np.asarray([R.add(q.reps[c], int(rng.choice(members.tolist()))) for c in cosets], dtype=np.int64)

    ax1, ay1 = alternates(q1, s_cos), alternates(q1, range(q1.order))
    ax2, ay2 = alternates(q2, alpha[s_cos]), alternates(q2, alpha)
    clauses.append(("well-defined", *compat(ax1, ay1, ax2, ay2)))
    return VerificationReport(clauses)


def identity_witness(S: Subring) -> ZIsoclinismWitness:
    R = S.parent
    q = quotient_group(R, relative_center(S, R.full()))
    C = commutator_subgroup(S, R.full())
    return ZIsoclinismWitness(S, S, q, q, tuple(range(q.order)), {int(i): int(i) for i in C.indices})


def build_product_isoclinism(S: Subring, R: Ring, A: Ring) -> ZIsoclinismWitness:
    """Witness between (S, R) and (S x A, R x A) for a commutative ring A.

    alpha sends ``y + Z(S, R)`` to ``(y, 0) + Z(S x A, R x A)``; beta sends r to (r, 0).
    """
    if not A.is_commutative:
        raise NotCommutativeFactor(f"{A.name} is not commutative")
    key = ("product", id(A))
    if key not in R._cache:
        R._cache[key] = (A, direct_product(R, A))
    RA = R._cache[key][1]
    SA = product_subring(S, A.full(), RA)
    Z1 = relative_center(S, R.full())
    Z2 = relative_center(SA, RA.full())
    expected_center = product_subring(Z1, A.full(), RA)
    if Z2 != expected_center:
        raise AssertionError("Z(S x A, R x A) differs from Z(S, R) x A")
    C1 = commutator_subgroup(S, R.full())
    C2 = commutator_subgroup(SA, RA.full())
    expected_comm = np.zeros(RA.size, dtype=bool)
    expected_comm[[pair_index(R, c, 0) for c in C1.indices]] = True
    if not np.array_equal(C2.members, expected_comm):
        raise AssertionError("[S x A, R x A] differs from [S, R] x {0}")
    q1 = quotient_group(R, Z1)
    q2 = quotient_group(RA, Z2)
    alpha = tuple(q2.coset(pair_index(R, y, 0)) for y in q1.reps)
    beta = {int(c): pair_index(R, c, 0) for c in C1.indices}
    return ZIsoclinismWitness(S, SA, q1, q2, alpha, beta)


def pr_quotient_formula(S: Subring, r) -> Fraction:
    """Pr_r(S, R) summed over cosets of Z(S, R) inside S rather than over elements."""
    R = S.parent
    Z = relative_center(S, R.full())
    q = quotient_group(R, Z)
    reps = np.asarray([q.reps[c] for c in np.flatnonzero(q.image_of(S))])
    im = image_matrix(R.full())
    hit = im[reps, _idx(r)]
    sizes = im[reps[hit]].sum(axis=1).tolist()
    if not sizes:
        return Fraction(0)
    L = lcm(*sizes)
    return Fraction(Z.count * sum(L // s for s in sizes), S.count * L)


def central_shift_invariant(S: Subring) -> bool:
    """``[x + z, R] = [x, R]`` and ``C_R(x + z) = C_R(x)`` for x in S, z in Z(S, R)."""
    R = S.parent
    Z = relative_center(S, R.full())
    im = image_matrix(R.full())
    cs = centralizer_sizes(R.full())
    for z in Z.indices:
        shifted = np.asarray(R.add(S.indices, int(z)))
        if not np.array_equal(im[shifted], im[S.indices]) or not np.array_equal(cs[shifted], cs[S.indices]):
            return False
        for x, xs in zip(S.indices, shifted):
            if not np.array_equal(R.comm_table[x] == 0, R.comm_table[xs] == 0):
                return False
    return True


def theorem41_check(
    w: ZIsoclinismWitness, r, mode: str = ORACLE, report: VerificationReport | None = None
) -> tuple[Fraction, Fraction]:
    """``(Pr_r(S1, R1), Pr_beta(r)(S2, R2))`` after checking the witness and the
    intermediate identities |S1|/|Z1| = |S2|/|Z2| and r in [x1, R1] iff beta(r) in [x2, R2].

    Pass a previously computed ``report`` for ``w`` to skip re-verification.
    """
    if report is None:
        report = verify_isoclinism(w)
    if not report.passed:
        raise InvalidWitness(f"witness fails: {', '.join(report.failed())}")
    ri = _idx(r)
    if ri not in w.beta:
        raise ROutsideCommutatorSubgroup(f"r = {ri} is not in [S1, R1]")
    br = w.beta[ri]
    R1, R2 = w.R1, w.R2
    Z1, Z2 = w.q1.subgroup, w.q2.subgroup
    if Fraction(w.S1.count, Z1.count) != Fraction(w.S2.count, Z2.count):
        raise IdentityViolation("|S1 : Z1| != |S2 : Z2|")
    im1, im2 = image_matrix(R1.full()), image_matrix(R2.full())
    for c in np.flatnonzero(w.q1.image_of(w.S1)):
        x1 = w.q1.reps[c]
        x2 = w.q2.reps[w.alpha[c]]
        if bool(im1[x1, ri]) != bool(im2[x2, br]):
            raise IdentityViolation(f"r in [x1,R1] disagrees with beta(r) in [x2,R2] at x1 = {x1}")
        if im1[x1].sum() != im2[x2].sum():
            raise IdentityViolation(f"|[x1,R1]| != |[x2,R2]| at x1 = {x1}")
    return pr_brute(w.S1, R1, ri, mode), pr_brute(w.S2, R2, br, mode)
