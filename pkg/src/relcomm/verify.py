"""Claim-by-claim verification harness over the builtin catalog.

Every claim runs over every applicable instance and yields one record per
instance. Output order is the claim order below, then corpus order, regardless
of how many worker threads are used.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Iterable

import numpy as np

from . import bounds as bd
from .catalog import catalog, designated_subrings, get_ring
from .commutators import (
    additive_closure,
    centralizer,
    commutator_image,
    commutator_set,
    commutator_subgroup,
    image_matrix,
    relative_center,
    t_set,
)
from .isoclinism import (
    ZIsoclinismWitness,
    build_product_isoclinism,
    central_shift_invariant,
    pr_quotient_formula,
    theorem41_check,
    verify_isoclinism,
)
from .probability import (
    ACCELERATED,
    ORACLE,
    _is_prime,
    pr_brute,
    pr_centralizer_formula,
    pr_distribution,
    pr_image_formula,
    pr_prime_case,
)
from .ring import (
    DEFAULT_ENUM_BOUND,
    Ring,
    Subring,
    direct_product,
    enumerate_subrings,
    product_subring,
    ring_zn,
)
from .ringfile import load_ring_file


@dataclass
class ClaimRecord:
    claim: str
    instance: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{self.claim}\t{self.instance}\t{'PASS' if self.passed else 'FAIL'}\t{self.detail}"


@dataclass
class VerificationSuiteResult:
    records: list[ClaimRecord]
    wall_time: float = 0.0

    @property
    def failures(self) -> list[ClaimRecord]:
        return [r for r in self.records if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict[str, tuple[int, int]]:
        """claim -> (instances, failures)."""
        out: dict[str, tuple[int, int]] = {}
        for r in self.records:
            n, f = out.get(r.claim, (0, 0))
            out[r.claim] = (n + 1, f + (not r.passed))
        return out

    def lines(self) -> list[str]:
        out = [r.line() for r in self.records]
        out.append(f"# claims={len(self.summary())} instances={len(self.records)} failures={len(self.failures)}")
        return out


@dataclass
class CorpusEntry:
    ring: Ring
    subrings: list[tuple[str, Subring]]
    enumerated: bool


@dataclass
class Corpus:
    entries: list[CorpusEntry]
    max_enum: int = DEFAULT_ENUM_BOUND
    mode: str = ORACLE
    _reports: dict = field(default_factory=dict, repr=False)

    def pairs(self) -> Iterable[tuple[CorpusEntry, str, Subring]]:
        for e in self.entries:
            for label, S in e.subrings:
                yield e, label, S

    def report(self, R: Ring, S: Subring, r: int) -> bd.BoundReport:
        key = (id(R), S.key, r)
        if key not in self._reports:
            self._reports[key] = bd.bound_report(S, R, r, self.mode)
        return self._reports[key]


def _subrings_for(R: Ring, max_enum: int, extra: Iterable[tuple[str, Subring]] = ()) -> tuple[list, bool]:
    named = list(designated_subrings(R)) + list(extra)
    if R.size > max_enum:
        out, seen = [], set()
        for label, S in named:
            if S.key not in seen:
                seen.add(S.key)
                out.append((label, S))
        return out, False
    labels = {}
    for label, S in named:
        labels.setdefault(S.key, label)
    subs = enumerate_subrings(R, max_order=max_enum)
    return [(labels.get(S.key, f"s{i}[{S.count}]"), S) for i, S in enumerate(subs)], True


def build_corpus(files: Iterable[str] = (), max_enum: int = DEFAULT_ENUM_BOUND, mode: str = ORACLE,
                 rings: Iterable[str] | None = None) -> Corpus:
    extra_subrings: dict[str, list] = {}
    extra_rings: list[Ring] = []
    for path in files:
        rf = load_ring_file(path)
        extra_rings.extend(rf.rings.values())
        for decl in rf.subrings.values():
            extra_subrings.setdefault(decl.ring, []).append((decl.name, decl.subring))
    base = [get_ring(n) for n in rings] if rings is not None else catalog()
    entries = []
    for R in base + extra_rings:
        subs, enumerated = _subrings_for(R, max_enum, extra_subrings.get(R.name, ()))
        entries.append(CorpusEntry(R, subs, enumerated))
    return Corpus(entries, max_enum, mode)


def _inst(R: Ring, label: str | None = None) -> str:
    return R.name if label is None else f"{R.name}/{label}"


# ---------------------------------------------------------------- claims

def claim_ring_axioms(corpus: Corpus) -> list[ClaimRecord]:
    out = []
    rng = np.random.default_rng(0)
    for e in corpus.entries:
        R = e.ring
        if R.size <= 16:
            x, y, z = (a.ravel() for a in np.meshgrid(*[np.arange(R.size)] * 3, indexing="ij"))
        else:
            x, y, z = rng.integers(0, R.size, size=(3, 10_000))
        bad = []
        if not np.array_equal(R.mul(R.mul(x, y), z), R.mul(x, R.mul(y, z))):
            bad.append("associativity")
        if not np.array_equal(R.mul(x, R.add(y, z)), R.add(R.mul(x, y), R.mul(x, z))):
            bad.append("left-distributive")
        if not np.array_equal(R.mul(R.add(y, z), x), R.add(R.mul(y, x), R.mul(z, x))):
            bad.append("right-distributive")
        if not np.array_equal(R.commutator(R.add(x, y), z), R.add(R.commutator(x, z), R.commutator(y, z))):
            bad.append("biadditive")
        if not np.array_equal(R.comm_table, R.neg[R.comm_table.T]):
            bad.append("anticommutative")
        mode = "exhaustive" if R.size <= 16 else "sampled"
        out.append(ClaimRecord("ring-axioms", _inst(R), not bad, ",".join(bad) or f"{mode} {len(x)} triples"))
    return out


def claim_lemma21(corpus: Corpus) -> list[ClaimRecord]:
    out = []
    for e in corpus.entries:
        R = e.ring
        bad = None
        for x in range(R.size):
            img = commutator_image(R, x).count
            cen = int(centralizer(R, x).sum())
            if img * cen != R.size:
                bad = f"x={R.element(x)} |[x,R]|={img} |C_R(x)|={cen} |R|={R.size}"
                break
        out.append(ClaimRecord("lemma-2.1", _inst(R), bad is None, bad or f"{R.size} elements"))
    return out


def claim_lemma22(corpus: Corpus) -> list[ClaimRecord]:
    out = []
    for e in corpus.entries:
        R = e.ring
        if R.size > 64:
            continue
        full = R.full()
        bad = None
        for x in range(R.size):
            img = commutator_image(R, x)
            cen = np.flatnonzero(centralizer(R, x))
            covered = np.zeros(R.size, dtype=bool)
            for r in range(R.size):
                ts = t_set(full, full, x, r)
                if ts.any() != (r in img):
                    bad = f"x={R.element(x)} r={R.element(r)}: nonempty={ts.any()} r in [x,R]={r in img}"
                    break
                if ts.any():
                    t = int(np.flatnonzero(ts)[0])
                    coset = np.zeros(R.size, dtype=bool)
                    coset[np.asarray(R.add(t, cen))] = True
                    if not np.array_equal(coset, ts) or ts.sum() != len(cen):
                        bad = f"x={R.element(x)} r={R.element(r)}: solution set is not t + C_R(x)"
                        break
                    if (covered & ts).any():
                        bad = f"x={R.element(x)}: solution sets overlap"
                        break
                    covered |= ts
            if bad is None and not covered.all():
                bad = f"x={R.element(x)}: solution sets do not cover R"
            if bad:
                break
        out.append(ClaimRecord("lemma-2.2", _inst(R), bad is None, bad or f"{R.size ** 2} (x,r) pairs"))
    return out


def claim_thm23(corpus: Corpus) -> list[ClaimRecord]:
    out = []
    for e, label, S in corpus.pairs():
        R = e.ring
        bad = None
        for r in range(R.size):
            a = pr_brute(S, R, r, corpus.mode)
            b = pr_centralizer_formula(S, R, r)
            c = pr_image_formula(S, R, r)
            d = pr_brute(S, R, r, ACCELERATED)
            if not a == b == c == d:
                bad = f"r={R.element(r)} brute={a} centralizer={b} image={c} accelerated={d}"
                break
        out.append(ClaimRecord("thm-2.3", _inst(R, label), bad is None, bad or f"{R.size} targets agree"))
    return out


def claim_distribution(corpus: Corpus) -> list[ClaimRecord]:
    out = []
    for e, label, S in corpus.pairs():
        R = e.ring
        dist = pr_distribution(S, R, corpus.mode)
        K = np.flatnonzero(commutator_set(S, R)).tolist()
        ok_support = dist.support() == K
        total = dist.total()
        ok = ok_support and total == 1 and all(p > 0 for _, p in dist)
        detail = f"|K|={len(K)} sum={total}" if ok else f"support={dist.support()} K={K} sum={total}"
        out.append(ClaimRecord("distribution", _inst(R, label), ok, detail))
    return out


def claim_prop24(corpus: Corpus) -> list[ClaimRecord]:
    out = []
    for e, label, S in corpus.pairs():
        R = e.ring
        bad = None
        for r in range(R.size):
            a = pr_brute(S, R, r, corpus.mode)
            b = pr_brute(R, S, int(R.neg[r]), corpus.mode)
            if a != b:
                bad = f"r={R.element(r)} Pr_r(S,R)={a} Pr_-r(R,S)={b}"
                break
            if R.add(r, r) == 0 and a != pr_brute(R, S, r, corpus.mode):
                bad = f"r={R.element(r)} (2r=0) Pr_r(S,R)={a} Pr_r(R,S)={pr_brute(R, S, r, corpus.mode)}"
                break
        out.append(ClaimRecord("prop-2.4", _inst(R, label), bad is None, bad or f"{R.size} targets"))
    return out


PRODUCT_CASES = (("T2_Z2", "Z3"), ("M2_Z2", "Z2"))


def claim_prop25(corpus: Corpus) -> list[ClaimRecord]:
    out = []
    for n1, n2 in PRODUCT_CASES:
        R1, R2 = get_ring(n1), get_ring(n2)
        R12 = direct_product(R1, R2)
        subs1 = enumerate_subrings(R1, max_order=max(corpus.max_enum, R1.size))
        subs2 = enumerate_subrings(R2, max_order=max(corpus.max_enum, R2.size))
        for (i, S1), (j, S2) in itertools.product(enumerate(subs1), enumerate(subs2)):
            S12 = product_subring(S1, S2, R12)
            bad = None
            for r1, r2 in itertools.product(range(R1.size), range(R2.size)):
                lhs = pr_brute(S12, R12, r1 + R1.size * r2, corpus.mode)
                rhs = pr_brute(S1, R1, r1, corpus.mode) * pr_brute(S2, R2, r2, corpus.mode)
                if lhs != rhs:
                    bad = f"(r1,r2)=({R1.element(r1)},{R2.element(r2)}) product={lhs} factors={rhs}"
                    break
            inst = f"{n1}x{n2}/s{i}[{S1.count}]xs{j}[{S2.count}]"
            out.append(ClaimRecord("prop-2.5", inst, bad is None, bad or f"{R12.size} targets"))
    return out


def claim_cor26(corpus: Corpus) -> list[ClaimRecord]:
    out = []
    for e, label, S in corpus.pairs():
        R = e.ring
        a = pr_brute(S, R, 0, corpus.mode)
        b = pr_brute(R, S, 0, corpus.mode)
        csum = sum(int(centralizer(R, x).sum()) for x in S.indices)
        c = Fraction(csum, S.count * R.size)
        isizes = [commutator_image(R, x).count for x in S.indices]
        L = lcm(*isizes)
        d = Fraction(sum(L // s for s in isizes), L * S.count)
        ok = a == b == c == d
        out.append(ClaimRecord("cor-2.6", _inst(R, label), ok,
                               f"Pr={a}" if ok else f"Pr(S,R)={a} Pr(R,S)={b} centralizer-sum={c} image-sum={d}"))
    return out


def claim_cor27(corpus: Corpus) -> list[ClaimRecord]:
    out = []
    for e, label, S in corpus.pairs():
        R = e.ring
        C = commutator_subgroup(S, R)
        if not _is_prime(C.count):
            continue
        bad = None
        for r in C.indices:
            a, b = pr_prime_case(S, R, r), pr_brute(S, R, r, corpus.mode)
            if a != b:
                bad = f"r={R.element(r)} closed={a} brute={b}"
                break
        out.append(ClaimRecord("cor-2.7", _inst(R, label), bad is None, bad or f"p={C.count}"))
    return out


BOUND_CLAIMS = {
    "prop-3.1": ("noncentral-over-p", "one-over-p"),
    "prop-3.2": ("target-zero",),
    "cor-3.4": ("index-times-full",),
    "thm-3.5": ("image-lower", "image-upper"),
    "cor-3.6": ("ring-image-lower", "ring-image-upper"),
    "prior-bounds": ("prior-lower", "prior-upper", "image-lower-vs-prior", "image-upper-vs-prior"),
}


def _bound_claim(claim: str) -> Callable[[Corpus], list[ClaimRecord]]:
    names = BOUND_CLAIMS[claim]

    def run(corpus: Corpus) -> list[ClaimRecord]:
        out = []
        for e, label, S in corpus.pairs():
            R = e.ring
            checked, tight, bad = 0, 0, None
            for r in range(R.size):
                rep = corpus.report(R, S, r)
                for b in rep.bounds:
                    if b.name not in names:
                        continue
                    checked += 1
                    tight += b.tight
                    if not b.holds and bad is None:
                        bad = f"{b.name} r={R.element(r)} exact={rep.exact} bound={b.value} m={rep.m_S} M={rep.M_S}"
            if checked == 0:
                continue
            detail = bad or f"{checked} evaluations, {tight} tight"
            if claim == "prior-bounds" and bad is None:
                same = np.array_equal(commutator_set(S, R), commutator_subgroup(S, R).members)
                detail += f", K(S,R)=[S,R]: {'yes' if same else 'no'}"
            out.append(ClaimRecord(claim, _inst(R, label), bad is None, detail))
        return out

    return run


def claim_prop33(corpus: Corpus) -> list[ClaimRecord]:
    out = []
    for e in corpus.entries:
        R = e.ring
        subs = [S for _, S in e.subrings]
        n_pairs, bad = 0, None
        for S1, S2 in itertools.product(subs, repeat=2):
            if not S1.issubset(S2):
                continue
            n_pairs += 1
            for r in range(R.size):
                left, right, ok = bd.monotonicity_check(S1, S2, R, r, corpus.mode)
                if r == 0 and S1 != S2 and not left < right:
                    ok = False
                if not ok:
                    bad = f"|S1|={S1.count} |S2|={S2.count} r={R.element(r)} left={left} right={right}"
                    break
            if bad:
                break
        out.append(ClaimRecord("prop-3.3", _inst(R), bad is None, bad or f"{n_pairs} nested pairs"))
    return out


def claim_ineq34(corpus: Corpus, limit: int = 64) -> list[ClaimRecord]:
    bad, count = None, 0
    for c in range(1, limit + 1):
        for n in range(1, limit + 1):
            for m in range(n, limit + 1):
                count += 1
                if not bd.inequality_family_check(n, m, c):
                    bad = bad or f"n={n} m={m} c={c}"
    return [ClaimRecord("ineq-3.4", f"m,n,c<={limit}", bad is None, bad or f"{count} triples")]


ISOCLINISM_FACTORS = ("Z2", "Z3", "Z4")


def corrupt_beta(w: ZIsoclinismWitness) -> ZIsoclinismWitness:
    """Swap the images of 0 and some other commutator; never additive."""
    beta = dict(w.beta)
    other = next(k for k in sorted(beta) if k != 0)
    beta[0], beta[other] = beta[other], beta[0]
    return ZIsoclinismWitness(w.S1, w.S2, w.q1, w.q2, w.alpha, beta)


def negate_beta(w: ZIsoclinismWitness) -> ZIsoclinismWitness:
    """Compose beta with negation: still an additive bijection, wrong unless 2[S,R] = 0."""
    R2 = w.R2
    beta = {k: int(R2.neg[v]) for k, v in w.beta.items()}
    return ZIsoclinismWitness(w.S1, w.S2, w.q1, w.q2, w.alpha, beta)


def claim_thm41(corpus: Corpus) -> list[ClaimRecord]:
    out = []
    factors = [ring_zn(int(n[1:])) for n in ISOCLINISM_FACTORS]
    for e, label, S in corpus.pairs():
        R = e.ring
        Z = relative_center(S, R)
        if Z == S:
            continue
        C = commutator_subgroup(S, R)
        for A in factors:
            inst = f"{_inst(R, label)}x{A.name}"
            w = build_product_isoclinism(S, R, A)
            report = verify_isoclinism(w)
            if not report.passed:
                out.append(ClaimRecord("thm-4.1", inst, False, "witness rejected: " + ",".join(report.failed())))
                continue
            bad = None
            for r in C.indices:
                p1, p2 = theorem41_check(w, r, corpus.mode, report=report)
                if p1 != p2:
                    bad = f"r={R.element(r)} Pr_r(S1,R1)={p1} Pr_beta(r)(S2,R2)={p2}"
                    break
            out.append(ClaimRecord("thm-4.1", inst, bad is None, bad or f"|[S,R]|={C.count} |S:Z|={S.count // Z.count}"))
    out.extend(_corruption_records())
    return out


def _corruption_records() -> list[ClaimRecord]:
    out = []
    M = get_ring("M2_Z2")
    w = build_product_isoclinism(M.full(), M, ring_zn(2))
    failed = verify_isoclinism(corrupt_beta(w)).failed()
    out.append(ClaimRecord("thm-4.1", "M2_Z2/fullxZ2/corrupt-beta", "beta-additive" in failed,
                           "rejected: " + ",".join(failed)))
    T = get_ring("T2_Z3")
    w = build_product_isoclinism(T.full(), T, ring_zn(2))
    failed = verify_isoclinism(negate_beta(w)).failed()
    out.append(ClaimRecord("thm-4.1", "T2_Z3/fullxZ2/negated-beta", failed == ["compatibility", "well-defined"],
                           "rejected: " + ",".join(failed)))
    return out


def claim_eq41(corpus: Corpus) -> list[ClaimRecord]:
    out = []
    for e, label, S in corpus.pairs():
        R = e.ring
        bad = None
        if S.parent is R and not central_shift_invariant(S):
            bad = "central shift changes [x,R] or C_R(x)"
        for r in range(R.size):
            if bad:
                break
            a, b = pr_quotient_formula(S, r), pr_image_formula(S, R, r)
            if a != b:
                bad = f"r={R.element(r)} coset-sum={a} image-formula={b}"
        out.append(ClaimRecord("eq-4.1", _inst(R, label), bad is None, bad or f"{R.size} targets"))
    return out


CLAIMS: dict[str, Callable[[Corpus], list[ClaimRecord]]] = {
    "ring-axioms": claim_ring_axioms,
    "lemma-2.1": claim_lemma21,
    "lemma-2.2": claim_lemma22,
    "thm-2.3": claim_thm23,
    "distribution": claim_distribution,
    "prop-2.4": claim_prop24,
    "prop-2.5": claim_prop25,
    "cor-2.6": claim_cor26,
    "cor-2.7": claim_cor27,
    "prop-3.1": _bound_claim("prop-3.1"),
    "prop-3.2": _bound_claim("prop-3.2"),
    "prop-3.3": claim_prop33,
    "cor-3.4": _bound_claim("cor-3.4"),
    "thm-3.5": _bound_claim("thm-3.5"),
    "ineq-3.4": claim_ineq34,
    "cor-3.6": _bound_claim("cor-3.6"),
    "prior-bounds": _bound_claim("prior-bounds"),
    "thm-4.1": claim_thm41,
    "eq-4.1": claim_eq41,
}


def run_suite(claims: Iterable[str] | None = None, corpus: Corpus | None = None, threads: int = 1) -> VerificationSuiteResult:
    start = time.perf_counter()
    ids = list(CLAIMS) if claims is None else list(claims)
    for c in ids:
        if c not in CLAIMS:
            raise KeyError(f"unknown claim {c!r}; known: {', '.join(CLAIMS)}")
    corpus = corpus or build_corpus()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda c: CLAIMS[c](corpus), ids))
    else:
        chunks = [CLAIMS[c](corpus) for c in ids]
    records = [rec for chunk in chunks for rec in chunk]
    return VerificationSuiteResult(records, time.perf_counter() - start)
