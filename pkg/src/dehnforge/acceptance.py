"""The twelve acceptance criteria as one runnable suite.

Each criterion returns a ``Criterion`` with a scalar metric, the tolerance
it is held to and per-case rows.  Randomness comes from
``numpy.random.default_rng([seed, criterion, case])`` so every case is
reproducible on its own.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import holonomy as hol
from . import pl_formula as pl
from . import twist_local as tw
from .homalg import (cohomology_ranks, cone, double_cone_lemma_check, mf_cohomology, mf_verify,
                     random_chain_map, random_cone_data)
from .homalg.factorization import MatrixFactorization, random_factorization
from .homalg.lemma import random_monotone_complex

PROFILES = ("fast", "full")


@dataclass
class Case:
    case_id: str
    metric: float
    tolerance: float
    passed: bool
    tag: str
    inputs: str = ""

    def row(self) -> dict:
        return {"case_id": self.case_id, "inputs": self.inputs, "metric": self.metric,
                "tolerance": self.tolerance, "pass": self.passed, "property": self.tag}


@dataclass
class Criterion:
    number: int
    title: str
    passed: bool
    summary: str
    cases: list[Case] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        return "[%s] criterion %2d  %-40s %s (%.1f s)" % ("PASS" if self.passed else "FAIL", self.number,
                                                         self.title, self.summary, self.seconds)


def _rng(seed: int, crit: int, case: int = 0) -> np.random.Generator:
    return np.random.default_rng([int(seed), crit, case])


def _count(profile: str, full: int, fast: int) -> int:
    return full if profile == "full" else fast


# ---------------------------------------------------------------- 1

def crit_double_cone(seed: int, profile: str) -> Criterion:
    n = _count(profile, 200, 200)
    cases, bad = [], []
    t0 = time.perf_counter()
    for i in range(n):
        d = random_cone_data(_rng(seed, 1, i), max_gens=12)
        rep = double_cone_lemma_check(d)
        size = max(len(d.C0), len(d.C1), len(d.C2))
        ok = rep.hypotheses_hold and rep.acyclic_rational and rep.acyclic_integer and size <= 12
        if not ok:
            bad.append(i)
        cases.append(Case("doublecone-%03d" % i, float(not ok), 0.0, ok,
                          "double cone lemma: leading-order exactness implies acyclic",
                          "generators %d/%d/%d" % (len(d.C0), len(d.C1), len(d.C2))))
    secs = time.perf_counter() - t0
    ok = not bad and secs < 10.0
    return Criterion(1, "double mapping cone lemma", ok,
                     "%d/%d acyclic in both modes%s%s"
                     % (n - len(bad), n, "; over the 10 s budget" if secs >= 10.0 else "",
                        "; failing %s" % bad[:5] if bad else ""), cases)


# ---------------------------------------------------------------- 2

def _chi(ranks: dict[int, int]) -> int:
    return sum((-1) ** d * r for d, r in ranks.items())


def crit_cone_euler(seed: int, profile: str) -> Criterion:
    n = _count(profile, 50, 50)
    cases, bad = [], 0
    for i in range(n):
        C0, C1, f = random_chain_map(_rng(seed, 2, i))
        K = cone(f, C0, C1)
        ok = K.euler_characteristic() == C1.euler_characteristic() - C0.euler_characteristic()
        for mode in ("rational-u", "integer-at-q1"):
            h0 = cohomology_ranks(C0, mode).ranks
            h1 = cohomology_ranks(C1, mode).ranks
            hk = cohomology_ranks(K, mode).ranks
            ok &= _chi(hk) == _chi(h1) - _chi(h0)
            # C1 -> Cone -> C0[1] -> C1[1]
            ok &= pl.triangle_rank_consistency(h1, hk, {d - 1: r for d, r in h0.items()})
            ok &= all(h1.get(d, 0) <= h0.get(d, 0) + hk.get(d, 0) for d in set(h1))
        bad += not ok
        cases.append(Case("cone-%02d" % i, float(not ok), 0.0, bool(ok),
                          "cone Euler characteristic and long exact sequence"))
    return Criterion(2, "cone Euler identity and LES ranks", bad == 0,
                     "%d/%d instances consistent" % (n - bad, n), cases)


# ---------------------------------------------------------------- 3

def crit_specialization(seed: int, profile: str) -> Criterion:
    n = _count(profile, 50, 50)
    cases, bad = [], 0
    for i in range(n):
        c = random_monotone_complex(_rng(seed, 3, i))
        a = cohomology_ranks(c, "rational-u").ranks
        b = cohomology_ranks(c, "integer-at-q1").ranks
        ok = a == b
        bad += not ok
        cases.append(Case("specialize-%02d" % i, float(not ok), 0.0, ok,
                          "reweighted complex: generic ranks equal q = 1 ranks"))
    return Criterion(3, "specialization of reweighted complexes", bad == 0,
                     "%d/%d rank vectors agree" % (n - bad, n), cases)


# ---------------------------------------------------------------- 4

def _order_profile(invariants: list[int]) -> dict[int, int]:
    """Number of elements of each order in ``prod Z/d``."""
    out: dict[int, int] = {}
    for x in itertools.product(*[range(d) for d in invariants]):
        o = 1
        for xi, d in zip(x, invariants):
            o = math.lcm(o, d // math.gcd(xi, d))
        out[o] = out.get(o, 0) + 1
    return out


def brute_quotient_profile(A: np.ndarray, B: np.ndarray, n: int) -> dict[int, int]:
    """Element-order profile of ``ker(A mod n) / im(B mod n)`` by enumeration."""
    m = A.shape[1]
    pts = [np.array(x, dtype=np.int64) for x in itertools.product(range(n), repeat=m)]
    A64 = np.asarray(A, dtype=np.int64) % n
    ker = {tuple(x) for x in pts if not np.any(A64.dot(x) % n)}
    k = B.shape[1]
    B64 = np.asarray(B, dtype=np.int64) % n
    img = {tuple(B64.dot(np.array(y, dtype=np.int64)) % n)
           for y in itertools.product(range(n), repeat=k)} if k else {tuple([0] * m)}
    img_arr = np.array(sorted(img), dtype=np.int64)
    seen, out = set(), {}
    for x in sorted(ker):
        if x in seen:
            continue
        coset = {tuple((np.array(x) + y) % n) for y in img_arr}
        seen |= coset
        xa = np.array(x)
        o = 1
        while tuple(o * xa % n) not in img:
            o += 1
        out[o] = out.get(o, 0) + 1
    return out


def crit_factorizations(seed: int, profile: str) -> Criterion:
    cases, bad = [], 0
    ws = [2, 3, 6]
    for i in range(20):
        rng = _rng(seed, 4, i)
        w = ws[i % 3]
        rank = int(rng.integers(1, 4)) if w != 6 else int(rng.integers(1, 3))
        m = random_factorization(rng, w, rank)
        ok = mf_verify(m)
        H = mf_cohomology(m)
        for deg, (A, B) in ((0, (m.d0, m.d1)), (1, (m.d1, m.d0))):
            ok &= brute_quotient_profile(A, B, w) == _order_profile(H.invariants[deg])
        bad += not ok
        cases.append(Case("mf-%02d-w%d" % (i, w), float(not ok), 0.0, bool(ok),
                          "matrix factorization: d^2 = w and cohomology mod w"))
    # the composite must be checked, not assumed
    neg = not mf_verify(MatrixFactorization.scalar(2, 2, 2))
    cases.append(Case("mf-reject", float(not neg), 0.0, neg, "matrix factorization: d^2 = w"))
    return Criterion(4, "matrix factorizations", bad == 0 and neg,
                     "%d/20 fixtures match the enumeration oracle" % (20 - bad), cases)


# ---------------------------------------------------------------- 5

def crit_symplectic(seed: int, profile: str) -> Criterion:
    samples = _count(profile, 100, 100)
    a = tw.AngleProfile(1.0, 1.0)
    cases = []
    t0 = time.perf_counter()
    for c in (1, 2, 3):
        s = [int(x) for x in np.random.SeedSequence([seed, 5, c]).generate_state(6)]
        checks = [
            ("symp", tw.symplectic_check(a, c, samples, 1e-5, seed=s[0]), 1e-6,
             "model twist preserves the symplectic form"),
            ("antipodal", tw.antipodal_defect(a, c, samples, seed=s[1]), 1e-9,
             "antipodal map on the zero section"),
            ("support", tw.support_defect(a, c, samples, seed=s[2]), 1e-9,
             "identity outside the support"),
        ]
        eq, norm = tw.equivariance_check(a, c, samples, seed=s[3])
        checks += [("equivariance", eq, 1e-9, "SO(c+1)-equivariance"),
                   ("moment-norm", norm, 1e-9, "fiber norm preserved")]
        for name, val, tol, tag in checks:
            cases.append(Case("%s-c%d" % (name, c), val, tol, val < tol, tag))
    secs = time.perf_counter() - t0
    ok = all(x.passed for x in cases) and secs < 30
    worst = max(x.metric for x in cases if x.case_id.startswith("symp"))
    return Criterion(5, "model twist is symplectic", ok,
                     "max form defect %.2e (tol 1e-6), other checks %s%s"
                     % (worst, "ok" if all(x.passed for x in cases) else "FAILED",
                        "; over the 30 s budget" if secs >= 30 else ""), cases)


# ---------------------------------------------------------------- 6

def _random_pair(rng, c: int) -> tuple[np.ndarray, np.ndarray]:
    while True:
        v0 = rng.standard_normal(c + 1)
        v1 = rng.standard_normal(c + 1)
        v0 /= np.linalg.norm(v0)
        v1 /= np.linalg.norm(v1)
        if 0.05 < math.acos(np.clip(v0 @ v1, -1, 1)) < math.pi - 0.05:
            return v0, v1


def crit_intersections(seed: int, profile: str) -> Criterion:
    a = tw.AngleProfile(1.0, 1.0)
    cases = []
    for i in range(20):
        rng = _rng(seed, 6, i)
        c = 1 + i % 3
        v0, v1 = _random_pair(rng, c)
        d0 = tw.threshold_delta(a, v0, v1)
        res = tw.count_twisted_intersections(v0, v1, a.rescaled(2 * d0))
        worst = max(res.residuals, default=math.inf)
        ok = res.count == 1 and worst < 1e-10
        cases.append(Case("bij-%02d-c%d" % (i, c), worst, 1e-10, ok,
                          "twisted fiber meets the other fiber exactly once",
                          "count %d" % res.count))
    n_ok = sum(x.passed for x in cases)
    return Criterion(6, "intersection bijection", n_ok == 20,
                     "%d/20 pairs with count 1, max residual %.1e"
                     % (n_ok, max(x.metric for x in cases)), cases)


# ---------------------------------------------------------------- 7

def crit_maslov(seed: int, profile: str) -> Criterion:
    cases = []
    for c in (1, 2, 3, 5):
        loop = tw.maslov_index_loop(tw.sqrt_z_frame(c))
        sec = tw.section_index(c)
        cases.append(Case("loop-c%d" % c, float(abs(loop - (c + 1))), 0.0, loop == c + 1,
                          "index of the sqrt z boundary loop is c + 1", "index %d" % loop))
        cases.append(Case("section-c%d" % c, float(abs(sec - (c - 1))), 0.0, sec == c - 1,
                          "section index is c - 1", "index %d" % sec))
    ok = all(x.passed for x in cases)
    return Criterion(7, "Maslov indices", ok,
                     "loops %s, sections %s" % ([tw.maslov_index_loop(tw.sqrt_z_frame(c)) for c in (1, 2, 3, 5)],
                                                [tw.section_index(c) for c in (1, 2, 3, 5)]), cases)


# ---------------------------------------------------------------- 8

def crit_repvar(seed: int, profile: str) -> Criterion:
    cases = []
    dims = []
    for i in range(20):
        s = int(np.random.SeedSequence([seed, 8, i]).generate_state(1)[0])
        t = hol.solve_rep_variety([Fraction(1, 4)] * 5, seed=s, irreducible="require")
        stab = hol.stabilizer_dimension(t.elements)
        dim = hol.tangent_dimension(t) if stab == 0 else -1
        dims.append(dim)
        ok = t.residual() < 1e-10 and t.label_defect() < 1e-10 and stab == 0 and dim == 4
        cases.append(Case("five-quarter-%02d" % i, t.residual(), 1e-10, ok,
                          "moduli space of five traceless marked points has dimension 4",
                          "dimension %d stabilizer %d" % (dim, stab)))
    ok = all(x.passed for x in cases)
    return Criterion(8, "representation variety dimension", ok,
                     "dimensions %s, max residual %.1e" % (sorted(set(dims)), max(x.metric for x in cases)),
                     cases)


# ---------------------------------------------------------------- 9

def crit_twist_algebra(seed: int, profile: str) -> Criterion:
    cases = []
    worst = 0.0
    for i in range(100):
        rng = _rng(seed, 9, i)
        gi, gj = hol.sample_class(0.25, rng), hol.sample_class(0.25, rng)
        worst = max(worst, hol.half_twist_ad_sqrt_check(gi, gj))
    cases.append(Case("ad-sqrt", worst, 1e-10, worst < 1e-10,
                      "half twist is conjugation by a square root of -g_i g_j"))
    braid = square = inverse = 0.0
    for i in range(10):
        s = int(np.random.SeedSequence([seed, 9, 1000 + i]).generate_state(1)[0])
        t = hol.solve_rep_variety([Fraction(1, 4)] * 5, seed=s)
        braid = max(braid, hol.braid_word(t, [1, 2, 1]).distance(hol.braid_word(t, [2, 1, 2])),
                    hol.braid_word(t, [1, 3]).distance(hol.braid_word(t, [3, 1])))
        h = t.elements[0] @ t.elements[1]
        twice = hol.braid_word(t, [1, 1])
        square = max(square, *(twice.elements[k].distance(t.elements[k].conj_by(h)) for k in (0, 1)))
        inverse = max(inverse, hol.braid_word(t, [2, -2]).distance(t))
    cases += [Case("braid", braid, 1e-12, braid < 1e-12, "braid relations for half twists"),
              Case("square", square, 1e-12, square < 1e-12,
                   "half twist squared is conjugation of the pair by its product"),
              Case("inverse", inverse, 1e-12, inverse < 1e-12, "half twist inverse")]
    # tuples whose first two elements multiply to +I or -I
    fixed = True
    for i in range(10):
        rng = _rng(seed, 9, 2000 + i)
        g, k = hol.sample_class(0.25, rng), hol.sample_class(0.25, rng)
        for els in ((g, g.inv(), k, k.inv()), (g, g, k, k)):
            t = hol.HolonomyTuple(els, [0.25] * 4)
            fixed &= hol.full_twist(t, [0, 1]).elements == t.elements
    cases.append(Case("central-fixed", float(not fixed), 0.0, bool(fixed),
                      "full twist fixes tuples with central enclosed holonomy"))
    ok = all(x.passed for x in cases)
    return Criterion(9, "twist algebra", ok,
                     "ad-sqrt %.1e, braid %.1e, square %.1e, central fixed %s"
                     % (worst, braid, square, fixed), cases)


# ---------------------------------------------------------------- 10

def crit_fibers(seed: int, profile: str) -> Criterion:
    got = (hol.coisotropic_fiber_dim(0.3, "separating-generic"),
           hol.coisotropic_fiber_dim(0.5, "nonseparating-central"),
           hol.coisotropic_fiber_dim(0, "halftwist-pair"))
    cases = [Case(name, float(abs(g - e)), 0.0, g == e, "coisotropic fiber dimension", str(g))
             for name, g, e in zip(("separating", "nonseparating", "halftwist"), got, (1, 3, 2))]
    return Criterion(10, "coisotropic fiber dimensions", got == (1, 3, 2), "got %s" % (got,), cases)


# ---------------------------------------------------------------- 11

def crit_picard_lefschetz(seed: int, profile: str) -> Criterion:
    orient = pl.fix_orientation()
    cases = []
    for p, q in ((1, 0), (0, 1), (1, 1), (2, 3), (-3, 5), (1, -4), (5, 2)):
        got = pl.monodromy_matrix(pl.torus_slant_data(p, q, orient))[1]
        want = pl.torus_twist_oracle(p, q)
        ok = bool(np.array_equal(got, want))
        cases.append(Case("torus-%d-%d" % (p, q), float(not ok), 0.0, ok,
                          "Picard-Lefschetz formula matches the torus twist", str(got.tolist())))
    signs = [pl.sign(c) for c in range(1, 9)]
    sign_ok = signs == [-1, 1, 1, -1, -1, 1, 1, -1]
    cases.append(Case("sign-table", float(not sign_ok), 0.0, sign_ok, "sign pattern of period 4",
                      "".join("+" if s > 0 else "-" for s in signs)))
    ok = all(x.passed for x in cases)
    return Criterion(11, "Picard-Lefschetz formula", ok,
                     "torus oracle %d/7, signs %s" % (sum(x.passed for x in cases[:-1]), cases[-1].inputs),
                     cases)


# ---------------------------------------------------------------- 12

def crit_class_square(seed: int, profile: str) -> Criterion:
    n = _count(profile, 500, 100)
    worst = hol.class_square_segment_check(n, _rng(seed, 12))
    e0, e1 = hol.class_square_endpoints()
    cases = [Case("samples", worst, 1e-8, worst < 1e-8, "products of the class lie over the segment",
                  "%d samples" % n),
             Case("endpoint-0", e0, 1e-10, e0 < 1e-10, "segment endpoint omega_1"),
             Case("endpoint-half", e1, 1e-10, e1 < 1e-10, "segment endpoint omega_2 / 2")]
    ok = all(x.passed for x in cases)
    return Criterion(12, "SU(3) class square", ok,
                     "%d samples max distance %.1e, endpoints %.1e / %.1e" % (n, worst, e0, e1), cases)


CRITERIA: dict[int, Callable[[int, str], Criterion]] = {
    1: crit_double_cone, 2: crit_cone_euler, 3: crit_specialization, 4: crit_factorizations,
    5: crit_symplectic, 6: crit_intersections, 7: crit_maslov, 8: crit_repvar,
    9: crit_twist_algebra, 10: crit_fibers, 11: crit_picard_lefschetz, 12: crit_class_square,
}


def run_criterion(number: int, seed: int = 0, profile: str = "full") -> Criterion:
    if profile not in PROFILES:
        raise ValueError("profile must be one of %s" % (PROFILES,))
    t0 = time.perf_counter()
    crit = CRITERIA[number](seed, profile)
    crit.seconds = time.perf_counter() - t0
    return crit


def run_all(seed: int = 0, profile: str = "full", only=None) -> list[Criterion]:
    return [run_criterion(k, seed, profile) for k in sorted(CRITERIA) if only is None or k in only]
