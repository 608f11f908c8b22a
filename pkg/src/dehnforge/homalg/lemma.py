"""Leading-order criterion for acyclicity of a double mapping cone, and a
generator of random instances satisfying its hypotheses."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..lambda_ring import LambdaElement, LambdaMatrix, block_matrix
from . import linalg
from .complexes import (ComplexError, ConeData, GradedComplex, cohomology_ranks, double_cone,
                        leading_split, reweight)


@dataclass
class LemmaReport:
    positive_differentials: bool
    h_nonnegative: bool
    leading_orders_ok: bool
    leading_exact: bool
    acyclic_rational: bool
    acyclic_integer: bool
    messages: list[str] = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return (self.positive_differentials and self.h_nonnegative
                and self.leading_orders_ok and self.leading_exact)

    @property
    def acyclic(self) -> bool:
        return self.acyclic_rational and self.acyclic_integer


def split_exact_violations(f0: np.ndarray, k0: np.ndarray) -> list[str]:
    """Why ``0 -> Z^n0 -f0-> Z^n1 -k0-> Z^n2 -> 0`` fails to be exact, if it does."""
    n1, n0 = f0.shape
    n2 = k0.shape[0]
    out = []
    inv_f = linalg.smith_invariants(f0)
    if len(inv_f) < n0:
        out.append("f0 is not injective (rank %d < %d)" % (len(inv_f), n0))
    elif any(abs(d) != 1 for d in inv_f):
        out.append("cokernel of f0 has torsion %s" % [abs(d) for d in inv_f if abs(d) != 1])
    inv_k = linalg.smith_invariants(k0)
    if len(inv_k) < n2 or any(abs(d) != 1 for d in inv_k):
        out.append("k0 is not surjective (invariant factors %s)" % inv_k)
    if n0 and n2 and any(x != 0 for x in k0.dot(f0).flat):
        out.append("k0 f0 != 0")
    if not out and n0 + n2 != n1:
        out.append("rank mismatch: %d + %d != %d, so ker k0 != im f0" % (n0, n2, n1))
    return out


def double_cone_lemma_check(d: ConeData) -> LemmaReport:
    msgs: list[str] = []
    pos = True
    for name, c in (("C0", d.C0), ("C1", d.C1), ("C2", d.C2)):
        if c.differential.order() <= 0:
            pos = False
            msgs.append("differential of %s has order %s, not positive" % (name, c.differential.order()))
    h_ok = d.h.order() >= 0
    if not h_ok:
        msgs.append("h has negative order %s" % d.h.order())
    lead_ok, exact = True, False
    try:
        f0, _ = leading_split(d.f)
        k0, _ = leading_split(d.k)
    except ComplexError as err:
        lead_ok = False
        msgs.append(str(err))
    else:
        bad = split_exact_violations(f0, k0)
        exact = not bad
        msgs += bad
    dc = double_cone(d)
    acyc_q = cohomology_ranks(dc, "rational-u").is_zero()
    acyc_z = cohomology_ranks(dc, "integer-at-q1").is_zero()
    return LemmaReport(pos, h_ok, lead_ok, exact, acyc_q, acyc_z, msgs)


# ---------------------------------------------------------------- generator

_EXPONENTS = [Fraction(1), Fraction(3, 2), Fraction(4, 3), Fraction(2), Fraction(5, 2),
              Fraction(7, 3), Fraction(3)]
_WEIGHTS = [Fraction(0), Fraction(1, 6), Fraction(1, 4), Fraction(1, 3), Fraction(2, 5)]


def _rand_element(rng: np.random.Generator, terms: int = 2) -> LambdaElement:
    out = {}
    for _ in range(int(rng.integers(1, terms + 1))):
        e = _EXPONENTS[int(rng.integers(len(_EXPONENTS)))]
        out[e] = out.get(e, 0) + int(rng.choice([-2, -1, 1, 2]))
    x = LambdaElement(out)
    return x if x else LambdaElement({_EXPONENTS[0]: 1})


def random_map(rng, rows: list[int], cols: list[int], step: int, density=0.4) -> LambdaMatrix:
    """Random positive-order matrix raising degree by ``step``."""
    entries = {}
    for i, di in enumerate(rows):
        for j, dj in enumerate(cols):
            if di - dj == step and rng.random() < density:
                entries[(i, j)] = _rand_element(rng)
    return LambdaMatrix.from_entries((len(rows), len(cols)), entries)


def standard_differential(rng, degrees: list[int]) -> LambdaMatrix:
    """Disjoint pairs ``d a = (unit-free positive-order element) b`` with
    ``deg b = deg a + 1``; remaining generators are cycles."""
    n = len(degrees)
    free = list(rng.permutation(n))
    entries = {}
    used = set()
    for a in free:
        if a in used or rng.random() < 0.3:
            continue
        targets = [b for b in range(n) if b not in used and b != a and degrees[b] == degrees[a] + 1]
        if not targets:
            continue
        b = targets[int(rng.integers(len(targets)))]
        used |= {a, b}
        entries[(b, a)] = LambdaElement({_EXPONENTS[int(rng.integers(len(_EXPONENTS)))]:
                                         int(rng.choice([-1, 1]))})
    return LambdaMatrix.from_entries((n, n), entries)


def _unimodular(rng, degrees: list[int], steps: int = 6) -> tuple[np.ndarray, np.ndarray]:
    n = len(degrees)
    U = np.eye(n, dtype=int).astype(object)
    V = np.eye(n, dtype=int).astype(object)
    for _ in range(steps):
        i, j = (int(x) for x in rng.integers(0, max(n, 1), size=2)) if n else (0, 0)
        if n == 0 or i == j or degrees[i] != degrees[j]:
            continue
        c = int(rng.choice([-1, 1]))
        # row op on U, inverse column op on V keeps V = U^-1
        U[i, :] = U[i, :] + c * U[j, :]
        V[:, j] = V[:, j] - c * V[:, i]
    for i in range(n):
        if rng.random() < 0.3:
            U[i, :] = -U[i, :]
            V[:, i] = -V[:, i]
    return U, V


def random_basis_change(rng, degrees: list[int]) -> tuple[LambdaMatrix, LambdaMatrix]:
    """Degree-preserving ``P = U (I + N)`` with ``U`` unimodular over ``Z`` and
    ``N`` strictly upper triangular of positive order; returns ``(P, P^-1)``."""
    n = len(degrees)
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            if degrees[i] == degrees[j] and rng.random() < 0.3:
                entries[(i, j)] = _rand_element(rng, 1)
    N = LambdaMatrix.from_entries((n, n), entries)
    eye = LambdaMatrix.identity(n)
    inv_unip = eye
    term = eye
    for _ in range(n):
        term = -(term @ N)
        if term.is_zero():
            break
        inv_unip = inv_unip + term
    U, V = _unimodular(rng, degrees)
    P = LambdaMatrix.from_int(U) @ (eye + N)
    Pinv = inv_unip @ LambdaMatrix.from_int(V)
    return P, Pinv


def _degrees(rng, n: int, span: int = 3) -> list[int]:
    return sorted(int(x) for x in rng.integers(0, span, size=n))


def random_complex(rng, n: int, span: int = 3) -> GradedComplex:
    """Random positive-order complex: a conjugated standard form."""
    degs = _degrees(rng, n, span)
    D = standard_differential(rng, degs)
    P, Pinv = random_basis_change(rng, degs)
    return GradedComplex.build(degs, P @ D @ Pinv, positive_order=True)


def random_cone_data(rng: np.random.Generator, max_gens: int = 12) -> ConeData:
    """Random instance satisfying the leading-order hypotheses by construction.

    Start from ``C1 = C0 + C2`` with ``f0`` the inclusion and ``k0`` the
    projection, add a positive-order twist of the middle differential,
    perturb ``f`` and ``k`` by cochain homotopies (which produces ``h``),
    reweight compatibly, then conjugate each complex by a random
    order-zero-invertible change of basis.
    """
    half = max(1, max_gens // 2)
    n0 = int(rng.integers(1, half + 1))
    n2 = int(rng.integers(1, min(half, max_gens - n0) + 1))
    deg0, deg2 = _degrees(rng, n0), _degrees(rng, n2)
    deg1 = deg0 + deg2
    n1 = n0 + n2
    D0 = standard_differential(rng, deg0)
    D2 = standard_differential(rng, deg2)
    theta = random_map(rng, deg2, deg0, 0)
    eta = D2 @ theta - theta @ D0
    D1 = block_matrix([[D0, None], [eta, D2]], [n0, n2], [n0, n2])
    f = block_matrix([[LambdaMatrix.identity(n0)], [-theta]], [n0, n2], [n0])
    k = block_matrix([[theta, LambdaMatrix.identity(n2)]], [n2], [n0, n2])
    F = random_map(rng, deg1, deg0, -1)
    f = f + D1 @ F + F @ D0
    h = k @ F
    G = random_map(rng, deg2, deg1, -1)
    k = k + D2 @ G + G @ D1
    h = h + G @ f

    w0 = [_WEIGHTS[int(i)] for i in rng.integers(len(_WEIGHTS), size=n0)]
    w2 = [_WEIGHTS[int(i)] for i in rng.integers(len(_WEIGHTS), size=n2)]
    w1 = w0 + w2
    D0, D1, D2 = D0.reweight(w0, w0), D1.reweight(w1, w1), D2.reweight(w2, w2)
    f, k, h = f.reweight(w1, w0), k.reweight(w2, w1), h.reweight(w2, w0)

    P0, P0i = random_basis_change(rng, deg0)
    P1, P1i = random_basis_change(rng, deg1)
    P2, P2i = random_basis_change(rng, deg2)
    C0 = GradedComplex.build(deg0, P0 @ D0 @ P0i, labels=["a%d" % i for i in range(n0)],
                             positive_order=True)
    C1 = GradedComplex.build(deg1, P1 @ D1 @ P1i, labels=["b%d" % i for i in range(n1)],
                             positive_order=True)
    C2 = GradedComplex.build(deg2, P2 @ D2 @ P2i, labels=["c%d" % i for i in range(n2)],
                             positive_order=True)
    return ConeData(C0, C1, C2, P1 @ f @ P0i, P2 @ k @ P1i, P2 @ h @ P0i)


def random_chain_map(rng, max_gens: int = 8) -> tuple[GradedComplex, GradedComplex, LambdaMatrix]:
    """Random cochain map ``f: C0 -> C1``: arbitrary on the cycles of the
    standard forms that are not boundaries, plus a null-homotopic part."""
    n0 = int(rng.integers(1, max_gens + 1))
    n1 = int(rng.integers(1, max_gens + 1))
    deg0, deg1 = _degrees(rng, n0), _degrees(rng, n1)
    D0 = standard_differential(rng, deg0)
    D1 = standard_differential(rng, deg1)
    lone0 = [j for j in range(n0) if not any(ij[0] == j or ij[1] == j for ij in D0.nonzero_entries())]
    lone1 = [i for i in range(n1) if not any(ij[0] == i or ij[1] == i for ij in D1.nonzero_entries())]
    entries = {}
    for j in lone0:
        for i in lone1:
            if deg0[j] == deg1[i] and rng.random() < 0.6:
                x = int(rng.integers(-2, 3))
                entries[(i, j)] = LambdaElement({0: x}) + (_rand_element(rng, 1) if rng.random() < 0.5 else 0)
    f = LambdaMatrix.from_entries((n1, n0), entries)
    S = random_map(rng, deg1, deg0, -1)
    f = f + D1 @ S + S @ D0
    P0, P0i = random_basis_change(rng, deg0)
    P1, P1i = random_basis_change(rng, deg1)
    C0 = GradedComplex.build(deg0, P0 @ D0 @ P0i)
    C1 = GradedComplex.build(deg1, P1 @ D1 @ P1i)
    return C0, C1, P1 @ f @ P0i


def random_integer_complex(rng, n: int, span: int = 3) -> GradedComplex:
    """Conjugated integer standard form: pairs ``d a = m b`` with ``m`` in
    ``{1, 2, 3}`` up to sign, so both free ranks and torsion occur."""
    degs = _degrees(rng, n, span)
    D = standard_differential(rng, degs)
    D = LambdaMatrix.from_int(D.specialize(1) * int(rng.integers(1, 4)))
    U, V = _unimodular(rng, degs)
    return GradedComplex.build(degs, LambdaMatrix.from_int(U) @ D @ LambdaMatrix.from_int(V), ring="int")


def random_monotone_complex(rng, max_gens: int = 10) -> GradedComplex:
    """Integer complex with every generator rescaled by a random rational
    power of ``q``; over the fraction field this is a diagonal change of
    basis, so its ranks match those at ``q = 1``."""
    c = random_integer_complex(rng, int(rng.integers(1, max_gens + 1)))
    w = [Fraction(int(rng.integers(0, 12)), int(rng.choice([1, 2, 3, 4, 6]))) for _ in range(len(c))]
    return reweight(c, w)
