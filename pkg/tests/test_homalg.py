from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dehnforge.acceptance import _order_profile, brute_quotient_profile
from dehnforge.homalg import (ComplexError, ConeData, FactorizationError, GradedComplex, MatrixFactorization,
                              cohomology_ranks, cone, double_cone, double_cone_lemma_check,
                              filtration_page_one, find_violations, int_complex, is_acyclic,
                              leading_split, mf_cohomology, mf_morphism_check, mf_verify,
                              quotient_invariants, random_chain_map, random_cone_data, reweight,
                              verify_complex, zero_complex)
from dehnforge.homalg.factorization import random_factorization
from dehnforge.homalg.io import (complex_from_json, complex_to_json, cone_data_from_json,
                                 cone_data_to_json, mf_from_json, mf_to_json)
from dehnforge.homalg.lemma import random_basis_change, random_complex, random_monotone_complex
from dehnforge.lambda_ring import LambdaMatrix, common_denominator, q, to_single_variable

seeds = st.integers(0, 2 ** 32 - 1)
U = sympy.Symbol("u")


def sympy_ranks(c: GradedComplex) -> dict[int, int]:
    """Ranks over Q(u) straight from sympy, as an oracle for the evaluation method."""
    entries = [x for d in c.degree_set() for row in c.block(d).to_rows() for x in row]
    N = common_denominator(entries)
    r = {}
    for d in c.degree_set():
        rows = c.block(d).to_rows()
        m = sympy.Matrix([[sum(k * U ** e for e, k in to_single_variable(x, N).items()) for x in row]
                          for row in rows]) if rows and rows[0] else sympy.zeros(len(rows), 0)
        r[d] = m.rank(simplify=True) if m.shape[0] and m.shape[1] else 0
    return {d: len(c.indices(d)) - r[d] - r.get(d - 1, 0) for d in c.degree_set()}


# ------------------------------------------------------------ examples

def test_verify_examples():
    assert verify_complex(zero_complex([0, 1, 1]))
    one = GradedComplex.build([0, 1], [[0, 0], [q(Fraction(1, 2)), 0]])
    assert verify_complex(one)
    chain = int_complex([0, 1, 2], [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    assert not verify_complex(chain)
    assert find_violations(chain)


def test_wrong_degree_entry_is_rejected():
    bad = int_complex([0, 0], [[0, 0], [1, 0]])
    assert not verify_complex(bad)


def test_cone_of_zero_map_is_a_sum():
    C0 = int_complex([0, 1], [[0, 0], [2, 0]])
    C1 = zero_complex([0, 1])
    K = cone(LambdaMatrix.zeros(2, 2), C0, C1)
    h0 = cohomology_ranks(C0, "integer-at-q1")
    hk = cohomology_ranks(K, "integer-at-q1")
    assert hk.ranks == {-1: 0, 0: 1, 1: 1}
    assert h0.torsion == {1: [2]}
    assert hk.torsion == {0: [2]}


def test_cone_of_identity_is_acyclic():
    C = zero_complex([0, 0])
    K = cone(LambdaMatrix.identity(2), C, C)
    for mode in ("rational-u", "integer-at-q1"):
        assert is_acyclic(K, mode)
    assert is_acyclic(K, "mod-p", p=3)


def test_cone_rejects_non_chain_map():
    C0 = int_complex([0, 1], [[0, 0], [1, 0]])
    C1 = zero_complex([0, 1])
    with pytest.raises(ComplexError):
        cone(LambdaMatrix.from_int([[0, 0], [0, 1]]), C0, C1)


def test_torsion_from_smith_form():
    c = int_complex([0, 1], [[0, 0], [2, 0]])
    h = cohomology_ranks(c, "integer-at-q1")
    assert h.ranks == {0: 0, 1: 0} and h.torsion == {1: [2]}
    assert cohomology_ranks(c, "mod-p", p=2).ranks == {0: 1, 1: 1}
    assert cohomology_ranks(c, "rational-u").ranks == {0: 0, 1: 0}


def test_split_double_cone():
    Z = zero_complex([0])
    Z2 = zero_complex([0, 0])
    d = ConeData(Z, Z2, Z, LambdaMatrix.from_int([[1], [0]]), LambdaMatrix.from_int([[0, 1]]),
                 LambdaMatrix.zeros(1, 1))
    rep = double_cone_lemma_check(d)
    assert rep.hypotheses_hold and rep.acyclic


def test_zero_double_cone_is_a_sum():
    C0, C1, C2 = zero_complex([0]), zero_complex([0, 1]), zero_complex([1])
    d = ConeData(C0, C1, C2, LambdaMatrix.zeros(2, 1), LambdaMatrix.zeros(1, 2), LambdaMatrix.zeros(1, 1))
    h = cohomology_ranks(double_cone(d), "integer-at-q1").ranks
    assert {k: v for k, v in h.items() if v} == {-2: 1, -1: 1, 0: 1, 1: 1}


def test_doubling_fails_exactness():
    Z = zero_complex([0])
    d = ConeData(Z, Z, zero_complex([]), LambdaMatrix.from_int([[2]]), LambdaMatrix.zeros(0, 1),
                 LambdaMatrix.zeros(0, 1))
    rep = double_cone_lemma_check(d)
    assert not rep.leading_exact and not rep.hypotheses_hold
    assert not rep.acyclic_integer


def test_invalid_homotopy_is_rejected():
    Z = zero_complex([0])
    d = ConeData(Z, Z, Z, LambdaMatrix.identity(1), LambdaMatrix.identity(1), LambdaMatrix.zeros(1, 1))
    with pytest.raises(ComplexError):
        double_cone(d)


def test_leading_split():
    m0, m1 = leading_split(LambdaMatrix.from_rows([[1 + q(Fraction(1, 2))]]))
    assert m0.tolist() == [[1]] and m1 == LambdaMatrix.from_rows([[q(Fraction(1, 2))]])
    m0, m1 = leading_split(LambdaMatrix.from_rows([[q(1)]]))
    assert m0.tolist() == [[0]] and m1 == LambdaMatrix.from_rows([[q(1)]])
    with pytest.raises(ComplexError):
        leading_split(LambdaMatrix.from_rows([[q(-1)]]))


def test_page_one():
    c = GradedComplex.build([0, 1], [[0, 0], [q(1), 0]])
    assert filtration_page_one(c, Fraction(1, 2)).differential.is_zero()
    c = GradedComplex.build([0, 1], [[0, 0], [1 + q(2), 0]])
    assert filtration_page_one(c, 5).differential.specialize().tolist() == [[0, 0], [1, 0]]
    with pytest.raises(ValueError):
        filtration_page_one(c, 0)


def test_page_one_of_double_cone_is_acyclic():
    rng = np.random.default_rng(11)
    for _ in range(10):
        d = random_cone_data(rng, max_gens=6)
        assert is_acyclic(filtration_page_one(double_cone(d), Fraction(1, 4)), "integer-at-q1")


def test_reweight_by_zero_is_identity():
    c = random_complex(np.random.default_rng(1), 5)
    assert reweight(c, [0] * 5) == c


def test_mf_examples():
    assert mf_verify(MatrixFactorization.scalar(1, 2, 2))
    assert not mf_verify(MatrixFactorization.scalar(2, 2, 2))
    assert mf_verify(MatrixFactorization.scalar(0, 0, 0))
    H = mf_cohomology(MatrixFactorization.scalar(1, 5, 5))
    assert H.invariants == {0: [], 1: []}
    with pytest.raises(FactorizationError):
        mf_cohomology(MatrixFactorization.scalar(0, 0, 0))


def test_two_three_six_is_exact():
    # mod 6: ker(2) = im(3) = {0, 3}, so nothing survives
    H = mf_cohomology(MatrixFactorization.scalar(2, 3, 6))
    assert H.invariants == {0: [], 1: []}
    assert brute_quotient_profile(np.array([[2]]), np.array([[3]]), 6) == {1: 1}


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(2, 12), st.integers(1, 3))
def test_mf_cohomology_vanishes(seed, w, rank):
    # d1 d0 = w forces ker d0 = im d1 mod w
    H = mf_cohomology(random_factorization(np.random.default_rng(seed), w, rank))
    assert H.invariants == {0: [], 1: []} and H.order(0) == H.order(1) == 1


def test_free_summand_outside_factorizations():
    assert quotient_invariants(np.array([[0]]), np.array([[0]]), 4) == [4]


def test_mf_morphisms():
    m = MatrixFactorization.scalar(2, 3, 6)
    assert mf_morphism_check(m, m, [[1]], [[1]])
    assert mf_morphism_check(m, m, [[0]], [[0]])
    assert not mf_morphism_check(m, m, [[1]], [[0]])
    with pytest.raises(FactorizationError):
        mf_morphism_check(m, MatrixFactorization.scalar(1, 2, 2), [[1]], [[1]])


# ------------------------------------------------------------ properties

@settings(max_examples=40, deadline=None)
@given(seeds)
def test_double_cone_is_a_complex(seed):
    d = random_cone_data(np.random.default_rng(seed), max_gens=8)
    assert verify_complex(double_cone(d))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_double_cone_lemma(seed):
    rep = double_cone_lemma_check(random_cone_data(np.random.default_rng(seed), max_gens=8))
    assert rep.hypotheses_hold
    assert rep.acyclic_rational and rep.acyclic_integer


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_cone_long_exact_sequence(seed):
    C0, C1, f = random_chain_map(np.random.default_rng(seed), max_gens=6)
    K = cone(f, C0, C1)
    assert verify_complex(K)
    assert K.euler_characteristic() == C1.euler_characteristic() - C0.euler_characteristic()
    h0, h1, hk = (cohomology_ranks(x).ranks for x in (C0, C1, K))
    for d in h1:
        assert h1[d] <= h0.get(d, 0) + hk.get(d, 0)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_rational_ranks_match_sympy(seed):
    c = random_complex(np.random.default_rng(seed), 5)
    assert cohomology_ranks(c).ranks == sympy_ranks(c)


@settings(max_examples=25, deadline=None)
@given(seeds, st.lists(st.fractions(-2, 2, max_denominator=4), min_size=6, max_size=6))
def test_reweight_keeps_ranks(seed, w):
    c = random_complex(np.random.default_rng(seed), 6)
    assert cohomology_ranks(reweight(c, w)).ranks == cohomology_ranks(c).ranks


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_basis_change_keeps_ranks(seed):
    rng = np.random.default_rng(seed)
    c = random_complex(rng, 6)
    P, Pinv = random_basis_change(rng, c.degrees)
    assert P @ Pinv == LambdaMatrix.identity(len(c))
    d = GradedComplex(c.generators, P @ c.differential @ Pinv, c.ring)
    assert cohomology_ranks(d).ranks == cohomology_ranks(c).ranks


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_specialization_of_reweighted_complexes(seed):
    c = random_monotone_complex(np.random.default_rng(seed))
    assert cohomology_ranks(c, "rational-u").ranks == cohomology_ranks(c, "integer-at-q1").ranks


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from([2, 3, 4, 6]), st.integers(1, 2))
def test_mf_cohomology_against_enumeration(seed, w, rank):
    m = random_factorization(np.random.default_rng(seed), w, rank)
    assert mf_verify(m)
    H = mf_cohomology(m)
    assert brute_quotient_profile(m.d0, m.d1, w) == _order_profile(H.invariants[0])
    assert brute_quotient_profile(m.d1, m.d0, w) == _order_profile(H.invariants[1])


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from([2, 3, 6]), st.integers(1, 2))
def test_mf_cohomology_is_conjugation_invariant(seed, w, rank):
    rng = np.random.default_rng(seed)
    m = random_factorization(rng, w, rank)
    P = sympy.Matrix(rank, rank, lambda i, j: int(i == j))
    Q = sympy.Matrix(P)
    for _ in range(4):
        i, j = rng.choice(rank, 2, replace=True)
        if i != j:
            P = P.elementary_row_op("n->n+km", row=int(i), k=int(rng.integers(-2, 3)), row2=int(j))
            Q = Q.elementary_row_op("n->n+km", row=int(j), k=int(rng.integers(-2, 3)), row2=int(i))
    m2 = m.conjugate(np.array(P.tolist(), dtype=object), np.array(Q.tolist(), dtype=object))
    assert mf_verify(m2)
    assert mf_cohomology(m2).invariants == mf_cohomology(m).invariants


def test_quotient_invariants_beyond_factorizations():
    # arbitrary integer maps with A B = 0 mod n, checked against enumeration
    rng = np.random.default_rng(5)
    checked = 0
    for _ in range(200):
        n = int(rng.choice([2, 3, 4, 6]))
        A = rng.integers(0, n, size=(2, 2))
        B = rng.integers(0, n, size=(2, 2))
        if np.any(A.dot(B) % n):
            continue
        checked += 1
        assert brute_quotient_profile(A, B, n) == _order_profile(quotient_invariants(A, B, n))
    assert checked > 10


# ------------------------------------------------------------ io

@settings(max_examples=20, deadline=None)
@given(seeds)
def test_io_round_trips(seed):
    rng = np.random.default_rng(seed)
    d = random_cone_data(rng, max_gens=5)
    c = double_cone(d)
    assert complex_from_json(complex_to_json(c)) == c
    back = cone_data_from_json(cone_data_to_json(d))
    assert back.f == d.f and back.k == d.k and back.h == d.h and back.C1 == d.C1
    m = random_factorization(rng, 6, 2)
    m2 = mf_from_json(mf_to_json(m))
    assert np.array_equal(m2.d0, m.d0) and np.array_equal(m2.d1, m.d1) and m2.w == m.w


def test_periodic_complex_wraps_degrees():
    c = int_complex([0, 3], [[0, 2], [1, 0]], period=2)
    assert [g.degree for g in c.generators] == [0, 1]
    assert not verify_complex(c)
    c = int_complex([0, 3], [[0, 0], [2, 0]], period=2)
    assert verify_complex(c)
    assert cohomology_ranks(c, "integer-at-q1").torsion == {1: [2]}
