import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix

from dehnforge import pl_formula as pl

seeds = st.integers(0, 2 ** 32 - 1)


def unimodular(rng, n):
    if n == 0:
        return np.zeros((0, 0), dtype=object), np.zeros((0, 0), dtype=object)
    m = Matrix.eye(n)
    for _ in range(3 * n):
        i, j = rng.choice(n, 2, replace=False) if n > 1 else (0, 0)
        if i != j:
            m = m.elementary_row_op("n->n+km", row=int(i), k=int(rng.integers(-2, 3)), row2=int(j))
    return np.array(m.tolist(), dtype=object), np.array(m.inv().tolist(), dtype=object)


def random_slant(rng, c):
    """Random ranks in two degrees with integer slant maps of shift +1 / -1."""
    HM = pl.GradedGroup({1: int(rng.integers(1, 4)), 2: int(rng.integers(0, 3))})
    HB = pl.GradedGroup({0: int(rng.integers(1, 3)), 1: int(rng.integers(0, 2))})
    C = {d: rng.integers(-2, 3, size=(HM.rank(d + 1), HB.rank(d))).astype(object) for d in HB.degrees()}
    Ct = {d: rng.integers(-2, 3, size=(HB.rank(d - 1), HM.rank(d))).astype(object) for d in HM.degrees()}
    return pl.SlantData(HM, HB, pl.GradedMatrix(1, C), pl.GradedMatrix(-1, Ct), c)


def test_sign_table():
    assert [pl.sign(c) for c in range(1, 9)] == [-1, 1, 1, -1, -1, 1, 1, -1]
    with pytest.raises(pl.SlantError):
        pl.sign(0)


@given(st.integers(1, 200))
def test_sign_has_period_four(c):
    assert pl.sign(c) == pl.sign(c + 4)
    assert pl.sign(c) == (-1) ** ((c + 1) * (c + 2) // 2)


def test_zero_slant_is_identity():
    s = pl.slant_from_json(pl.slant_to_json(pl.torus_slant_data(1, 0)))
    z = pl.SlantData(s.HM, s.HB, pl.GradedMatrix(1, {}), pl.GradedMatrix(-1, {}), 3)
    for d, m in pl.monodromy_matrix(z).items():
        assert np.array_equal(m, np.eye(m.shape[0], dtype=int))


@pytest.mark.parametrize("pq", [(1, 0), (0, 1), (1, 1), (2, 1), (1, -2), (3, 2), (-1, 3)])
def test_torus_matches_the_oracle(pq):
    o = pl.fix_orientation()
    assert o == 1
    got = pl.monodromy_matrix(pl.torus_slant_data(*pq, o))
    assert np.array_equal(got[1], pl.torus_twist_oracle(*pq))
    assert np.array_equal(got[0], [[1]]) and np.array_equal(got[2], [[1]])


def test_torus_transvection():
    # alpha -> alpha - (alpha . C) C with the pairing fixed by the oracle
    m = pl.monodromy_matrix(pl.torus_slant_data(2, 1))[1]
    for a in ([1, 0], [0, 1], [3, -5]):
        a = np.array(a)
        dot = a[0] * 1 - a[1] * 2
        assert np.array_equal(m.dot(a), a - dot * np.array([2, 1]))
    rep = pl.unipotency_check(pl.torus_slant_data(2, 1))
    assert rep.is_unipotent and rep.nilpotency_index == 2 and rep.determinant == 1


def test_non_primitive_curve():
    with pytest.raises(pl.SlantError):
        pl.torus_slant_data(2, 2)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 8))
def test_naturality(seed, c):
    rng = np.random.default_rng(seed)
    s = random_slant(rng, c)
    P = {d: unimodular(rng, s.HB.rank(d)) for d in range(-1, 4)}
    Q = {d: unimodular(rng, s.HM.rank(d)) for d in range(-1, 4)}
    C2 = {d: Q[d + 1][0].dot(s.C.block(d, s.HM.rank(d + 1), s.HB.rank(d))).dot(P[d][1]) for d in s.HB.degrees()}
    Ct2 = {d: P[d - 1][0].dot(s.Ct.block(d, s.HB.rank(d - 1), s.HM.rank(d))).dot(Q[d][1])
           for d in s.HM.degrees()}
    s2 = pl.SlantData(s.HM, s.HB, pl.GradedMatrix(1, C2), pl.GradedMatrix(-1, Ct2), c)
    m, m2 = pl.monodromy_matrix(s), pl.monodromy_matrix(s2)
    for d in m:
        assert np.array_equal(m2[d], Q[d][0].dot(m[d]).dot(Q[d][1]))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 8))
def test_inverse_when_square_zero(seed, c):
    rng = np.random.default_rng(seed)
    # [C^t][C] = 0 when C^t pairs to zero with the image of C
    HM = pl.GradedGroup({1: 2})
    HB = pl.GradedGroup({0: 1})
    v = rng.integers(-3, 4, size=2)
    C = pl.GradedMatrix(1, {0: np.array([[v[0]], [v[1]]], dtype=object)})
    Ct = pl.GradedMatrix(-1, {1: int(rng.integers(-2, 3)) * np.array([[v[1], -v[0]]], dtype=object)})
    s = pl.SlantData(HM, HB, C, Ct, c)
    assert not any(x for x in s.inner_composite(0).flat)
    m = pl.monodromy_matrix(s)[1]
    inv = pl.inverse_monodromy_when_square_zero(s)[1]
    assert np.array_equal(m.dot(inv), np.eye(2, dtype=int))
    rep = pl.unipotency_check(s)
    assert rep.is_unipotent and rep.nilpotency_index <= 2 and rep.determinant == 1


def test_shape_errors():
    HM, HB = pl.GradedGroup({1: 2}), pl.GradedGroup({0: 1})
    with pytest.raises(pl.SlantError):
        pl.SlantData(HM, HB, pl.GradedMatrix(1, {0: np.zeros((3, 1))}), pl.GradedMatrix(-1, {}), 1)
    with pytest.raises(pl.SlantError):
        pl.SlantData(HM, HB, pl.GradedMatrix(1, {}), pl.GradedMatrix(0, {}), 1)
    with pytest.raises(pl.SlantError):
        pl.SlantData(HM, HB, pl.GradedMatrix(1, {}), pl.GradedMatrix(-1, {}), 0)
    with pytest.raises(pl.SlantError):
        pl.SlantData(HM, HB, pl.GradedMatrix(1, {0: np.array([[0.5], [1]])}), pl.GradedMatrix(-1, {}), 1)


def test_triangle_examples():
    a = {0: 1, 1: 2}
    c = {0: 2, 2: 1}
    split = {d: a.get(d, 0) + c.get(d, 0) for d in set(a) | set(c)}
    assert pl.triangle_rank_consistency(a, split, c)
    assert not pl.triangle_rank_consistency({0: 1}, {}, {0: 2})
    # Z -> 0 -> Z[1]: the connecting map C_{-1} -> A_0 carries everything
    assert pl.triangle_rank_consistency({0: 1}, {}, {-1: 1})
    assert pl.triangle_rank_consistency({0: 1}, {}, {1: 1}, period=2)
    assert not pl.triangle_rank_consistency({0: 1}, {}, {0: 1}, period=2)


@given(st.lists(st.integers(0, 3), min_size=9, max_size=9))
def test_triangle_from_map_ranks(ranks):
    # spot i of A0 B0 C0 A1 ... has dimension r_{i-1} + r_i for map ranks r_i, r_{-1} = r_8 = 0
    r = [0] + ranks[:8] + [0]
    dims = [r[i] + r[i + 1] for i in range(9)]
    a, b, c = ({d: dims[3 * d + k] for d in range(3)} for k in range(3))
    assert pl.triangle_rank_consistency(a, b, c)


@given(st.lists(st.integers(0, 3), min_size=9, max_size=9))
def test_triangle_euler_characteristic(ranks):
    a, b, c = ({d: ranks[3 * k + d] for d in range(3)} for k in range(3))
    chi = sum((-1) ** d * (a[d] - b[d] + c[d]) for d in range(3))
    if chi != 0:
        assert not pl.triangle_rank_consistency(a, b, c)


def test_json_round_trip():
    s = pl.torus_slant_data(3, 2)
    data = pl.slant_to_json(s)
    assert data["C"] == {"degree_shift": 1, "blocks": {"0": [[3], [2]]}}
    back = pl.slant_from_json(data)
    assert all(np.array_equal(a, b) for a, b in zip(pl.monodromy_matrix(back).values(),
                                                     pl.monodromy_matrix(s).values()))
    js = pl.monodromy_to_json(pl.monodromy_matrix(s))
    assert js["blocks"]["1"] == [[-5, 9], [-4, 7]]
