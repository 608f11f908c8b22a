import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import solve_ivp
from scipy.stats import unitary_group

from dehnforge.twist_local import (AngleProfile, CotangentPoint, FiberedPoint, MaslovError, TwistError,
                                   antipodal_defect, concatenate, count_twisted_intersections,
                                   det_squared_phase, equivariance_check, fiber_scale, fibered_twist,
                                   inverse_model_twist, line_rotation, maslov_index_loop, model_twist,
                                   random_point, reverse, section_index, sqrt_z_frame, support_defect,
                                   symplectic_check, symplectic_defect, threshold_delta)

seeds = st.integers(0, 2 ** 32 - 1)
dims = st.sampled_from([1, 2, 3])
profiles = st.builds(AngleProfile, st.floats(0.2, 3.0), st.floats(0.3, 4.0))


# ------------------------------------------------------------ profile

@given(profiles)
def test_profile_invariants(a):
    d = a.invariant_defects()
    assert d["vanishes_beyond_eps"] < 1e-15
    assert d["reflection"] < 1e-12
    assert d["slope_at_zero"] < 1e-15
    assert d["monotone"] == 0.0
    assert a.angle(0.0) == pytest.approx(math.pi, abs=1e-15)
    assert abs(a.angle(a.support)) < 1e-12
    assert a.angle(1.001 * a.support) == 0.0


def test_profile_derivatives_agree_with_differences():
    a = AngleProfile(0.7)
    t = np.linspace(-1.0, 1.0, 41)
    h = 1e-6
    assert np.allclose((a.zeta(t + h) - a.zeta(t - h)) / (2 * h), a.dzeta(t), atol=1e-8)
    assert np.allclose((a.dzeta(t + h) - a.dzeta(t - h)) / (2 * h), a.d2zeta(t), atol=1e-6)


def test_profile_rejects_nonpositive_parameters():
    with pytest.raises(ValueError):
        AngleProfile(0.0)
    with pytest.raises(ValueError):
        AngleProfile(1.0, -1.0)


# ------------------------------------------------------------ the map

def hamiltonian_flow(p: CotangentPoint, a: AngleProfile) -> CotangentPoint:
    """Time-2 pi flow of ``zeta(rho)`` with ``rho = |x wedge y|``, integrated in the ambient space."""
    n = len(p.x)

    def rhs(_, v):
        x, y = v[:n], v[n:]
        xx, yy, xy = x @ x, y @ y, x @ y
        rho = math.sqrt(max(xx * yy - xy * xy, 0.0))
        g = float(a.dzeta(a.delta * rho)) / rho
        dHdx = g * (yy * x - xy * y)
        dHdy = g * (xx * y - xy * x)
        return np.concatenate([dHdy, -dHdx])

    sol = solve_ivp(rhs, (0.0, 2 * math.pi), p.stacked(), rtol=1e-12, atol=1e-13, method="DOP853")
    return CotangentPoint.project(sol.y[:n, -1], sol.y[n:, -1])


@settings(max_examples=20, deadline=None)
@given(seeds, dims, st.floats(0.01, 0.99))
def test_twist_is_the_hamiltonian_flow(seed, c, frac):
    a = AngleProfile(1.0)
    p = random_point(np.random.default_rng(seed), c, frac * a.support)
    want = hamiltonian_flow(p, a)
    got = model_twist(p, a)
    assert np.allclose(got.x, want.x, atol=1e-9) and np.allclose(got.y, want.y, atol=1e-9)


@settings(max_examples=50)
@given(seeds, dims, profiles, st.floats(0.0, 2.0))
def test_inverse_and_norm(seed, c, a, frac):
    p = random_point(np.random.default_rng(seed), c, frac * a.support)
    t = model_twist(p, a)
    t.validate(1e-12)
    assert abs(t.norm - p.norm) < 1e-12
    back = inverse_model_twist(t, a)
    assert np.allclose(back.x, p.x, atol=1e-9) and np.allclose(back.y, p.y, atol=1e-9)


@settings(max_examples=50)
@given(seeds, dims, st.floats(0.2, 3.0), st.floats(0.3, 4.0), st.floats(0.0, 1.5))
def test_rescaling_is_conjugation_by_fiber_scaling(seed, c, eps, delta, frac):
    base = AngleProfile(eps)
    a = base.rescaled(delta)
    p = random_point(np.random.default_rng(seed), c, frac * a.support)
    lhs = model_twist(p, a)
    rhs = fiber_scale(model_twist(fiber_scale(p, delta), base), 1 / delta)
    assert np.allclose(lhs.x, rhs.x, atol=1e-9) and np.allclose(lhs.y, rhs.y, atol=1e-9)


@settings(max_examples=50)
@given(st.floats(0, 2 * math.pi), st.floats(-1.2, 1.2).filter(lambda s: s != 0), profiles)
def test_annulus_rotation(theta, s, a):
    # on T*S^1 with signed fiber coordinate s the twist is theta -> theta + 2 pi zeta'(delta s)
    x = np.array([math.cos(theta), math.sin(theta)])
    y = s * np.array([-math.sin(theta), math.cos(theta)])
    t = model_twist(CotangentPoint(x, y), a)
    phi = theta + 2 * math.pi * float(a.dzeta(a.delta * s))
    assert np.allclose(t.x, [math.cos(phi), math.sin(phi)], atol=1e-9)
    assert np.allclose(t.y, s * np.array([-math.sin(phi), math.cos(phi)]), atol=1e-9)


@settings(max_examples=20)
@given(seeds, dims)
def test_continuity_at_zero_section(seed, c):
    a = AngleProfile(1.0)
    rng = np.random.default_rng(seed)
    p = random_point(rng, c, 1.0)
    zero = model_twist(CotangentPoint(p.x, 0 * p.y), a)
    assert np.allclose(zero.x, -p.x) and not np.any(zero.y)
    gaps = [np.linalg.norm(model_twist(fiber_scale(p, s), a).stacked() - zero.stacked())
            for s in (1e-2, 1e-4, 1e-6, 1e-8)]
    assert gaps == sorted(gaps, reverse=True) and gaps[-1] < 1e-7


def test_fibered_twist_keeps_base():
    a = AngleProfile(1.0)
    p = random_point(np.random.default_rng(0), 2, 0.3)
    fp = fibered_twist(FiberedPoint([1.25, -0.5], p), a)
    assert np.allclose(fp.b, [0.25, 0.5])
    assert np.allclose(fp.p.x, model_twist(p, a).x)


def test_cotangent_point_rejects_bad_input():
    with pytest.raises(ValueError):
        CotangentPoint(np.array([1.0, 0.0]), np.array([1.0, 0.0])).validate()
    with pytest.raises(ValueError):
        CotangentPoint(np.array([2.0, 0.0]), np.array([0.0, 1.0])).validate()


# ------------------------------------------------------------ the checks

@pytest.mark.parametrize("c", [1, 2, 3])
def test_symplectic(c):
    a = AngleProfile(1.0)
    assert symplectic_check(a, c, samples=30, seed=c) < 1e-6


def test_symplectic_check_catches_a_non_symplectic_map(monkeypatch):
    # a fiber dilation is not symplectic; substitute it for the twist
    import dehnforge.twist_local.twist as tw
    p = random_point(np.random.default_rng(3), 2, 0.4)
    a = AngleProfile(1.0)
    monkeypatch.setattr(tw, "model_twist_arrays", lambda x, y, a, inverse=False: (x, 2 * y))
    assert symplectic_defect(p, a) > 0.5


@pytest.mark.parametrize("c", [1, 2, 3])
def test_other_checks(c):
    a = AngleProfile(1.0)
    assert antipodal_defect(a, c, 50, seed=c) < 1e-12
    assert support_defect(a, c, 50, seed=c) < 1e-12
    eq, norm = equivariance_check(a, c, 50, seed=c)
    assert eq < 1e-9 and norm < 1e-12


# ------------------------------------------------------------ intersections

def random_pair(rng, c):
    v0 = rng.standard_normal(c + 1)
    v1 = rng.standard_normal(c + 1)
    return v0 / np.linalg.norm(v0), v1 / np.linalg.norm(v1)


@settings(max_examples=25, deadline=None)
@given(seeds, dims, st.floats(1.0, 10.0))
def test_one_intersection_beyond_threshold(seed, c, factor):
    a = AngleProfile(1.0)
    v0, v1 = random_pair(np.random.default_rng(seed), c)
    d = math.acos(np.clip(v0 @ v1, -1, 1))
    if not 1e-3 < d < math.pi - 1e-3:
        return
    delta = factor * threshold_delta(a, v0, v1)
    res = count_twisted_intersections(v0, v1, a.rescaled(delta))
    assert res.count == 1 and max(res.residuals) < 1e-10
    assert res.points[0].norm <= a.rescaled(delta).support


def test_intersection_preconditions():
    a = AngleProfile(1.0)
    v = np.array([1.0, 0.0, 0.0])
    with pytest.raises(TwistError):
        count_twisted_intersections(v, v, a)
    with pytest.raises(TwistError):
        count_twisted_intersections(v, -v, a)
    with pytest.raises(TwistError):
        count_twisted_intersections(2 * v, np.array([0.0, 1.0, 0.0]), a)


# ------------------------------------------------------------ Maslov

@pytest.mark.parametrize("c,loop,section", [(1, 2, 0), (2, 3, 1), (3, 4, 2), (5, 6, 4)])
def test_sqrt_z_indices(c, loop, section):
    assert maslov_index_loop(sqrt_z_frame(c)) == loop
    assert section_index(c) == section


def diagonal_loop(ks, A):
    """``A diag(e^{2 pi i k t})``; each full turn of a line adds 2 to the index."""
    return lambda t: A @ np.diag(np.exp(2j * np.pi * t * np.asarray(ks)))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.lists(st.integers(-3, 3), min_size=n, max_size=n),
                                                      st.lists(st.integers(-3, 3), min_size=n, max_size=n))),
       seeds)
def test_maslov_additive_and_odd(kl, seed):
    ks, ls = kl
    n = len(ks)
    A = unitary_group.rvs(n, random_state=seed) if n > 1 else np.array([[np.exp(1j * (seed % 7))]])
    a, b = diagonal_loop(ks, A), diagonal_loop(ls, A)
    ia, ib = maslov_index_loop(a), maslov_index_loop(b)
    assert ia == 2 * sum(ks) and ib == 2 * sum(ls)
    assert maslov_index_loop(concatenate(a, b)) == ia + ib
    assert maslov_index_loop(reverse(a)) == -ia


def test_maslov_errors():
    with pytest.raises(MaslovError):
        det_squared_phase(np.array([[1.0, 1j], [0.0, 1.0]]))
    with pytest.raises(MaslovError):
        det_squared_phase(np.zeros((2, 2)))
    with pytest.raises(MaslovError):
        maslov_index_loop(lambda t: np.array([[np.exp(0.5j * np.pi * t)]]))
    assert maslov_index_loop(line_rotation(3)) == 6
