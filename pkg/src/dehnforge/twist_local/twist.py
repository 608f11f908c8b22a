"""Model Dehn twist on T*S^c, its fibered extension over a torus base, and
numerical checks of its defining properties.

Points of T*S^c sit in R^(c+1) x R^(c+1) as pairs (x, y) with |x| = 1 and
x . y = 0.  The twist rotates (x, y/|y|) by the angle sigma(|y|) and leaves
|y| fixed; on the zero section it is the antipodal map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import brentq
from scipy.stats import special_ortho_group

from .profile import AngleProfile

_ATOL = 1e-12


class TwistError(ValueError):
    pass


@dataclass(frozen=True)
class CotangentPoint:
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.shape != y.shape or x.ndim != 1:
            raise TwistError("x and y must be vectors of equal length")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def dim(self) -> int:
        """The sphere dimension c."""
        return self.x.size - 1

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.y))

    def defects(self) -> tuple[float, float]:
        return abs(np.linalg.norm(self.x) - 1.0), abs(float(self.x @ self.y))

    def validate(self, tol: float = _ATOL) -> None:
        a, b = self.defects()
        if a > tol or b > tol:
            raise TwistError("not a cotangent vector: |x| - 1 = %.3g, x.y = %.3g" % (a, b))

    def stacked(self) -> np.ndarray:
        return np.concatenate([self.x, self.y])

    @classmethod
    def from_stacked(cls, v) -> "CotangentPoint":
        v = np.asarray(v, dtype=float)
        n = v.size // 2
        return cls(v[:n], v[n:])

    @classmethod
    def project(cls, x, y) -> "CotangentPoint":
        """Nearest-point retraction onto T*S^c."""
        x = np.asarray(x, dtype=float)
        x = x / np.linalg.norm(x)
        y = np.asarray(y, dtype=float)
        return cls(x, y - (x @ y) * x)


@dataclass(frozen=True)
class FiberedPoint:
    b: np.ndarray
    p: CotangentPoint

    def __post_init__(self):
        b = np.mod(np.atleast_1d(np.asarray(self.b, dtype=float)), 1.0)
        object.__setattr__(self, "b", b)


def _rotate(x, y, sigma):
    """Rotate ``(x, y)`` by ``sigma`` in the plane of ``x`` and ``y/|y|``.

    Works on stacked arrays of shape ``(..., n)``; rows with ``y = 0`` are
    sent to ``(-x, 0)`` when ``sigma = pi`` there, as it always is.
    """
    t = np.linalg.norm(y, axis=-1, keepdims=True)
    safe = np.where(t > 0, t, 1.0)
    yhat = np.where(t > 0, y / safe, 0.0)
    c = np.cos(sigma)[..., None]
    s = np.sin(sigma)[..., None]
    xn = c * x + s * yhat
    yn = -t * s * x + c * y
    zero = (t == 0)
    xn = np.where(zero, -x, xn)
    yn = np.where(zero, 0.0, yn)
    return xn, yn


def model_twist_arrays(x, y, a: AngleProfile, inverse: bool = False):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    sigma = a.angle(np.linalg.norm(y, axis=-1))
    return _rotate(x, y, -sigma if inverse else sigma)


def model_twist(p: CotangentPoint, a: AngleProfile) -> CotangentPoint:
    x, y = model_twist_arrays(p.x, p.y, a)
    return CotangentPoint(x, y)


def inverse_model_twist(p: CotangentPoint, a: AngleProfile) -> CotangentPoint:
    x, y = model_twist_arrays(p.x, p.y, a, inverse=True)
    return CotangentPoint(x, y)


def fibered_twist(fp: FiberedPoint, a: AngleProfile) -> FiberedPoint:
    return FiberedPoint(fp.b, model_twist(fp.p, a))


def fiber_scale(p: CotangentPoint, s: float) -> CotangentPoint:
    return CotangentPoint(p.x, s * p.y)


# ---------------------------------------------------------------- sampling

def random_point(rng: np.random.Generator, c: int, norm: float) -> CotangentPoint:
    x = rng.standard_normal(c + 1)
    x /= np.linalg.norm(x)
    y = rng.standard_normal(c + 1)
    y -= (x @ y) * x
    y *= norm / np.linalg.norm(y)
    return CotangentPoint(x, y)


def random_points(rng, c: int, samples: int, lo: float, hi: float) -> list[CotangentPoint]:
    return [random_point(rng, c, float(rng.uniform(lo, hi))) for _ in range(samples)]


# ---------------------------------------------------------------- checks

def tangent_basis(p: CotangentPoint) -> np.ndarray:
    """Orthonormal basis (columns) of T_p(T*S^c) inside R^(2c+2)."""
    n = p.x.size
    cons = np.zeros((2, 2 * n))
    cons[0, :n] = p.x
    cons[1, :n] = p.y
    cons[1, n:] = p.x
    return null_space(cons)


def omega(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Canonical form ``sum dx_i ^ dy_i`` on columns of ``u`` and ``v``."""
    n = u.shape[0] // 2
    return u[:n].T @ v[n:] - u[n:].T @ v[:n]


def twist_jacobian(p: CotangentPoint, a: AngleProfile, h: float = 1e-5) -> tuple[np.ndarray, np.ndarray]:
    """Central differences of the twist along the tangent basis at ``p``.

    Each direction is followed through the retraction onto T*S^c so that
    the twist is only ever evaluated on genuine cotangent vectors.  Returns
    ``(basis, images)``.
    """
    basis = tangent_basis(p)
    v0 = p.stacked()
    n = p.x.size
    cols = []
    for k in range(basis.shape[1]):
        out = []
        for s in (h, -h):
            q = CotangentPoint.project(*np.split(v0 + s * basis[:, k], [n]))
            out.append(model_twist(q, a).stacked())
        cols.append((out[0] - out[1]) / (2 * h))
    return basis, np.column_stack(cols)


def symplectic_defect(p: CotangentPoint, a: AngleProfile, h: float = 1e-5) -> float:
    basis, images = twist_jacobian(p, a, h)
    return float(np.max(np.abs(omega(images, images) - omega(basis, basis))))


def symplectic_check(a: AngleProfile, c: int, samples: int = 100, h: float = 1e-5,
                     seed=0, lo: float = 0.0, hi: float | None = None) -> float:
    """Largest symplectic defect over random points with fiber norm in ``(lo, hi)``.

    ``hi`` defaults to twice the support radius.
    """
    rng = np.random.default_rng(seed)
    hi = 2 * a.support if hi is None else hi
    worst = 0.0
    for _ in range(samples):
        t = float(rng.uniform(lo, hi))
        while t <= 0:
            t = float(rng.uniform(lo, hi))
        worst = max(worst, symplectic_defect(random_point(rng, c, t), a, h))
    return worst


def random_rotation(rng, n: int) -> np.ndarray:
    if n == 1:
        return np.eye(1)
    return special_ortho_group.rvs(n, random_state=rng)


def equivariance_check(a: AngleProfile, c: int, samples: int = 100, seed=0,
                       identity: bool = False) -> tuple[float, float]:
    """``(max |tau(Rp) - R tau(p)|, max ||y| after tau - |y||)`` over random samples."""
    rng = np.random.default_rng(seed)
    eq = norm = 0.0
    for _ in range(samples):
        p = random_point(rng, c, float(rng.uniform(0, 2 * a.support)))
        R = np.eye(c + 1) if identity else random_rotation(rng, c + 1)
        tp = model_twist(p, a)
        lhs = model_twist(CotangentPoint(R @ p.x, R @ p.y), a)
        eq = max(eq, float(np.max(np.abs(lhs.x - R @ tp.x))), float(np.max(np.abs(lhs.y - R @ tp.y))))
        norm = max(norm, abs(tp.norm - p.norm))
    return eq, norm


def antipodal_defect(a: AngleProfile, c: int, samples: int = 100, seed=0) -> float:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        p = random_point(rng, c, 0.0)
        q = model_twist(p, a)
        worst = max(worst, float(np.max(np.abs(q.x + p.x))), float(np.max(np.abs(q.y))))
    return worst


def support_defect(a: AngleProfile, c: int, samples: int = 100, seed=0) -> float:
    """Largest displacement at fiber norms between the support radius and three times it."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        p = random_point(rng, c, float(rng.uniform(a.support, 3 * a.support)))
        q = model_twist(p, a)
        worst = max(worst, float(np.max(np.abs(q.stacked() - p.stacked()))))
    return worst


# ---------------------------------------------------------------- intersections

@dataclass
class IntersectionResult:
    count: int
    points: list[CotangentPoint] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)
    untwisted: int = 0


def _check_transversal(v0, v1, tol: float) -> float:
    v0 = np.asarray(v0, dtype=float)
    v1 = np.asarray(v1, dtype=float)
    if abs(np.linalg.norm(v0) - 1) > 1e-12 or abs(np.linalg.norm(v1) - 1) > 1e-12:
        raise TwistError("v0 and v1 must be unit vectors")
    d = math.atan2(np.linalg.norm(v0 - (v0 @ v1) * v1), float(v0 @ v1))
    if d < tol:
        raise TwistError("v0 = v1: the fibers are not transversal to the twisted fiber")
    if d > math.pi - tol:
        raise TwistError("v0 and v1 are (nearly) antipodal: the angle equation is ill-conditioned")
    return d


def count_twisted_intersections(v0, v1, a: AngleProfile, grid: int = 4000,
                                tol: float = 1e-6) -> IntersectionResult:
    """Points of tau(T*_{v0}) meeting T*_{v1}.

    A point ``(v0, t w)`` with unit ``w`` is sent into the fiber over ``v1``
    exactly when ``w`` points along the geodesic toward ``v1`` and
    ``sigma(t)`` equals the distance ``d``; the other direction would need
    ``sigma = 2 pi - d``, which a profile with ``sigma <= pi`` never reaches.
    Roots of both equations are bracketed on a dense grid and polished.
    """
    v0 = np.asarray(v0, dtype=float)
    v1 = np.asarray(v1, dtype=float)
    d = _check_transversal(v0, v1, tol)
    toward = v1 - math.cos(d) * v0
    toward /= np.linalg.norm(toward)
    ts = np.linspace(0.0, a.support, grid + 1)
    sig = a.angle(ts)
    out = IntersectionResult(0)
    for target, w in ((d, toward), (2 * math.pi - d, -toward)):
        g = sig - target
        roots = [float(ts[i]) for i in np.flatnonzero(g == 0)]
        for i in np.flatnonzero(g[:-1] * g[1:] < 0):
            roots.append(brentq(lambda t: float(a.angle(t)) - target, ts[i], ts[i + 1],
                                xtol=1e-15, rtol=4 * np.finfo(float).eps))
        for t in sorted(set(roots)):
            p = CotangentPoint(v0, t * w)
            res = float(np.linalg.norm(model_twist(p, a).x - v1))
            if res < 1e-10:
                out.points.append(p)
                out.residuals.append(res)
    out.count = len(out.points)
    return out


def threshold_delta(a: AngleProfile, v0, v1, radius: float = 1.0, tol: float = 1e-6) -> float:
    """A rescaling beyond which the twisted fiber meets the other fiber once, transversally.

    Two conditions, both sufficient: the support ``eps/delta`` fits inside
    the ball of the given ``radius`` in the fiber, and the angle equation
    ``sigma(t) = dist(v0, v1)`` has a root where ``zeta''`` is strictly
    negative.  Rescaling only moves that root, so the second condition does
    not depend on ``delta``; if it fails the profile is rejected.
    """
    d = _check_transversal(v0, v1, tol)
    base = a.rescaled(1.0)
    ts = np.linspace(0.0, base.eps, 4001)
    g = base.angle(ts) - d
    idx = np.flatnonzero(g[:-1] * g[1:] <= 0)
    if idx.size == 0:
        raise TwistError("the angle equation has no root for this profile")
    for i in idx:
        t = brentq(lambda s: float(base.angle(s)) - d, ts[i], ts[i + 1]) if g[i] * g[i + 1] < 0 else ts[i]
        if not base.d2zeta(t) < 0:
            raise TwistError("the angle equation is degenerate at t = %.6g" % t)
    return a.eps / radius
