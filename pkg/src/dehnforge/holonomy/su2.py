"""SU(2) as unit quaternions.

``(a, b, c, d)`` is the matrix ``[[a+bi, c+di], [-c+di, a-bi]]``; products
follow Hamilton's rule, which matches matrix multiplication under this
identification.  Pure quaternions ``(0, v)`` stand for elements of su(2).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

_ATOL = 1e-12


class SU2Error(ValueError):
    pass


def qmul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ])


def qconj(p: np.ndarray) -> np.ndarray:
    return np.array([p[0], -p[1], -p[2], -p[3]])


def qexp(v: np.ndarray) -> np.ndarray:
    """``exp`` of the pure quaternion with vector part ``v``."""
    v = np.asarray(v, dtype=float)
    r = float(np.linalg.norm(v))
    if r == 0:
        return np.array([1.0, 0.0, 0.0, 0.0])
    return np.concatenate([[math.cos(r)], math.sin(r) * v / r])


def prod(qs: Sequence[np.ndarray]) -> np.ndarray:
    out = np.array([1.0, 0.0, 0.0, 0.0])
    for q in qs:
        out = qmul(out, q)
    return out


class SU2Element:
    __slots__ = ("q",)

    def __init__(self, q):
        q = np.asarray(q, dtype=float).reshape(4)
        if abs(np.linalg.norm(q) - 1.0) > 1e-9:
            raise SU2Error("quaternion has norm %.12g, not 1" % np.linalg.norm(q))
        self.q = q

    @classmethod
    def identity(cls) -> "SU2Element":
        return cls([1.0, 0.0, 0.0, 0.0])

    @classmethod
    def minus_identity(cls) -> "SU2Element":
        return cls([-1.0, 0.0, 0.0, 0.0])

    @classmethod
    def normalized(cls, q) -> "SU2Element":
        q = np.asarray(q, dtype=float)
        return cls(q / np.linalg.norm(q))

    @classmethod
    def from_matrix(cls, m) -> "SU2Element":
        m = np.asarray(m, dtype=complex)
        return cls([m[0, 0].real, m[0, 0].imag, m[0, 1].real, m[0, 1].imag])

    @classmethod
    def exp(cls, v) -> "SU2Element":
        return cls(qexp(v))

    def matrix(self) -> np.ndarray:
        a, b, c, d = self.q
        return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])

    def __matmul__(self, other: "SU2Element") -> "SU2Element":
        return SU2Element.normalized(qmul(self.q, other.q))

    __mul__ = __matmul__

    def inv(self) -> "SU2Element":
        return SU2Element(qconj(self.q))

    def conj_by(self, h: "SU2Element") -> "SU2Element":
        """``h g h^-1``."""
        return h @ self @ h.inv()

    def trace(self) -> float:
        return 2.0 * float(self.q[0])

    def is_central(self, tol: float = _ATOL) -> bool:
        return float(np.linalg.norm(self.q[1:])) <= tol

    def distance(self, other: "SU2Element") -> float:
        """Frobenius distance of the matrices."""
        return math.sqrt(2.0) * float(np.linalg.norm(self.q - other.q))

    def norm_defect(self) -> float:
        return abs(float(np.linalg.norm(self.q)) - 1.0)

    def __eq__(self, other):
        return isinstance(other, SU2Element) and bool(np.array_equal(self.q, other.q))

    def __hash__(self):
        return hash(tuple(self.q))

    def __repr__(self):
        return "SU2Element(%s)" % ", ".join("%.6g" % x for x in self.q)


# fixed elements used throughout
I = SU2Element.identity()
MINUS_I = SU2Element.minus_identity()
# [[0, i], [i, 0]]
N = SU2Element([0.0, 0.0, 0.0, 1.0])


def alcove(g: SU2Element) -> float:
    """``arccos(tr g / 2) / 2 pi`` in ``[0, 1/2]``, computed via atan2 so it
    stays accurate near the central elements."""
    return math.atan2(float(np.linalg.norm(g.q[1:])), float(g.q[0])) / (2 * math.pi)


def as_label(mu) -> float:
    if isinstance(mu, str):
        mu = Fraction(mu)
    x = float(mu)
    if not (0.0 <= x <= 0.5):
        raise SU2Error("alcove value %r is outside [0, 1/2]" % (mu,))
    return x


def class_element(mu, axis) -> SU2Element:
    """``cos(2 pi mu) + sin(2 pi mu) n`` for the unit vector ``n = axis``."""
    ang = 2 * math.pi * as_label(mu)
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    return SU2Element(np.concatenate([[math.cos(ang)], math.sin(ang) * axis]))


def random_axis(rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def sample_class(mu, seed=None) -> SU2Element:
    """Uniform random conjugate of ``diag(e^{2 pi i mu}, e^{-2 pi i mu})``.

    Conjugation by SU(2) rotates the vector part through SO(3), so the
    conjugacy class is the sphere of axes and Haar measure is uniform on it.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    x = as_label(mu)
    if x in (0.0, 0.5):
        return I if x == 0.0 else MINUS_I
    return class_element(x, random_axis(rng))


def adjoint(g: SU2Element) -> np.ndarray:
    """The rotation ``v -> vec(g v g^-1)`` of R^3 = su(2)."""
    out = np.empty((3, 3))
    for k in range(3):
        e = np.zeros(4)
        e[k + 1] = 1.0
        out[:, k] = qmul(qmul(g.q, e), qconj(g.q))[1:]
    return out
