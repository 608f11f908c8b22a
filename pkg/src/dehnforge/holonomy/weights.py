"""Weight arithmetic for SU(r) and the alcove of a unitary matrix.

Weights are vectors of ``r`` rationals summing to zero; ``exp(xi)`` is
``diag(e^{2 pi i xi_1}, ..., e^{2 pi i xi_r})``.  The fundamental alcove is
``xi_1 >= ... >= xi_r`` with ``xi_1 - xi_r <= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.stats import unitary_group

from .su2 import SU2Error


@dataclass(frozen=True)
class WeightVector:
    coordinates: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(x) for x in self.coordinates)
        if len(coords) < 2:
            raise SU2Error("rank parameter r must be at least 2")
        if sum(coords) != 0:
            raise SU2Error("weight coordinates must sum to zero, got %s" % sum(coords))
        object.__setattr__(self, "coordinates", coords)

    @property
    def r(self) -> int:
        return len(self.coordinates)

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a + b for a, b in zip(self.coordinates, other.coordinates)))

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(tuple(a - b for a, b in zip(self.coordinates, other.coordinates)))

    def scale(self, s) -> "WeightVector":
        s = Fraction(s)
        return WeightVector(tuple(s * a for a in self.coordinates))

    def as_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.coordinates])

    def su2_label(self) -> Fraction:
        """For ``r = 2`` the weight ``(mu, -mu)`` corresponds to the alcove value ``mu``."""
        if self.r != 2:
            raise SU2Error("rank-1 identification needs r = 2")
        return abs(self.coordinates[0])

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.coordinates) + ")"


def sur_weights(r: int, k: int) -> WeightVector:
    """``omega_k``: ``k`` entries ``(r-k)/r`` followed by ``r-k`` entries ``-k/r``."""
    if r < 2 or not 0 <= k <= r:
        raise SU2Error("need r >= 2 and 0 <= k <= r, got r=%d k=%d" % (r, k))
    return WeightVector(tuple([Fraction(r - k, r)] * k + [Fraction(-k, r)] * (r - k)))


def kr_labels(r: int, k: int) -> tuple[WeightVector, WeightVector]:
    """``((omega_k + omega_{k+1}) / 2, (omega_{k+2} + omega_k) / 2)``."""
    if k < 0 or k + 2 > r:
        raise SU2Error("need 0 <= k and k + 2 <= r, got r=%d k=%d" % (r, k))
    wk = sur_weights(r, k)
    return (wk + sur_weights(r, k + 1)).scale(Fraction(1, 2)), \
        (sur_weights(r, k + 2) + wk).scale(Fraction(1, 2))


def simple_root(r: int, i: int) -> WeightVector:
    """``alpha_i = e_i - e_{i+1}`` (1-based)."""
    if not 1 <= i < r:
        raise SU2Error("simple root index %d out of range for r=%d" % (i, r))
    v = [Fraction(0)] * r
    v[i - 1], v[i] = Fraction(1), Fraction(-1)
    return WeightVector(tuple(v))


# ---------------------------------------------------------------- SU(r) alcove

def exp_weight(xi) -> np.ndarray:
    xi = xi.as_array() if isinstance(xi, WeightVector) else np.asarray(xi, dtype=float)
    return np.diag(np.exp(2j * np.pi * xi))


def alcove_point(g: np.ndarray) -> np.ndarray:
    """The point of the fundamental alcove whose exponential is conjugate to ``g``.

    Phases in ``[0, 1)`` sum to an integer ``s``; taking 1 off the ``s``
    largest gives sum zero and spread at most 1, and re-sorting finishes.
    """
    phases = np.mod(np.angle(np.linalg.eigvals(g)) / (2 * np.pi), 1.0)
    phases = np.sort(phases)[::-1]
    s = int(round(phases.sum()))
    phases[:s] -= 1.0
    phases -= phases.sum() / phases.size
    return np.sort(phases)[::-1]


def segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    d = b - a
    t = float(np.clip((p - a) @ d / (d @ d), 0.0, 1.0))
    return float(np.linalg.norm(p - (a + t * d)))


def _class_square_segment() -> tuple[np.ndarray, np.ndarray]:
    w1 = sur_weights(3, 1)
    a1 = simple_root(3, 1)
    return (w1 + a1.scale(Fraction(-1, 2))).as_array(), w1.as_array()


def class_square_distance(g: np.ndarray, h: np.ndarray) -> float:
    a, b = _class_square_segment()
    return segment_distance(alcove_point(g @ h), a, b)


def sample_su3_class(xi, rng: np.random.Generator) -> np.ndarray:
    U = unitary_group.rvs(3, random_state=rng)
    return U @ exp_weight(xi) @ U.conj().T


def class_square_endpoints() -> tuple[float, float]:
    """Distances for ``g^2`` (landing on ``omega_1``) and for
    ``exp(omega_1/2) exp(s_1 omega_1/2)`` (landing on ``omega_2/2``)."""
    half = sur_weights(3, 1).scale(Fraction(1, 2))
    c = half.coordinates
    swapped = WeightVector((c[1], c[0], c[2]))
    g = exp_weight(half)
    return class_square_distance(g, g), class_square_distance(g, exp_weight(swapped))


def class_square_segment_check(samples: int = 500, seed=0) -> float:
    """Largest distance from the segment ``omega_1 + [-1/2, 0] alpha_1`` of the
    alcove points of ``g h`` with ``g, h`` random in the class of ``exp(omega_1/2)``."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    half = sur_weights(3, 1).scale(Fraction(1, 2))
    worst = 0.0
    for _ in range(samples):
        g = sample_su3_class(half, rng)
        h = sample_su3_class(half, rng)
        worst = max(worst, class_square_distance(g, h))
    return worst
