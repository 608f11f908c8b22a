"""Angle profiles for the model Dehn twist.

The Hamiltonian ``zeta`` satisfies ``zeta(t) = 0`` for ``t >= eps`` and
``zeta(-t) = zeta(t) - t``.  On ``[0, eps]`` its derivative is the quintic
smoothstep ramp ``zeta'(t) = (1 - S(t/eps)) / 2`` with
``S(s) = 6 s^5 - 15 s^4 + 10 s^3``, so ``zeta'(0) = 1/2``, ``zeta'`` is
non-increasing, ``zeta''`` vanishes at both ends and ``zeta'''(0) = 0``.
The rotation angle at fiber norm ``t`` is ``2 pi zeta'(delta t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _smoothstep(s):
    return s ** 3 * (10 - 15 * s + 6 * s ** 2)


def _smoothstep_d1(s):
    return 30 * s ** 2 * (1 - s) ** 2


def _smoothstep_d2(s):
    return 60 * s * (1 - s) * (1 - 2 * s)


def _ramp_integral(s):
    # antiderivative of 1 - S(s)
    return s - s ** 6 + 3 * s ** 5 - 2.5 * s ** 4


@dataclass(frozen=True)
class AngleProfile:
    eps: float = 1.0
    delta: float = 1.0

    def __post_init__(self):
        if not (self.eps > 0 and self.delta > 0):
            raise ValueError("eps and delta must be positive")

    @property
    def support(self) -> float:
        """Fiber norm beyond which the twist is the identity."""
        return self.eps / self.delta

    def rescaled(self, delta: float) -> "AngleProfile":
        return AngleProfile(self.eps, delta)

    # zeta and derivatives of the unscaled profile
    def zeta(self, t):
        t = np.asarray(t, dtype=float)
        a = np.abs(t)
        s = np.clip(a / self.eps, 0.0, 1.0)
        pos = -0.5 * self.eps * (0.5 - _ramp_integral(s))
        return np.where(t >= 0, pos, pos + t)

    def dzeta(self, t):
        t = np.asarray(t, dtype=float)
        s = np.clip(np.abs(t) / self.eps, 0.0, 1.0)
        pos = 0.5 * (1 - _smoothstep(s))
        return np.where(t >= 0, pos, 1 - pos)

    def d2zeta(self, t):
        t = np.asarray(t, dtype=float)
        s = np.clip(np.abs(t) / self.eps, 0.0, 1.0)
        return -0.5 * _smoothstep_d1(s) / self.eps

    def d3zeta(self, t):
        t = np.asarray(t, dtype=float)
        s = np.clip(np.abs(t) / self.eps, 0.0, 1.0)
        d = -0.5 * _smoothstep_d2(s) / self.eps ** 2
        return np.where(t >= 0, d, -d)

    # quantities after the rescaling theta(t) -> theta(delta t)
    def angle(self, t):
        """Rotation angle ``2 pi zeta'(delta t)`` at fiber norm ``t >= 0``."""
        return 2 * math.pi * self.dzeta(self.delta * np.asarray(t, dtype=float))

    def angle_derivative(self, t):
        return 2 * math.pi * self.delta * self.d2zeta(self.delta * np.asarray(t, dtype=float))

    def hamiltonian(self, t):
        """``zeta(delta t) / delta``, whose derivative is ``zeta'(delta t)``."""
        return self.zeta(self.delta * np.asarray(t, dtype=float)) / self.delta

    def invariant_defects(self, grid: int = 2001) -> dict[str, float]:
        """Numerical size of each defining property's failure on a grid."""
        t = np.linspace(0, 3 * self.eps, grid)
        tail = t[t >= self.eps]
        d1 = self.dzeta(t)
        return {
            "vanishes_beyond_eps": float(np.max(np.abs(self.zeta(tail)))),
            "reflection": float(np.max(np.abs(self.zeta(-t) - (self.zeta(t) - t)))),
            "slope_at_zero": float(abs(self.dzeta(0.0) - 0.5)),
            "monotone": float(max(0.0, np.max(np.diff(d1)))),
        }
