"""Maslov index of loops of Lagrangian subspaces of C^n.

A Lagrangian frame is an n x n complex matrix ``Z = X + iY`` whose columns
span the subspace; it is Lagrangian when ``X^T Y`` is symmetric and ``Z`` is
invertible.  The unitary part ``U = Z (Z^* Z)^{-1/2}`` spans the same
subspace and ``det(U)^2 = det(Z)^2 / |det Z|^2`` depends only on it.  The
index is the winding number of that phase.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence, Union

import numpy as np

Frame = np.ndarray
Loop = Union[Callable[[float], Frame], Sequence[Frame]]


class MaslovError(ValueError):
    pass


def lagrangian_defect(Z: Frame) -> float:
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    X, Y = Z.real, Z.imag
    s = X.T @ Y
    return float(np.max(np.abs(s - s.T))) if s.size else 0.0


def det_squared_phase(Z: Frame, tol: float = 1e-9) -> complex:
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    if Z.shape[0] != Z.shape[1]:
        raise MaslovError("a Lagrangian frame in C^n is n x n, got %s" % (Z.shape,))
    scale = max(1.0, float(np.max(np.abs(Z))))
    if lagrangian_defect(Z) > tol * scale ** 2:
        raise MaslovError("frame does not span a Lagrangian subspace")
    det = np.linalg.det(Z)
    if abs(det) < tol * scale ** Z.shape[0]:
        raise MaslovError("degenerate frame: columns do not span an n-dimensional subspace")
    return (det / abs(det)) ** 2


def _step(a: complex, b: complex) -> float:
    return float(np.angle(b / a))


def maslov_index_loop(frames: Loop, reference: Frame | None = None, samples: int = 256,
                      max_depth: int = 30) -> int:
    """Winding number of ``det^2`` around the closed loop ``frames``.

    ``frames`` is a callable on ``[0, 1]`` with ``frames(0)`` and
    ``frames(1)`` spanning the same subspace, or a sequence of frames that
    is closed up implicitly.  For a callable, intervals whose phase jumps by
    more than ``pi/4`` are bisected.  ``reference`` multiplies every phase
    by a constant and so cannot change the winding; it is accepted for
    symmetry with the relative index.
    """
    ref = 1.0 if reference is None else np.conj(det_squared_phase(reference))
    total = 0.0
    if callable(frames):
        def phase(t):
            return ref * det_squared_phase(frames(t))

        grid = np.linspace(0.0, 1.0, samples + 1)
        vals = [phase(t) for t in grid]
        stack = [(grid[i], grid[i + 1], vals[i], vals[i + 1], 0) for i in range(samples)][::-1]
        while stack:
            t0, t1, p0, p1, depth = stack.pop()
            da = _step(p0, p1)
            if abs(da) > math.pi / 4:
                if depth >= max_depth:
                    raise MaslovError("winding ambiguous near t = %.6g" % t0)
                tm = 0.5 * (t0 + t1)
                pm = phase(tm)
                stack.append((tm, t1, pm, p1, depth + 1))
                stack.append((t0, tm, p0, pm, depth + 1))
                continue
            total += da
    else:
        vals = [ref * det_squared_phase(z) for z in frames]
        if not vals:
            return 0
        for p0, p1 in zip(vals, vals[1:] + vals[:1]):
            da = _step(p0, p1)
            if abs(da) > math.pi / 2:
                raise MaslovError("loop sampled too coarsely to fix the winding")
            total += da
    w = total / (2 * math.pi)
    k = round(w)
    if abs(w - k) > 1e-6:
        raise MaslovError("loop is not closed: winding %.6g is not an integer" % w)
    return int(k)


def sqrt_z_frame(c: int) -> Callable[[float], Frame]:
    """The loop ``e^{i theta / 2} R^{c+1}``, ``theta`` in ``[0, 2 pi]``."""
    n = c + 1

    def frame(t: float) -> Frame:
        return np.exp(0.5j * 2 * math.pi * t) * np.eye(n)
    return frame


def line_rotation(k: int = 1) -> Callable[[float], Frame]:
    """The line ``e^{i k theta} R`` in C."""
    return lambda t: np.array([[np.exp(1j * k * 2 * math.pi * t)]])


def concatenate(a: Callable[[float], Frame], b: Callable[[float], Frame]) -> Callable[[float], Frame]:
    return lambda t: a(2 * t) if t <= 0.5 else b(2 * t - 1)


def reverse(a: Callable[[float], Frame]) -> Callable[[float], Frame]:
    return lambda t: a(1 - t)


def section_index(c: int) -> int:
    """Index of the boundary problem: the ``sqrt z`` loop minus the
    contribution 2 of the disc with its own boundary."""
    if c < 1:
        raise MaslovError("codimension must be at least 1")
    return maslov_index_loop(sqrt_z_frame(c)) - 2
