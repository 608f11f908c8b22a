"""Holonomy tuples on a marked sphere: ``g_1 ... g_n = target`` with each
``g_i`` in the conjugacy class of its label."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .su2 import I, MINUS_I, SU2Element, SU2Error, alcove, as_label, prod, qconj, qexp, qmul, sample_class

RESIDUAL_TOL = 1e-10
RANK_CUTOFF = 1e-7
REDUCIBLE_MARGIN = 1e-6


class NoSolutionError(RuntimeError):
    pass


class ReducibleError(ValueError):
    pass


def _target(target) -> SU2Element:
    if isinstance(target, SU2Element):
        if not target.is_central():
            raise SU2Error("target must be +I or -I")
        return target
    if target in (1, "+I", "I", "+1"):
        return I
    if target in (-1, "-I", "-1"):
        return MINUS_I
    raise SU2Error("target must be +I or -I, got %r" % (target,))


@dataclass(frozen=True)
class HolonomyTuple:
    elements: tuple[SU2Element, ...]
    labels: tuple[float, ...]
    target: SU2Element = I

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "labels", tuple(as_label(m) for m in self.labels))
        object.__setattr__(self, "target", _target(self.target))
        if len(self.elements) != len(self.labels):
            raise SU2Error("%d elements but %d labels" % (len(self.elements), len(self.labels)))

    def __len__(self):
        return len(self.elements)

    def product(self) -> SU2Element:
        return SU2Element.normalized(prod([g.q for g in self.elements]))

    def residual(self) -> float:
        return self.product().distance(self.target)

    def label_defect(self) -> float:
        return max((abs(alcove(g) - m) for g, m in zip(self.elements, self.labels)), default=0.0)

    def validate(self, tol: float = RESIDUAL_TOL) -> None:
        if self.residual() > tol:
            raise SU2Error("product residual %.3g exceeds %.3g" % (self.residual(), tol))
        if self.label_defect() > tol:
            raise SU2Error("alcove labels off by %.3g" % self.label_defect())

    def replace(self, elements: Sequence[SU2Element], labels=None) -> "HolonomyTuple":
        return HolonomyTuple(tuple(elements), self.labels if labels is None else tuple(labels), self.target)

    def distance(self, other: "HolonomyTuple") -> float:
        return max(g.distance(h) for g, h in zip(self.elements, other.elements))


# ---------------------------------------------------------------- stabilizer

def _commutator_operator(elements: Sequence[SU2Element]) -> np.ndarray:
    """Stacked maps ``xi -> vec(xi g - g xi) = 2 xi x v`` where ``g = (a, v)``."""
    rows = []
    for g in elements:
        v = g.q[1:]
        rows.append(-2.0 * np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]]))
    return np.vstack(rows) if rows else np.zeros((0, 3))


def _singular_values(m: np.ndarray, size: int) -> np.ndarray:
    s = np.linalg.svd(m, compute_uv=False) if m.size else np.zeros(0)
    return np.concatenate([s, np.zeros(size - s.size)]) if s.size < size else s


def stabilizer_dimension(elements: Sequence[SU2Element], cutoff: float = RANK_CUTOFF) -> int:
    """3 for a central tuple, 1 for a tuple in a common maximal torus, 0 otherwise."""
    s = _singular_values(_commutator_operator(elements), 3)
    return int(np.sum(s <= cutoff))


def reducibility_margin(elements: Sequence[SU2Element]) -> float:
    """Smallest singular value of the commutator operator: the distance scale
    to the reducible locus."""
    return float(_singular_values(_commutator_operator(elements), 3).min())


# ---------------------------------------------------------------- solver

_BASIS = [np.array([0.0, 1.0, 0.0, 0.0]), np.array([0.0, 0.0, 1.0, 0.0]),
          np.array([0.0, 0.0, 0.0, 1.0])]


def _prefix_suffix(qs: list[np.ndarray]):
    n = len(qs)
    pre = [np.array([1.0, 0.0, 0.0, 0.0])]
    for q in qs:
        pre.append(qmul(pre[-1], q))
    suf = [np.array([1.0, 0.0, 0.0, 0.0])] * (n + 1)
    for i in range(n - 1, -1, -1):
        suf[i] = qmul(qs[i], suf[i + 1])
    return pre, suf


def _jacobian(qs: list[np.ndarray], free: list[int]) -> np.ndarray:
    """Derivative of the product along ``g_i -> exp(t xi) g_i exp(-t xi)``."""
    pre, suf = _prefix_suffix(qs)
    cols = []
    for i in free:
        for e in _BASIS:
            dg = qmul(e, qs[i]) - qmul(qs[i], e)
            cols.append(qmul(qmul(pre[i], dg), suf[i + 1]))
    return np.column_stack(cols) if cols else np.zeros((4, 0))


def _gauss_newton(qs: list[np.ndarray], free: list[int], target: np.ndarray,
                  tol: float, iters: int) -> tuple[list[np.ndarray], float]:
    qs = [q.copy() for q in qs]
    res = math.inf
    for _ in range(iters):
        r = prod(qs) - target
        res = math.sqrt(2.0) * float(np.linalg.norm(r))
        if res < 0.1 * tol:
            break
        J = _jacobian(qs, free)
        step = np.linalg.lstsq(J, -r, rcond=None)[0]
        # damp overly long steps; the class spheres are compact
        nrm = float(np.linalg.norm(step))
        if nrm > 0.5:
            step *= 0.5 / nrm
        for k, i in enumerate(free):
            e = qexp(step[3 * k:3 * k + 3])
            q = qmul(qmul(e, qs[i]), qconj(e))
            qs[i] = q / np.linalg.norm(q)
    r = prod(qs) - target
    return qs, math.sqrt(2.0) * float(np.linalg.norm(r))


def solve_rep_variety(labels, target=1, seed=0, tol: float = RESIDUAL_TOL, budget: int = 64,
                      irreducible: str = "prefer", iters: int = 200) -> HolonomyTuple:
    """Find ``g_i`` in the classes of ``labels`` with product ``target``.

    Projected Gauss-Newton on the product residual, each update a
    conjugation of ``g_i`` so it never leaves its class, with random
    restarts.  ``irreducible`` is ``"require"`` (discard solutions within
    ``REDUCIBLE_MARGIN`` of the reducible locus), ``"prefer"`` (return such a
    solution only if the whole budget yields nothing better) or ``"ignore"``.
    """
    if irreducible not in ("require", "prefer", "ignore"):
        raise ValueError("irreducible must be 'require', 'prefer' or 'ignore'")
    mus = [as_label(m) for m in labels]
    tgt = _target(target)
    free = [i for i, m in enumerate(mus) if 0.0 < m < 0.5]
    fallback = None
    for attempt in range(budget):
        rng = np.random.default_rng([int(seed), attempt])
        qs = [sample_class(m, rng).q for m in mus]
        qs, res = _gauss_newton(qs, free, tgt.q, tol, iters)
        if res >= tol:
            continue
        t = HolonomyTuple(tuple(SU2Element.normalized(q) for q in qs), mus, tgt)
        if t.residual() >= tol:
            continue
        if irreducible == "ignore" or reducibility_margin(t.elements) > REDUCIBLE_MARGIN:
            return t
        if fallback is None:
            fallback = t
    if fallback is not None and irreducible == "prefer":
        return fallback
    raise NoSolutionError("no solution with residual < %.1e after %d restarts for labels %s"
                          % (tol, budget, [round(m, 12) for m in mus]))


# ---------------------------------------------------------------- dimension

def _tangent_jacobian(t: HolonomyTuple) -> np.ndarray:
    """Differential of the product, left-trivialized, on the class tangent
    spaces (two directions per non-central element)."""
    qs = [g.q for g in t.elements]
    pre, suf = _prefix_suffix(qs)
    P_inv = qconj(pre[-1])
    cols = []
    for i, g in enumerate(t.elements):
        v = g.q[1:]
        if np.linalg.norm(v) <= 1e-12:
            continue
        # orthonormal directions perpendicular to the axis span the class tangent space
        _, _, vt = np.linalg.svd(v.reshape(1, 3))
        for xi in vt[1:]:
            e = np.concatenate([[0.0], xi])
            dg = qmul(e, qs[i]) - qmul(qs[i], e)
            cols.append(qmul(P_inv, qmul(qmul(pre[i], dg), suf[i + 1]))[1:])
    return np.column_stack(cols) if cols else np.zeros((3, 0))


def tangent_dimension(t: HolonomyTuple, allow_reducible: bool = False,
                      cutoff: float = RANK_CUTOFF) -> int:
    """Local dimension of the moduli space at ``t``:
    ``dim ker D(product) - (3 - dim stabilizer)``."""
    stab = stabilizer_dimension(t.elements, cutoff)
    if stab and not allow_reducible:
        raise ReducibleError("reducible point (stabilizer dimension %d): dimension undefined" % stab)
    J = _tangent_jacobian(t)
    rank = int(np.sum(np.linalg.svd(J, compute_uv=False) > cutoff)) if J.size else 0
    return J.shape[1] - rank - (3 - stab)
