"""Holonomy functionals and twist actions on holonomy tuples."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .repvar import HolonomyTuple, stabilizer_dimension
from .su2 import I, MINUS_I, N, SU2Element, SU2Error, alcove, prod


def _subset(t: HolonomyTuple, subset) -> range:
    if isinstance(subset, range):
        r = subset
    else:
        idx = sorted(int(i) for i in subset)
        if not idx or idx != list(range(idx[0], idx[-1] + 1)):
            raise SU2Error("subset must be a nonempty contiguous index range, got %r" % (subset,))
        r = range(idx[0], idx[-1] + 1)
    if r.step != 1 or len(r) == 0 or r.start < 0 or r.stop > len(t):
        raise SU2Error("subset %r is not a contiguous range inside 0..%d" % (subset, len(t) - 1))
    return r


def enclosed_holonomy(t: HolonomyTuple, subset) -> SU2Element:
    r = _subset(t, subset)
    return SU2Element.normalized(prod([t.elements[i].q for i in r]))


def rho_Y(t: HolonomyTuple, subset) -> float:
    return alcove(enclosed_holonomy(t, subset))


def h_Y(t: HolonomyTuple, subset) -> float:
    return rho_Y(t, subset) ** 2 / 2


def full_twist(t: HolonomyTuple, subset) -> HolonomyTuple:
    """Conjugate the enclosed elements by their product."""
    r = _subset(t, subset)
    h = enclosed_holonomy(t, r)
    if h.is_central():
        return t
    els = list(t.elements)
    for i in r:
        els[i] = els[i].conj_by(h)
    return t.replace(els)


def _check_pair(t: HolonomyTuple, i: int) -> None:
    if not 0 <= i < len(t) - 1:
        raise SU2Error("half twist index %d out of range for %d elements" % (i, len(t)))
    if abs(t.labels[i] - t.labels[i + 1]) > 1e-12:
        raise SU2Error("half twist needs equal labels at %d and %d, got %g and %g"
                       % (i, i + 1, t.labels[i], t.labels[i + 1]))


def half_twist(t: HolonomyTuple, i: int) -> HolonomyTuple:
    """``(g_i, g_{i+1}) -> (g_i g_{i+1} g_i^-1, g_i)``."""
    _check_pair(t, i)
    els = list(t.elements)
    a, b = els[i], els[i + 1]
    els[i], els[i + 1] = b.conj_by(a), a
    return t.replace(els)


def inverse_half_twist(t: HolonomyTuple, i: int) -> HolonomyTuple:
    """``(g_i, g_{i+1}) -> (g_{i+1}, g_{i+1}^-1 g_i g_{i+1})``."""
    _check_pair(t, i)
    els = list(t.elements)
    a, b = els[i], els[i + 1]
    els[i], els[i + 1] = b, a.conj_by(b.inv())
    return t.replace(els)


def braid_word(t: HolonomyTuple, word: Sequence[int]) -> HolonomyTuple:
    """Apply half twists left to right; ``k > 0`` is the generator at
    position ``k - 1`` (1-based as in braid notation), ``k < 0`` its inverse."""
    for k in word:
        if k == 0:
            raise SU2Error("braid generators are numbered from 1")
        t = half_twist(t, k - 1) if k > 0 else inverse_half_twist(t, -k - 1)
    return t


def _sqrt(g: SU2Element) -> SU2Element:
    """The square root with nonnegative scalar part; ``g`` must not be ``-I``."""
    a = float(g.q[0])
    v = g.q[1:]
    r = float(np.linalg.norm(v))
    half = np.arctan2(r, a) / 2
    axis = v / r if r > 0 else np.zeros(3)
    return SU2Element(np.concatenate([[np.cos(half)], np.sin(half) * axis]))


class SingularSquareRootError(SU2Error):
    pass


def half_twist_ad_sqrt_check(gi: SU2Element, gj: SU2Element, tol: float = 1e-12) -> float:
    """Distance between the half twist of ``(g_i, g_j)`` and the conjugation
    of the pair by a square root of ``-g_i g_j``, minimized over both roots."""
    for g in (gi, gj):
        if abs(g.trace()) > 1e-9:
            raise SU2Error("both elements must be traceless")
    m = MINUS_I @ gi @ gj
    if m.distance(MINUS_I) <= tol:
        raise SingularSquareRootError("-g_i g_j = -I: square root lies on the singular stratum")
    s = _sqrt(m)
    want_i, want_j = gj.conj_by(gi), gi
    best = np.inf
    for root in (s, MINUS_I @ s):
        d = max(gi.conj_by(root).distance(want_i), gj.conj_by(root).distance(want_j))
        best = min(best, d)
    return float(best)


# ---------------------------------------------------------------- fibers

_CASES = ("separating-generic", "nonseparating-central", "halftwist-pair")


def _representative(case: str, lam: float) -> tuple[list[SU2Element], list[SU2Element] | None]:
    """Elements whose common centralizer is ``G_{exp lambda}``, and elements
    whose common centralizer is ``H`` (``None`` when ``H`` is finite)."""
    ang = 2 * np.pi * lam
    if case == "separating-generic":
        # centralizer U(1); H = Z_2 x Z_2
        return [SU2Element([np.cos(ang), np.sin(ang), 0.0, 0.0])], None
    if case == "nonseparating-central":
        # holonomy -I, centralizer SU(2); H = Z_2
        return [MINUS_I], None
    # trivial holonomy around the pair (g, g^-1) of traceless elements; H is
    # the stabilizer of the pair
    return [I], [N, N.inv()]


def coisotropic_fiber_dim(lam, case: str) -> int:
    """``dim G_{exp lambda} \\ G_{exp lambda}^2 / H = dim G_{exp lambda} - dim H``."""
    if case not in _CASES:
        raise SU2Error("case must be one of %s" % (_CASES,))
    x = float(lam)
    if case == "separating-generic" and not 0 < x < 0.5:
        raise SU2Error("separating-generic needs lambda in (0, 1/2), got %g" % x)
    if case == "nonseparating-central" and x != 0.5:
        raise SU2Error("nonseparating-central needs lambda = 1/2, got %g" % x)
    if case == "halftwist-pair" and x != 0.0:
        raise SU2Error("halftwist-pair needs lambda = 0, got %g" % x)
    gens, h_gens = _representative(case, x)
    dim_centralizer = stabilizer_dimension(gens)
    dim_h = 0 if h_gens is None else stabilizer_dimension(h_gens)
    # G acts freely on G^2 from the left, leaving dim G; H then acts freely
    return dim_centralizer - dim_h
