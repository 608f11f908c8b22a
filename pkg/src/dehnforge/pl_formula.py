"""Monodromy of a fibered Dehn twist on integral homology.

Given the two slant-product maps ``[C]: H(B) -> H(M)`` and
``[C^t]: H(M) -> H(B)``, the twist acts on ``H(M)`` by

    alpha  ->  alpha + sign(c) [C] [C^t] alpha,   sign(c) = (-1)^((c+1)(c+2)/2).

Everything is exact integer linear algebra on free graded groups.  A graded
matrix is a dict ``degree -> matrix`` together with a degree shift; the
block at ``d`` maps the degree-``d`` part to degree ``d + shift``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
from sympy import Matrix


class SlantError(ValueError):
    pass


def sign(c: int) -> int:
    if c < 1:
        raise SlantError("codimension must be at least 1")
    return -1 if ((c + 1) * (c + 2) // 2) % 2 else 1


def _int_array(m, shape) -> np.ndarray:
    a = np.zeros(shape, dtype=object)
    if a.size:
        try:
            src = np.asarray(m, dtype=object).reshape(shape)
        except ValueError as err:
            raise SlantError("block does not have shape %s" % (shape,)) from err
        for idx, x in np.ndenumerate(src):
            if int(x) != x:
                raise SlantError("non-integer entry %r" % (x,))
            a[idx] = int(x)
    return a


@dataclass(frozen=True)
class GradedGroup:
    ranks: Mapping[int, int]

    def __post_init__(self):
        clean = {}
        for d, r in dict(self.ranks).items():
            if int(r) < 0:
                raise SlantError("negative rank %d in degree %s" % (r, d))
            if int(r):
                clean[int(d)] = int(r)
        object.__setattr__(self, "ranks", dict(sorted(clean.items())))

    def rank(self, d: int) -> int:
        return self.ranks.get(d, 0)

    def degrees(self) -> list[int]:
        return list(self.ranks)

    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * r for d, r in self.ranks.items())


@dataclass(frozen=True)
class GradedMatrix:
    shift: int
    blocks: Mapping[int, np.ndarray]

    def block(self, d: int, rows: int, cols: int) -> np.ndarray:
        b = self.blocks.get(d)
        if b is None:
            return np.zeros((rows, cols), dtype=object)
        return b

    def validate(self, src: GradedGroup, dst: GradedGroup, name: str) -> "GradedMatrix":
        blocks = {}
        for d, b in self.blocks.items():
            shape = (dst.rank(d + self.shift), src.rank(d))
            arr = np.asarray(b, dtype=object)
            if arr.size == 0 and 0 in shape:
                blocks[d] = np.zeros(shape, dtype=object)
                continue
            if arr.ndim != 2 or arr.shape != shape:
                raise SlantError("%s block in degree %d has shape %s, expected %s"
                                 % (name, d, arr.shape, shape))
            blocks[d] = _int_array(arr, shape)
        return GradedMatrix(self.shift, blocks)


@dataclass(frozen=True)
class SlantData:
    HM: GradedGroup
    HB: GradedGroup
    C: GradedMatrix
    Ct: GradedMatrix
    c: int

    def __post_init__(self):
        if self.c < 1:
            raise SlantError("codimension must be at least 1")
        if self.C.shift + self.Ct.shift != 0:
            raise SlantError("shifts %d and %d do not cancel, so [C][C^t] is not degree preserving"
                             % (self.C.shift, self.Ct.shift))
        object.__setattr__(self, "C", self.C.validate(self.HB, self.HM, "C"))
        object.__setattr__(self, "Ct", self.Ct.validate(self.HM, self.HB, "Ct"))

    def composite(self, d: int) -> np.ndarray:
        """``[C][C^t]`` on ``H_d(M)``."""
        mid = d + self.Ct.shift
        n, k = self.HM.rank(d), self.HB.rank(mid)
        ct = self.Ct.block(d, k, n)
        cm = self.C.block(mid, n, k)
        return cm.dot(ct) if k else np.zeros((n, n), dtype=object)

    def inner_composite(self, d: int) -> np.ndarray:
        """``[C^t][C]`` on ``H_d(B)``."""
        mid = d + self.C.shift
        n, k = self.HB.rank(d), self.HM.rank(mid)
        cm = self.C.block(d, k, n)
        ct = self.Ct.block(mid, n, k)
        return ct.dot(cm) if k else np.zeros((n, n), dtype=object)


def monodromy_matrix(s: SlantData) -> dict[int, np.ndarray]:
    """``Id + sign(c) [C][C^t]`` degree by degree on ``H(M)``."""
    sg = sign(s.c)
    out = {}
    for d in s.HM.degrees():
        n = s.HM.rank(d)
        out[d] = np.eye(n, dtype=int).astype(object) + sg * s.composite(d)
    return out


def inverse_monodromy_when_square_zero(s: SlantData) -> dict[int, np.ndarray]:
    sg = sign(s.c)
    return {d: np.eye(s.HM.rank(d), dtype=int).astype(object) - sg * s.composite(d)
            for d in s.HM.degrees()}


def block_diagonal(blocks: Mapping[int, np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks.values())
    out = np.zeros((n, n), dtype=object)
    i = 0
    for d in sorted(blocks):
        b = blocks[d]
        out[i:i + b.shape[0], i:i + b.shape[0]] = b
        i += b.shape[0]
    return out


@dataclass
class UnipotencyReport:
    is_unipotent: bool
    nilpotency_index: int | None
    determinant: int
    per_degree: dict[int, int | None] = field(default_factory=dict)


def _nilpotency_index(n: np.ndarray) -> int | None:
    """Smallest ``k >= 1`` with ``n^k = 0``, or ``None``."""
    size = n.shape[0]
    p = np.eye(size, dtype=int).astype(object)
    for k in range(1, size + 2):
        if not any(x != 0 for x in p.flat):
            return max(k - 1, 1)
        p = p.dot(n)
    return None


def unipotency_check(s: SlantData) -> UnipotencyReport:
    mono = monodromy_matrix(s)
    per = {}
    det = 1
    for d, m in mono.items():
        per[d] = _nilpotency_index(m - np.eye(m.shape[0], dtype=int).astype(object))
        det *= int(Matrix(m.tolist()).det()) if m.size else 1
    ok = all(v is not None for v in per.values())
    idx = max((v for v in per.values() if v is not None), default=1) if ok else None
    return UnipotencyReport(ok, idx, det, per)


# ---------------------------------------------------------------- triangles

def _propagate(a: Mapping[int, int], b: Mapping[int, int], c: Mapping[int, int],
               degrees: list[int], z_in: int) -> int | None:
    """Walk ``A_d -> B_d -> C_d -> A_{d+1}`` upward; ranks of the three maps
    are forced by exactness once the incoming rank is known.  Returns the
    outgoing rank of the last connecting map, or ``None`` on a negative rank."""
    z = z_in
    for d in degrees:
        x = a.get(d, 0) - z
        y = b.get(d, 0) - x
        z = c.get(d, 0) - y
        if min(x, y, z) < 0:
            return None
    return z


def triangle_rank_consistency(hA: Mapping[int, int], hB: Mapping[int, int], hC: Mapping[int, int],
                              period: int | None = None) -> bool:
    """Whether ranks exist for the maps of ``... -> A_d -> B_d -> C_d -> A_{d+1} -> ...``
    making the long exact sequence exact.

    For Z-graded input the ranks are forced, starting from below the lowest
    nonzero degree.  With ``period`` the degrees are read mod ``period`` and
    the one free parameter, the rank entering the cycle, is searched.
    """
    groups = [GradedGroup(h) for h in (hA, hB, hC)]
    a, b, c = (g.ranks for g in groups)
    if period is None:
        degs = sorted(set(a) | set(b) | set(c))
        if not degs:
            return True
        z = _propagate(a, b, c, list(range(degs[0], degs[-1] + 1)), 0)
        return z == 0
    if period < 1:
        raise SlantError("period must be positive")

    def fold(h):
        out: dict[int, int] = {}
        for d, r in h.items():
            out[d % period] = out.get(d % period, 0) + r
        return out

    a, b, c = fold(a), fold(b), fold(c)
    degs = list(range(period))
    # the rank entering degree 0 cannot exceed rank A_0
    return any(_propagate(a, b, c, degs, z0) == z0 for z0 in range(a.get(0, 0) + 1))


# ---------------------------------------------------------------- JSON

def graded_matrix_to_json(m: GradedMatrix) -> dict:
    return {"degree_shift": m.shift,
            "blocks": {str(d): [[int(x) for x in row] for row in np.asarray(b).tolist()]
                       for d, b in sorted(m.blocks.items())}}


def graded_matrix_from_json(data: dict) -> GradedMatrix:
    try:
        return GradedMatrix(int(data["degree_shift"]),
                            {int(d): np.array(b, dtype=object).reshape(len(b), -1) if b else
                             np.zeros((0, 0), dtype=object)
                             for d, b in data["blocks"].items()})
    except (KeyError, TypeError, ValueError) as err:
        raise SlantError("malformed graded matrix: %s" % err) from err


def slant_to_json(s: SlantData) -> dict:
    return {"c": s.c,
            "HM": {str(d): r for d, r in s.HM.ranks.items()},
            "HB": {str(d): r for d, r in s.HB.ranks.items()},
            "C": graded_matrix_to_json(s.C), "Ct": graded_matrix_to_json(s.Ct)}


def slant_from_json(data: dict) -> SlantData:
    try:
        HM = GradedGroup({int(d): int(r) for d, r in data["HM"].items()})
        HB = GradedGroup({int(d): int(r) for d, r in data["HB"].items()})
        return SlantData(HM, HB, graded_matrix_from_json(data["C"]),
                         graded_matrix_from_json(data["Ct"]), int(data["c"]))
    except (KeyError, TypeError, AttributeError) as err:
        raise SlantError("malformed slant data: %s" % err) from err


def monodromy_to_json(blocks: Mapping[int, np.ndarray]) -> dict:
    return graded_matrix_to_json(GradedMatrix(0, blocks))


# ---------------------------------------------------------------- torus

def torus_slant_data(p: int, q: int, orientation: int = 1) -> SlantData:
    """The torus with a point base and ``C`` a simple closed curve of class ``(p, q)``.

    ``[C]`` sends the point class to ``(p, q)`` and ``[C^t]`` is the
    intersection pairing with ``C`` times ``orientation``, with
    ``(a, b) . (p, q) = a q - b p``.
    """
    if math.gcd(p, q) != 1:
        raise SlantError("(%d, %d) is not a primitive class" % (p, q))
    HM = GradedGroup({0: 1, 1: 2, 2: 1})
    HB = GradedGroup({0: 1})
    C = GradedMatrix(1, {0: np.array([[p], [q]], dtype=object)})
    Ct = GradedMatrix(-1, {1: orientation * np.array([[q, -p]], dtype=object)})
    return SlantData(HM, HB, C, Ct, 1)


def _complete_to_sl2(p: int, q: int) -> np.ndarray:
    """An integer matrix of determinant 1 with first column ``(p, q)``."""
    # extended Euclid: p s + q t = 1 gives the column (-t, s)
    def egcd(x, y):
        if y == 0:
            return (x, 1, 0) if x >= 0 else (-x, -1, 0)
        g, u, v = egcd(y, x % y)
        return g, v, u - (x // y) * v
    g, s, t = egcd(p, q)
    if g != 1:
        raise SlantError("(%d, %d) is not primitive" % (p, q))
    return np.array([[p, -t], [q, s]], dtype=np.int64)


def _bump(y: np.ndarray) -> np.ndarray:
    """Lift to R of a degree-one circle map fixing the ends of ``[0, 1]``."""
    f = np.floor(y)
    s = y - f
    return f + s - np.sin(2 * np.pi * s) / (2 * np.pi)


def torus_twist_oracle(p: int, q: int, samples: int = 257) -> np.ndarray:
    """Action on ``H_1(T^2)`` of the twist along the ``(p, q)`` curve, read
    off by pushing the basis loops through the twist and measuring how far
    the lifted image travels.

    The model twist along ``(1, 0)`` is ``(x, y) -> (x + phi(y), y)`` with
    ``phi`` of degree one; other curves are handled by conjugating with an
    element of SL(2, Z) taking ``(1, 0)`` to ``(p, q)``.
    """
    A = _complete_to_sl2(p, q).astype(float)
    Ainv = np.linalg.inv(A)

    def twist(pts: np.ndarray) -> np.ndarray:
        u = pts @ Ainv.T
        u = np.column_stack([u[:, 0] + _bump(u[:, 1]), u[:, 1]])
        return u @ A.T

    s = np.linspace(0.0, 1.0, samples)
    cols = []
    base = np.array([0.3141, 0.2718])
    for e in (np.array([1.0, 0.0]), np.array([0.0, 1.0])):
        loop = base + np.outer(s, e)
        img = twist(loop)
        steps = np.diff(img, axis=0)
        if np.max(np.linalg.norm(steps, axis=1)) > 0.25:
            raise SlantError("loop sampled too coarsely")
        disp = img[-1] - img[0]
        cols.append(np.rint(disp).astype(int))
        if np.max(np.abs(disp - cols[-1])) > 1e-9:
            raise SlantError("image of a closed loop did not close up")
    return np.array(cols, dtype=object).T


def fix_orientation(oracle: Callable[[int, int], np.ndarray] = torus_twist_oracle) -> int:
    """The orientation for which the formula reproduces the oracle on the ``(1, 0)`` curve."""
    want = oracle(1, 0)
    for o in (1, -1):
        if np.array_equal(monodromy_matrix(torus_slant_data(1, 0, o))[1], want):
            return o
    raise SlantError("neither orientation reproduces the oracle")
