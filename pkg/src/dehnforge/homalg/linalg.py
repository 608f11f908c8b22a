"""Exact ranks and Smith normal forms.

Ranks over the fraction field ``Q(u)`` are computed by evaluation: the rank
of ``M(a)`` over ``Q`` never exceeds the generic rank, and a nonzero
``r x r`` minor of degree at most ``D`` cannot vanish at ``D + 1`` distinct
points, so the maximum over enough points is exact.  Bounds coming from
``d^2 = 0`` usually stop the search after one evaluation.
"""

from __future__ import annotations

import math
from math import gcd

import numpy as np
from sympy.polys.domains import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from ..lambda_ring import LambdaMatrix

# deterministic first evaluation points for generic ranks
_PROBES = (7919, -104729, 1299709)


def _dm(m, domain=ZZ) -> DomainMatrix:
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    return DomainMatrix([[domain(int(x)) for x in row] for row in m], (rows, cols), domain)


def int_rank(m) -> int:
    m = np.asarray(m, dtype=object)
    if 0 in m.shape:
        return 0
    return _dm(m).convert_to(QQ).rank()


def mod_rank(m, p: int) -> int:
    m = np.asarray(m, dtype=object)
    if 0 in m.shape:
        return 0
    F = GF(p)
    return DomainMatrix([[F(int(x) % p) for x in row] for row in m], m.shape, F).rank()


def smith_invariants(m) -> list[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    m = np.asarray(m, dtype=object)
    if 0 in m.shape:
        return []
    return [int(d) for d in invariant_factors(_dm(m)) if d != 0]


def modular_invariants(m, n: int) -> list[int]:
    """Invariant factors of ``m`` viewed over ``Z/n``: each is ``gcd(d, n)``,
    with ``n`` standing for zero; unit factors are dropped."""
    m = np.asarray(m, dtype=object)
    if 0 in m.shape:
        return []
    inv = smith_invariants(m)
    k = min(m.shape)
    inv = inv + [0] * (k - len(inv))
    out = []
    for d in inv:
        g = gcd(d, n)
        out.append(g if g else n)
    return [g for g in out if g != 1]


def _laurent_rows(m: LambdaMatrix, N: int) -> list[dict[tuple[int, int], int]]:
    """Per-row polynomial data in ``u = q^(1/N)`` after shifting each row so
    its lowest exponent is zero (row scaling by a unit keeps the rank)."""
    rows, cols = m.shape
    data: list[dict[tuple[int, int], int]] = [dict() for _ in range(rows)]
    for e, blk in m.blocks.items():
        k = e * N
        assert k.denominator == 1
        k = int(k)
        for i, j in zip(*np.nonzero(blk != 0)):
            data[int(i)][(int(j), k)] = int(blk[i, j])
    out = []
    for row in data:
        if row:
            lo = min(k for (_, k) in row)
            row = {(j, k - lo): c for (j, k), c in row.items()}
        out.append(row)
    return out


def _evaluate(rows_data, shape, a: int) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out[...] = 0
    for i, row in enumerate(rows_data):
        for (j, k), c in row.items():
            out[i, j] += c * a ** k
    return out


def _minor_degree_bound(rows_data, r: int) -> int:
    spans = sorted((max((k for (_, k) in row), default=0) for row in rows_data), reverse=True)
    return sum(spans[:r])


def generic_ranks(mats: list[LambdaMatrix], upper=None) -> list[int]:
    """Exact ranks over ``Q(u)`` of a list of matrices.

    ``upper`` is an optional callable mapping the current lower bounds to
    valid upper bounds (for a complex, ``d^2 = 0`` bounds each rank by the
    neighbouring ones).  A matrix whose bounds meet is settled early.
    """
    N = math.lcm(1, *(m.denominator() for m in mats))
    data = [_laurent_rows(m, N) for m in mats]
    lo = [int_rank(_evaluate(d, m.shape, _PROBES[0])) if not m.is_zero() else 0
          for d, m in zip(data, mats)]
    up = [min(m.shape) for m in mats]
    if upper is not None:
        up = [min(a, b) for a, b in zip(up, upper(lo))]
    for i, m in enumerate(mats):
        if lo[i] >= up[i]:
            continue
        # bound + 1 distinct points in total, the first probe included
        bound = _minor_degree_bound(data[i], up[i])
        points = list(_PROBES[1:]) + [a for a in range(1, bound + 2) if a not in _PROBES]
        for a in points[:bound]:
            lo[i] = max(lo[i], int_rank(_evaluate(data[i], m.shape, a)))
            if lo[i] >= up[i]:
                break
    return lo
