"""Free graded cochain complexes over the q-power ring, mapping cones and
cohomology.

Conventions:

* ``differential[i, j]`` is the coefficient of generator ``i`` in the
  coboundary of generator ``j``; it is nonzero only when
  ``deg(i) = deg(j) + 1``.
* ``C[k]`` lowers every degree by ``k``.
* ``Cone(f) = C0[1] + C1`` with ``d(c0, c1) = (-d0 c0, f c0 + d1 c1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from ..lambda_ring import LambdaMatrix, block_matrix, order
from . import linalg

Mode = Literal["rational-u", "integer-at-q1", "mod-p"]


class ComplexError(ValueError):
    """Raised for malformed complexes or maps that are not cochain maps."""


@dataclass(frozen=True)
class Generator:
    label: str
    degree: int
    weight: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))
        object.__setattr__(self, "degree", int(self.degree))


@dataclass(frozen=True, eq=False)
class GradedComplex:
    generators: tuple[Generator, ...]
    differential: LambdaMatrix
    ring: str = "lambda"
    period: int | None = None
    positive_order: bool = False

    def __post_init__(self):
        gens = tuple(g if isinstance(g, Generator) else Generator(*g) for g in self.generators)
        if self.period is not None:
            gens = tuple(replace(g, degree=g.degree % self.period) for g in gens)
        object.__setattr__(self, "generators", gens)
        n = len(gens)
        if self.differential.shape != (n, n):
            raise ComplexError("differential has shape %s for %d generators"
                               % (self.differential.shape, n))
        if self.ring not in ("lambda", "int"):
            raise ComplexError("unknown ring %r" % self.ring)
        if self.ring == "int" and any(e != 0 for e in self.differential.blocks):
            raise ComplexError("integer complex with q-dependent differential")

    @classmethod
    def build(cls, degrees: Sequence[int], differential, ring="lambda", labels=None,
              weights=None, **kw) -> "GradedComplex":
        if not isinstance(differential, LambdaMatrix):
            differential = LambdaMatrix.from_rows(differential, (len(degrees), len(degrees)))
        labels = labels or ["x%d" % i for i in range(len(degrees))]
        weights = weights or [0] * len(degrees)
        gens = tuple(Generator(l, d, w) for l, d, w in zip(labels, degrees, weights))
        return cls(gens, differential, ring, **kw)

    def __len__(self):
        return len(self.generators)

    @property
    def degrees(self) -> list[int]:
        return [g.degree for g in self.generators]

    @property
    def weights(self) -> list[Fraction]:
        return [g.weight for g in self.generators]

    def _next(self, d: int) -> int:
        return (d + 1) % self.period if self.period else d + 1

    def degree_set(self) -> list[int]:
        return sorted(set(self.degrees))

    def indices(self, d: int) -> list[int]:
        if self.period:
            d %= self.period
        return [i for i, g in enumerate(self.generators) if g.degree == d]

    def block(self, d: int) -> LambdaMatrix:
        """The component ``C^d -> C^(d+1)`` of the differential."""
        return self.differential.take(self.indices(self._next(d)), self.indices(d))

    def shift(self, k: int) -> "GradedComplex":
        gens = tuple(replace(g, degree=g.degree - k) for g in self.generators)
        return replace(self, generators=gens)

    def euler_characteristic(self) -> int:
        if self.period and self.period % 2:
            raise ComplexError("Euler characteristic needs an even period")
        return sum((-1) ** g.degree for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, GradedComplex):
            return NotImplemented
        return (self.generators == other.generators and self.differential == other.differential
                and self.ring == other.ring and self.period == other.period)


def _degree_violations(m: LambdaMatrix, rows: GradedComplex | list[int], cols, step: int,
                       period=None, what="entry") -> list[str]:
    rdeg = rows.degrees if isinstance(rows, GradedComplex) else rows
    cdeg = cols.degrees if isinstance(cols, GradedComplex) else cols
    out = []
    for (i, j), x in m.nonzero_entries().items():
        diff = rdeg[i] - cdeg[j] - step
        if (diff % period if period else diff) != 0:
            out.append("%s (%d, %d) = %s changes degree %d -> %d" % (what, i, j, x, cdeg[j], rdeg[i]))
    return out


def find_violations(c: GradedComplex) -> list[str]:
    """Every way in which ``c`` fails to be a cochain complex."""
    out = _degree_violations(c.differential, c, c, 1, c.period, "differential entry")
    sq = c.differential @ c.differential
    for (i, j), x in sq.nonzero_entries().items():
        out.append("d^2 (%d, %d) = %s" % (i, j, x))
    if c.positive_order:
        for (i, j), x in c.differential.nonzero_entries().items():
            if order(x) <= 0:
                out.append("entry (%d, %d) = %s has non-positive order" % (i, j, x))
    return out


def verify_complex(c: GradedComplex) -> bool:
    return not find_violations(c)


def chain_map_violations(f: LambdaMatrix, src: GradedComplex, dst: GradedComplex,
                         degree: int = 0) -> list[str]:
    """Violations of ``d_dst f = f d_src`` and of ``f`` raising degree by ``degree``."""
    if f.shape != (len(dst), len(src)):
        return ["map has shape %s, expected %s" % (f.shape, (len(dst), len(src)))]
    out = _degree_violations(f, dst, src, degree, dst.period, "map entry")
    comm = dst.differential @ f - f @ src.differential
    for (i, j), x in comm.nonzero_entries().items():
        out.append("d f - f d at (%d, %d) = %s" % (i, j, x))
    return out


def _prefixed(c: GradedComplex, prefix: str, k: int) -> tuple[Generator, ...]:
    return tuple(Generator(prefix + g.label, g.degree - k, g.weight) for g in c.generators)


def _ring(*cs) -> str:
    return "lambda" if any(x.ring == "lambda" for x in cs) else "int"


def cone(f: LambdaMatrix, C0: GradedComplex, C1: GradedComplex, check: bool = True) -> GradedComplex:
    """Mapping cone of a cochain map ``f: C0 -> C1``."""
    if check:
        bad = chain_map_violations(f, C0, C1)
        if bad:
            raise ComplexError("not a cochain map: " + "; ".join(bad[:5]))
    n0, n1 = len(C0), len(C1)
    d = block_matrix([[-C0.differential, None], [f, C1.differential]], [n0, n1], [n0, n1])
    gens = _prefixed(C0, "", 1) + _prefixed(C1, "", 0)
    return GradedComplex(gens, d, _ring(C0, C1), C1.period)


@dataclass(frozen=True, eq=False)
class ConeData:
    """Maps ``C0 -f-> C1 -k-> C2`` with a null-homotopy ``h`` of ``k f``:
    ``d2 h + h d0 = k f``."""

    C0: GradedComplex
    C1: GradedComplex
    C2: GradedComplex
    f: LambdaMatrix
    k: LambdaMatrix
    h: LambdaMatrix

    def violations(self) -> list[str]:
        out = []
        for name, c in (("C0", self.C0), ("C1", self.C1), ("C2", self.C2)):
            out += ["%s: %s" % (name, v) for v in find_violations(replace(c, positive_order=False))]
        out += ["f: " + v for v in chain_map_violations(self.f, self.C0, self.C1)]
        out += ["k: " + v for v in chain_map_violations(self.k, self.C1, self.C2)]
        if self.h.shape != (len(self.C2), len(self.C0)):
            return out + ["h has shape %s" % (self.h.shape,)]
        out += ["h: " + v for v in _degree_violations(self.h, self.C2, self.C0, -1,
                                                      self.C2.period, "entry")]
        rel = (self.C2.differential @ self.h + self.h @ self.C0.differential - self.k @ self.f)
        out += ["d2 h + h d0 - k f at %s = %s" % (ij, x) for ij, x in rel.nonzero_entries().items()]
        return out

    def validate(self) -> "ConeData":
        bad = self.violations()
        if bad:
            raise ComplexError("invalid cone data: " + "; ".join(bad[:5]))
        return self


def double_cone(d: ConeData, check: bool = True) -> GradedComplex:
    """Cone of the induced map ``(h, k): Cone(f) -> C2``, living on
    ``C0[2] + C1[1] + C2``."""
    if check:
        d.validate()
    cf = cone(d.f, d.C0, d.C1, check=False)
    phi = block_matrix([[d.h, d.k]], [len(d.C2)], [len(d.C0), len(d.C1)])
    out = cone(phi, cf, d.C2, check=False)
    return out


@dataclass
class Cohomology:
    ranks: dict[int, int]
    torsion: dict[int, list[int]] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return not any(self.ranks.values()) and not any(self.torsion.values())


def _integer_blocks(c: GradedComplex, degs) -> dict[int, np.ndarray]:
    return {d: c.block(d).specialize(1) for d in degs}


def cohomology_ranks(c: GradedComplex, mode: Mode = "rational-u", p: int | None = None) -> Cohomology:
    """Cohomology of ``c`` in one of three modes.

    ``rational-u``: ranks over the fraction field in ``u = q^(1/N)``.
    ``integer-at-q1``: free ranks and torsion of the ``q = 1`` complex.
    ``mod-p``: ranks over ``Z/p`` of the ``q = 1`` complex.
    """
    degs = c.degree_set()
    # degrees whose cohomology can be nonzero, plus neighbours that feed them
    dims = {d: len(c.indices(d)) for d in degs}
    prev = {d: (d - 1) % c.period if c.period else d - 1 for d in degs}
    if mode == "rational-u":
        order_ = list(degs)
        mats = [c.block(d) for d in order_]
        pos = {d: i for i, d in enumerate(order_)}

        def upper(lo):
            out = []
            for d in order_:
                nxt = c._next(d)
                u = dims[d] - (lo[pos[prev[d]]] if prev[d] in pos else 0)
                if nxt in pos:
                    u = min(u, dims.get(nxt, 0) - lo[pos[nxt]])
                out.append(u)
            return out

        r = dict(zip(order_, linalg.generic_ranks(mats, upper)))
        ranks = {d: dims[d] - r[d] - r.get(prev[d], 0) for d in degs}
        return Cohomology(ranks)
    blocks = _integer_blocks(c, degs)
    if mode == "integer-at-q1":
        r = {d: linalg.int_rank(m) for d, m in blocks.items()}
        ranks = {d: dims[d] - r[d] - r.get(prev[d], 0) for d in degs}
        torsion = {}
        for d in degs:
            if prev[d] in blocks:
                t = [x for x in linalg.smith_invariants(blocks[prev[d]]) if abs(x) > 1]
                if t:
                    torsion[d] = [abs(x) for x in t]
        return Cohomology(ranks, torsion)
    if mode == "mod-p":
        if p is None or p < 2:
            raise ValueError("mod-p mode needs a prime p")
        r = {d: linalg.mod_rank(m, p) for d, m in blocks.items()}
        return Cohomology({d: dims[d] - r[d] - r.get(prev[d], 0) for d in degs})
    raise ValueError("unknown mode %r" % mode)


def is_acyclic(c: GradedComplex, mode: Mode = "rational-u", p: int | None = None) -> bool:
    return cohomology_ranks(c, mode, p).is_zero()


def reweight(c: GradedComplex, weights: Sequence) -> GradedComplex:
    """Change of basis ``<y> -> q^(w_y) <y>``.

    Entry ``[i, j]`` picks up ``q^(w_j - w_i)``.  Generator weights drop by
    ``w`` so weighted orders, and hence the order filtration, are unchanged.
    """
    w = [Fraction(x) for x in weights]
    if len(w) != len(c):
        raise ComplexError("need one weight per generator")
    d = c.differential.reweight(w, w)
    gens = tuple(replace(g, weight=g.weight - x) for g, x in zip(c.generators, w))
    return replace(c, generators=gens, differential=d, ring="lambda" if d.blocks.keys() - {0} else c.ring)


def leading_split(m: LambdaMatrix) -> tuple[np.ndarray, LambdaMatrix]:
    """Split ``m = m0 + m1`` into its order-zero integer part and a
    positive-order remainder."""
    if m.order() < 0:
        raise ComplexError("matrix has an entry of negative order %s" % m.order())
    m0 = m.coefficient(0)
    return m0, m - LambdaMatrix(m.shape, {0: m0})


def weighted_differential(c: GradedComplex) -> LambdaMatrix:
    """Differential with entry ``[i, j]`` shifted by ``w_j - w_i``."""
    return c.differential.reweight(c.weights, c.weights)


def filtration_page_one(c: GradedComplex, eps) -> GradedComplex:
    """Integer complex carried by the weighted-order-zero part of the
    differential: the differential on the associated graded of the order
    filtration ``F^n = {weighted order >= n * eps}``."""
    if Fraction(eps) <= 0:
        raise ValueError("eps must be positive")
    w = weighted_differential(c)
    if w.order() < 0:
        raise ComplexError("weighted order %s is negative" % w.order())
    page = LambdaMatrix.from_int(w.coefficient(0)) if len(c) else LambdaMatrix((0, 0))
    return GradedComplex(c.generators, page, "int", c.period)


def filtration_levels(c: GradedComplex, eps) -> int:
    """Number of filtration steps of width ``eps`` spanned by the weighted
    exponents; finite because the differential has finitely many terms."""
    w = weighted_differential(c)
    if not w.blocks:
        return 0
    return math.floor(max(w.blocks) / Fraction(eps)) + 1


def int_complex(degrees: Sequence[int], differential, **kw) -> GradedComplex:
    m = LambdaMatrix.from_int(np.asarray(differential, dtype=object).reshape(len(degrees), len(degrees)))
    return GradedComplex.build(degrees, m, ring="int", **kw)


def zero_complex(degrees: Sequence[int], ring="int") -> GradedComplex:
    return GradedComplex.build(degrees, LambdaMatrix((len(degrees), len(degrees))), ring=ring)
