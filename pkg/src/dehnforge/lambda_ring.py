"""Exact arithmetic in the ring of finite integer combinations of rational
powers of a formal variable ``q``.

Elements are immutable and always canonical: zero coefficients are never
stored and the zero element has an empty term map.

>>> a = q(Fraction(1, 2)) + 3
>>> a * a
9 + 6*q^(1/2) + q
>>> order(a)
Fraction(0, 1)
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

import numpy as np

Number = Union[int, Fraction]


class SpecializationError(ValueError):
    """Raised when ``q = mu`` cannot be substituted exactly."""


class DenominatorError(ValueError):
    """Raised when an exponent is not a multiple of ``1/N``."""


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("exponents must be exact rationals, got float %r" % x)
    return Fraction(x)


class LambdaElement:
    """A finite sum ``sum_j n_j q^{nu_j}`` with integer ``n_j`` and rational ``nu_j``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Number, int] | None = None):
        clean: dict[Fraction, int] = {}
        if terms:
            for e, c in terms.items():
                c = int(c)
                if c:
                    e = _frac(e)
                    c += clean.get(e, 0)
                    if c:
                        clean[e] = c
                    else:
                        clean.pop(e, None)
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Fraction, int]) -> "LambdaElement":
        obj = cls.__new__(cls)
        obj._terms = dict(sorted((e, c) for e, c in terms.items() if c))
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: Number, coeff: int = 1) -> "LambdaElement":
        return cls({exponent: coeff})

    @classmethod
    def coerce(cls, x) -> "LambdaElement":
        if isinstance(x, LambdaElement):
            return x
        if isinstance(x, (int, np.integer)):
            return cls({0: int(x)})
        raise TypeError("cannot coerce %r to LambdaElement" % (x,))

    @property
    def terms(self) -> dict[Fraction, int]:
        return dict(self._terms)

    def exponents(self) -> list[Fraction]:
        return list(self._terms)

    def coefficient(self, exponent: Number) -> int:
        return self._terms.get(_frac(exponent), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = LambdaElement.coerce(other)
        if not isinstance(other, LambdaElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other):
        try:
            other = LambdaElement.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LambdaElement._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LambdaElement._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LambdaElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LambdaElement.coerce(other) - self

    def __mul__(self, other):
        try:
            other = LambdaElement.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Fraction, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LambdaElement._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, exponent: Number) -> "LambdaElement":
        """Multiply by ``q^exponent``."""
        s = _frac(exponent)
        return LambdaElement._raw({e + s: c for e, c in self._terms.items()})

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            if e == 0:
                mono = str(c)
            else:
                pw = "q" if e == 1 else "q^(%s)" % e if e.denominator != 1 or e < 0 else "q^%s" % e
                mono = pw if c == 1 else "-" + pw if c == -1 else "%d*%s" % (c, pw)
            parts.append(mono)
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        return to_json(self)


ZERO = LambdaElement()
ONE = LambdaElement({0: 1})


def q(exponent: Number = 1, coeff: int = 1) -> LambdaElement:
    """The monomial ``coeff * q^exponent``."""
    return LambdaElement.monomial(exponent, coeff)


def add(a: LambdaElement, b: LambdaElement) -> LambdaElement:
    return LambdaElement.coerce(a) + b


def mul(a: LambdaElement, b: LambdaElement) -> LambdaElement:
    return LambdaElement.coerce(a) * b


def order(a) -> Fraction | float:
    """Smallest exponent with nonzero coefficient, ``math.inf`` for zero."""
    a = LambdaElement.coerce(a)
    if not a._terms:
        return math.inf
    return next(iter(a._terms))


def specialize(a, mu: Number) -> Fraction:
    """Substitute ``q = mu``.

    Fractional exponents are only evaluated at ``mu = 1``; anything else
    would leave the rationals.
    """
    a = LambdaElement.coerce(a)
    mu = _frac(mu)
    total = Fraction(0)
    for e, c in a._terms.items():
        if mu == 1:
            total += c
            continue
        if e.denominator != 1:
            raise SpecializationError(
                "q^(%s) has no exact value at q = %s" % (e, mu))
        if mu == 0 and e < 0:
            raise SpecializationError("negative power of q at q = 0")
        total += c * mu ** int(e)
    return total


def common_denominator(elements: Iterable[LambdaElement]) -> int:
    n = 1
    for a in elements:
        for e in LambdaElement.coerce(a)._terms:
            n = math.lcm(n, e.denominator)
    return n


def to_single_variable(a, N: int) -> dict[int, int]:
    """Rewrite ``a`` in ``u = q^(1/N)``; returns a Laurent polynomial as
    ``{integer exponent: coefficient}``."""
    if N < 1:
        raise DenominatorError("N must be a positive integer")
    a = LambdaElement.coerce(a)
    out = {}
    for e, c in a._terms.items():
        k = e * N
        if k.denominator != 1:
            raise DenominatorError("exponent %s is not a multiple of 1/%d" % (e, N))
        out[int(k)] = c
    return out


def laurent_mul(p: Mapping[int, int], r: Mapping[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e1, c1 in p.items():
        for e2, c2 in r.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def to_json(a) -> list[dict]:
    a = LambdaElement.coerce(a)
    return [{"num": e.numerator, "den": e.denominator, "coeff": str(c)}
            for e, c in a._terms.items()]


def from_json(records) -> LambdaElement:
    if isinstance(records, (int, str)):
        return LambdaElement.coerce(int(records))
    return LambdaElement({Fraction(int(r["num"]), int(r["den"])): int(r["coeff"])
                          for r in records})


def dumps(a) -> str:
    return json.dumps(to_json(a))


def loads(s: str) -> LambdaElement:
    return from_json(json.loads(s))


class LambdaMatrix:
    """Matrix over the ring, stored as ``sum_nu q^nu * M_nu`` with integer
    object-dtype coefficient blocks ``M_nu``.

    Entry ``[i, j]`` is the coefficient of generator ``i`` in the image of
    generator ``j``.
    """

    __slots__ = ("shape", "blocks")

    def __init__(self, shape: tuple[int, int], blocks: Mapping[Number, np.ndarray] | None = None):
        self.shape = (int(shape[0]), int(shape[1]))
        clean = {}
        for e, m in (blocks or {}).items():
            m = np.asarray(m, dtype=object).reshape(self.shape)
            if any(x != 0 for x in m.flat):
                e = _frac(e)
                if e in clean:
                    m = clean[e] + m
                    if not any(x != 0 for x in m.flat):
                        del clean[e]
                        continue
                clean[e] = m
        self.blocks = dict(sorted(clean.items()))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "LambdaMatrix":
        return cls((rows, cols))

    @classmethod
    def identity(cls, n: int) -> "LambdaMatrix":
        return cls.from_int(np.eye(n, dtype=int))

    @classmethod
    def from_int(cls, m) -> "LambdaMatrix":
        m = np.asarray(m, dtype=object)
        if m.ndim != 2:
            m = m.reshape(len(m), -1) if m.size else m.reshape(0, 0)
        return cls(m.shape, {0: _as_int_array(m)})

    @classmethod
    def from_rows(cls, rows, shape: tuple[int, int] | None = None) -> "LambdaMatrix":
        rows = [list(r) for r in rows]
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        blocks: dict[Fraction, np.ndarray] = {}
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                x = LambdaElement.coerce(x)
                for e, c in x._terms.items():
                    if e not in blocks:
                        blocks[e] = np.zeros(shape, dtype=object)
                        blocks[e][:] = 0
                    blocks[e][i, j] += c
        return cls(shape, blocks)

    @classmethod
    def from_entries(cls, shape, entries: Mapping[tuple[int, int], LambdaElement]) -> "LambdaMatrix":
        blocks: dict[Fraction, np.ndarray] = {}
        for (i, j), x in entries.items():
            for e, c in LambdaElement.coerce(x)._terms.items():
                if e not in blocks:
                    blocks[e] = _zero_block(shape)
                blocks[e][i, j] += c
        return cls(shape, blocks)

    def entry(self, i: int, j: int) -> LambdaElement:
        return LambdaElement._raw({e: int(m[i, j]) for e, m in self.blocks.items()})

    __getitem__ = lambda self, ij: self.entry(*ij)

    def to_rows(self) -> list[list[LambdaElement]]:
        return [[self.entry(i, j) for j in range(self.shape[1])] for i in range(self.shape[0])]

    def nonzero_entries(self) -> dict[tuple[int, int], LambdaElement]:
        acc: dict[tuple[int, int], dict] = {}
        for e, m in self.blocks.items():
            for i, j in zip(*np.nonzero(m != 0)):
                acc.setdefault((int(i), int(j)), {})[e] = int(m[i, j])
        return {ij: LambdaElement._raw(t) for ij, t in acc.items()}

    def is_zero(self) -> bool:
        return not self.blocks

    def __eq__(self, other):
        if not isinstance(other, LambdaMatrix):
            return NotImplemented
        if self.shape != other.shape or self.blocks.keys() != other.blocks.keys():
            return False
        return all(np.array_equal(m, other.blocks[e]) for e, m in self.blocks.items())

    def __add__(self, other: "LambdaMatrix") -> "LambdaMatrix":
        _check_same_shape(self, other)
        blocks = dict(self.blocks)
        for e, m in other.blocks.items():
            blocks[e] = blocks[e] + m if e in blocks else m
        return LambdaMatrix(self.shape, blocks)

    def __neg__(self) -> "LambdaMatrix":
        return LambdaMatrix(self.shape, {e: -m for e, m in self.blocks.items()})

    def __sub__(self, other: "LambdaMatrix") -> "LambdaMatrix":
        return self + (-other)

    def __matmul__(self, other: "LambdaMatrix") -> "LambdaMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
        shape = (self.shape[0], other.shape[1])
        blocks: dict[Fraction, np.ndarray] = {}
        for e1, a in self.blocks.items():
            for e2, b in other.blocks.items():
                e = e1 + e2
                p = a.dot(b)
                blocks[e] = blocks[e] + p if e in blocks else p
        return LambdaMatrix(shape, blocks)

    def scale(self, x) -> "LambdaMatrix":
        x = LambdaElement.coerce(x)
        blocks: dict[Fraction, np.ndarray] = {}
        for e1, c in x._terms.items():
            for e2, m in self.blocks.items():
                e = e1 + e2
                blocks[e] = blocks[e] + c * m if e in blocks else c * m
        return LambdaMatrix(self.shape, blocks)

    @property
    def T(self) -> "LambdaMatrix":
        return LambdaMatrix(self.shape[::-1], {e: m.T for e, m in self.blocks.items()})

    def take(self, rows, cols) -> "LambdaMatrix":
        rows = np.asarray(rows, dtype=int)
        cols = np.asarray(cols, dtype=int)
        shape = (len(rows), len(cols))
        return LambdaMatrix(shape, {e: m[np.ix_(rows, cols)] for e, m in self.blocks.items()})

    def order(self) -> Fraction | float:
        return next(iter(self.blocks)) if self.blocks else math.inf

    def coefficient(self, exponent: Number) -> np.ndarray:
        m = self.blocks.get(_frac(exponent))
        return m.copy() if m is not None else _zero_block(self.shape)

    def specialize(self, mu: Number = 1) -> np.ndarray:
        mu = _frac(mu)
        out = _zero_block(self.shape)
        for e, m in self.blocks.items():
            if mu == 1:
                out = out + m
            elif e.denominator != 1:
                raise SpecializationError("q^(%s) has no exact value at q = %s" % (e, mu))
            else:
                out = out + m * (mu ** int(e))
        return out

    def denominator(self) -> int:
        n = 1
        for e in self.blocks:
            n = math.lcm(n, e.denominator)
        return n

    def reweight(self, row_weights, col_weights) -> "LambdaMatrix":
        """Entry ``[i, j]`` is multiplied by ``q^(col_weights[j] - row_weights[i])``."""
        rw = [_frac(w) for w in row_weights]
        cw = [_frac(w) for w in col_weights]
        entries = {(i, j): x.shift(cw[j] - rw[i]) for (i, j), x in self.nonzero_entries().items()}
        return LambdaMatrix.from_entries(self.shape, entries)

    def __repr__(self):
        return "LambdaMatrix(%r, %r)" % (self.shape, self.to_rows())


def block_matrix(rows: list[list[LambdaMatrix | None]], row_sizes, col_sizes) -> LambdaMatrix:
    """Assemble a block matrix; ``None`` stands for a zero block."""
    shape = (sum(row_sizes), sum(col_sizes))
    blocks: dict[Fraction, np.ndarray] = {}
    r0 = 0
    for bi, brow in enumerate(rows):
        c0 = 0
        for bj, m in enumerate(brow):
            if m is not None:
                if m.shape != (row_sizes[bi], col_sizes[bj]):
                    raise ValueError("block (%d, %d) has shape %s" % (bi, bj, m.shape))
                for e, b in m.blocks.items():
                    if e not in blocks:
                        blocks[e] = _zero_block(shape)
                    blocks[e][r0:r0 + b.shape[0], c0:c0 + b.shape[1]] += b
            c0 += col_sizes[bj]
        r0 += row_sizes[bi]
    return LambdaMatrix(shape, blocks)


def _zero_block(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out[...] = 0
    return out


def _as_int_array(m) -> np.ndarray:
    m = np.asarray(m, dtype=object)
    out = _zero_block(m.shape)
    for idx, x in np.ndenumerate(m):
        if isinstance(x, float) or (isinstance(x, Fraction) and x.denominator != 1):
            raise TypeError("integer entries required, got %r" % (x,))
        out[idx] = int(x)
    return out


def _check_same_shape(a: LambdaMatrix, b: LambdaMatrix):
    if a.shape != b.shape:
        raise ValueError("shape mismatch %s vs %s" % (a.shape, b.shape))
