"""Integer matrix factorizations ``d1 d0 = w Id``, ``d0 d1 = w Id`` and the
cohomology of the 2-periodic complex reduced mod ``w``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from . import linalg


class FactorizationError(ValueError):
    pass


def _int_matrix(m, shape) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    a[...] = 0
    if a.size:
        a[...] = np.asarray(m, dtype=object).reshape(shape)
    return np.vectorize(int, otypes=[object])(a) if a.size else a


@dataclass(frozen=True, eq=False)
class MatrixFactorization:
    """``d0: C0 -> C1`` and ``d1: C1 -> C0`` with matrices acting on columns."""

    C0_rank: int
    C1_rank: int
    d0: np.ndarray
    d1: np.ndarray
    w: int

    def __post_init__(self):
        object.__setattr__(self, "d0", _int_matrix(self.d0, (self.C1_rank, self.C0_rank)))
        object.__setattr__(self, "d1", _int_matrix(self.d1, (self.C0_rank, self.C1_rank)))
        object.__setattr__(self, "w", int(self.w))

    @classmethod
    def scalar(cls, a: int, b: int, w: int) -> "MatrixFactorization":
        return cls(1, 1, [[a]], [[b]], w)

    def conjugate(self, P, Q) -> "MatrixFactorization":
        """Change bases by ``P`` on ``C0`` and ``Q`` on ``C1`` (both unimodular)."""
        P, Q = Matrix(P), Matrix(Q)
        d0 = Q * Matrix(self.d0) * P.inv()
        d1 = P * Matrix(self.d1) * Q.inv()
        return MatrixFactorization(self.C0_rank, self.C1_rank, np.array(d0.tolist(), dtype=object),
                                   np.array(d1.tolist(), dtype=object), self.w)


def _scalar(w: int, n: int) -> np.ndarray:
    return w * np.eye(n, dtype=int).astype(object)


def mf_verify(m: MatrixFactorization) -> bool:
    """Both composites equal ``w Id``; for ``w = 0`` this is a 2-periodic complex."""
    return bool(np.array_equal(m.d1.dot(m.d0), _scalar(m.w, m.C0_rank))
                and np.array_equal(m.d0.dot(m.d1), _scalar(m.w, m.C1_rank)))


def _kernel_lattice(A: np.ndarray, n: int) -> Matrix:
    """Basis (as columns) of ``{x in Z^m : A x = 0 mod n}``."""
    rows, cols = A.shape
    if rows == 0:
        return Matrix.eye(cols)
    S, U, V = smith_normal_decomp(Matrix(A.tolist()))
    # S = U A V, so A x = 0 mod n iff S y = 0 mod n with x = V y
    scale = []
    for i in range(cols):
        s = int(S[i, i]) if i < rows else 0
        g = math.gcd(s, n) if s else n
        scale.append(n // int(g))
    return V * Matrix.diag(*scale)


def quotient_invariants(A: np.ndarray, B: np.ndarray, n: int) -> list[int]:
    """Invariant factors (all > 1) of ``ker(A mod n) / im(B mod n)``.

    Requires ``A B = 0 mod n``.
    """
    m = A.shape[1]
    if m == 0:
        return []
    K = _kernel_lattice(A, n)
    gens = Matrix.hstack(Matrix(B.tolist()) if B.shape[1] else Matrix.zeros(m, 0),
                         n * Matrix.eye(m))
    coeffs = K.inv() * gens
    if any(x.q != 1 for x in coeffs):
        raise FactorizationError("image is not contained in the kernel mod %d" % n)
    inv = linalg.smith_invariants(np.array(coeffs.tolist(), dtype=object))
    return [abs(d) for d in inv if abs(d) != 1]


@dataclass
class MFCohomology:
    w: int
    invariants: dict[int, list[int]]

    def order(self, degree: int) -> int:
        return int(np.prod(self.invariants[degree], dtype=object)) if self.invariants[degree] else 1

    def free_rank(self, degree: int) -> int:
        """Number of free ``Z/w`` summands."""
        return sum(1 for d in self.invariants[degree] if d == self.w)


def mf_cohomology(m: MatrixFactorization) -> MFCohomology:
    """``H^0 = ker d0 / im d1`` on ``C0`` and ``H^1 = ker d1 / im d0`` on
    ``C1``, all mod ``w``."""
    if m.w < 2:
        raise FactorizationError("cohomology mod w needs w >= 2, got %d" % m.w)
    if not mf_verify(m):
        raise FactorizationError("not a matrix factorization of w = %d" % m.w)
    return MFCohomology(m.w, {0: quotient_invariants(m.d0, m.d1, m.w),
                              1: quotient_invariants(m.d1, m.d0, m.w)})


def mf_morphism_check(m: MatrixFactorization, m2: MatrixFactorization, f0, f1) -> bool:
    """Whether ``(f0, f1)`` intertwines the differentials of ``m`` and ``m2``."""
    if m.w != m2.w:
        raise FactorizationError("potentials differ: %d vs %d" % (m.w, m2.w))
    f0 = _int_matrix(f0, (m2.C0_rank, m.C0_rank))
    f1 = _int_matrix(f1, (m2.C1_rank, m.C1_rank))
    return bool(np.array_equal(f1.dot(m.d0), m2.d0.dot(f0))
                and np.array_equal(f0.dot(m.d1), m2.d1.dot(f1)))


def random_factorization(rng: np.random.Generator, w: int, rank: int) -> MatrixFactorization:
    """``d0 = U diag(a) V``, ``d1 = V^-1 diag(w / a) U^-1`` with each ``a_i``
    a random divisor of ``w`` and ``U``, ``V`` random unimodular."""
    divisors = [a for a in range(1, abs(w) + 1) if w % a == 0] if w else [1]
    a = [int(rng.choice(divisors)) * int(rng.choice([-1, 1])) for _ in range(rank)]

    def unimodular():
        M = Matrix.eye(rank)
        for _ in range(3 * rank):
            i, j = (int(x) for x in rng.integers(0, rank, size=2))
            if i != j:
                M = M.elementary_row_op("n->n+km", row=i, k=int(rng.integers(-2, 3)), row2=j)
        return M

    U, V = unimodular(), unimodular()
    d0 = U * Matrix.diag(*a) * V
    d1 = V.inv() * Matrix.diag(*[w // x for x in a]) * U.inv()
    return MatrixFactorization(rank, rank, np.array(d0.tolist(), dtype=object),
                               np.array(d1.tolist(), dtype=object), w)
