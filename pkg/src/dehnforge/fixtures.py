"""Small named inputs used by the command line and the tests."""

from __future__ import annotations

from .homalg import MatrixFactorization, int_complex
from .homalg.io import complex_to_json, matrix_to_json, mf_to_json
from .lambda_ring import LambdaMatrix
from . import pl_formula as pl


def cone_identity() -> dict:
    """Cone of the identity of a two-generator complex with zero differential."""
    C = int_complex([0, 0], [[0, 0], [0, 0]])
    return {"C0": complex_to_json(C), "C1": complex_to_json(C),
            "f": matrix_to_json(LambdaMatrix.identity(2), "int")}


def split_double_cone() -> dict:
    """``0 -> Z -> Z^2 -> Z -> 0`` split, zero differentials, ``h = 0``."""
    Z = int_complex([0], [[0]])
    Z2 = int_complex([0, 0], [[0, 0], [0, 0]])
    return {"C0": complex_to_json(Z), "C1": complex_to_json(Z2), "C2": complex_to_json(Z),
            "f": [[1], [0]], "k": [[0, 1]], "h": [[0]]}


def doubling_double_cone() -> dict:
    """``f0`` is multiplication by 2, so the leading sequence is not exact."""
    Z = int_complex([0], [[0]])
    return {"C0": complex_to_json(Z), "C1": complex_to_json(Z), "C2": complex_to_json(int_complex([], [])),
            "f": [[2]], "k": [], "h": []}


def mf_one_two() -> dict:
    return mf_to_json(MatrixFactorization.scalar(1, 2, 2))


def torus_slant() -> dict:
    return pl.slant_to_json(pl.torus_slant_data(1, 0, pl.fix_orientation()))


def zero_slant() -> dict:
    return pl.slant_to_json(pl.SlantData(pl.GradedGroup({0: 1, 1: 2, 2: 1}), pl.GradedGroup({0: 1}),
                                         pl.GradedMatrix(1, {}), pl.GradedMatrix(-1, {}), 1))


FIXTURES = {
    "cone-identity": cone_identity,
    "split-double-cone": split_double_cone,
    "doubling-double-cone": doubling_double_cone,
    "mf-1-2": mf_one_two,
    "torus": torus_slant,
    "zero": zero_slant,
}
