"""JSON round-trips for complexes, cone data and matrix factorizations.

Complex schema::

    {"generators": [{"label": str, "degree": int, "weight": {"num": int, "den": int}}],
     "ring": "lambda" | "int",
     "differential": [[entry, ...], ...]}

An entry is an integer (``int`` ring) or a list of
``{"num", "den", "coeff"}`` records (``lambda`` ring).
"""

from __future__ import annotations

from fractions import Fraction

from .. import lambda_ring
from ..lambda_ring import LambdaMatrix
from .complexes import ConeData, Generator, GradedComplex
from .factorization import MatrixFactorization


class SchemaError(ValueError):
    pass


def matrix_to_json(m: LambdaMatrix, ring: str = "lambda") -> list[list]:
    rows = m.to_rows()
    if ring == "int":
        return [[int(lambda_ring.specialize(x, 1)) for x in r] for r in rows]
    return [[lambda_ring.to_json(x) for x in r] for r in rows]


def matrix_from_json(data, shape=None) -> LambdaMatrix:
    try:
        rows = [[lambda_ring.from_json(x) for x in r] for r in data]
    except (KeyError, TypeError, ValueError) as err:
        raise SchemaError("bad matrix entry: %s" % err) from err
    if shape is None:
        shape = (len(rows), len(rows[0]) if rows else 0)
    if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
        raise SchemaError("matrix is not %d x %d" % shape)
    return LambdaMatrix.from_rows(rows, shape)


def complex_to_json(c: GradedComplex) -> dict:
    out = {
        "generators": [{"label": g.label, "degree": g.degree,
                        "weight": {"num": g.weight.numerator, "den": g.weight.denominator}}
                       for g in c.generators],
        "ring": c.ring,
        "differential": matrix_to_json(c.differential, c.ring),
    }
    if c.period:
        out["period"] = c.period
    return out


def complex_from_json(data: dict) -> GradedComplex:
    try:
        gens = []
        for g in data["generators"]:
            w = g.get("weight", {"num": 0, "den": 1})
            gens.append(Generator(str(g["label"]), int(g["degree"]),
                                  Fraction(int(w["num"]), int(w["den"]))))
        ring = data.get("ring", "lambda")
        if ring not in ("lambda", "int"):
            raise SchemaError("ring must be 'lambda' or 'int', got %r" % ring)
        n = len(gens)
        d = matrix_from_json(data["differential"], (n, n)) if n else LambdaMatrix((0, 0))
        return GradedComplex(tuple(gens), d, ring, data.get("period"))
    except (KeyError, TypeError) as err:
        raise SchemaError("malformed complex: %r" % (err,)) from err


def cone_data_to_json(d: ConeData) -> dict:
    ring = "lambda"
    return {"C0": complex_to_json(d.C0), "C1": complex_to_json(d.C1), "C2": complex_to_json(d.C2),
            "f": matrix_to_json(d.f, ring), "k": matrix_to_json(d.k, ring),
            "h": matrix_to_json(d.h, ring)}


def cone_data_from_json(data: dict) -> ConeData:
    try:
        C0, C1, C2 = (complex_from_json(data[k]) for k in ("C0", "C1", "C2"))
        f = matrix_from_json(data["f"], (len(C1), len(C0)))
        k = matrix_from_json(data["k"], (len(C2), len(C1)))
        h = matrix_from_json(data["h"], (len(C2), len(C0)))
    except KeyError as err:
        raise SchemaError("missing field %s" % err) from err
    return ConeData(C0, C1, C2, f, k, h)


def mf_to_json(m: MatrixFactorization) -> dict:
    return {"C0_rank": m.C0_rank, "C1_rank": m.C1_rank, "w": m.w,
            "d0": [[int(x) for x in r] for r in m.d0.tolist()],
            "d1": [[int(x) for x in r] for r in m.d1.tolist()]}


def mf_from_json(data: dict) -> MatrixFactorization:
    try:
        return MatrixFactorization(int(data["C0_rank"]), int(data["C1_rank"]),
                                   data["d0"], data["d1"], int(data["w"]))
    except (KeyError, ValueError) as err:
        raise SchemaError("malformed matrix factorization: %s" % err) from err
