"""JSON instances and solutions for the representation-variety solver.

Instance::

    {"labels": [{"num": 1, "den": 4}, ...], "target": "+I" | "-I", "seed": 0}

Solution: the instance plus ``"elements"`` (quaternions as lists of four
decimal strings with 17 significant digits), ``"residual"`` and
``"stabilizer_dimension"``.
"""

from __future__ import annotations

from fractions import Fraction

from .repvar import HolonomyTuple, reducibility_margin, stabilizer_dimension
from .su2 import SU2Element


class InstanceError(ValueError):
    pass


def parse_instance(data: dict) -> tuple[list[Fraction], str, int]:
    try:
        labels = [Fraction(int(x["num"]), int(x["den"])) if isinstance(x, dict) else Fraction(x)
                  for x in data["labels"]]
        target = data.get("target", "+I")
        seed = int(data.get("seed", 0))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as err:
        raise InstanceError("malformed instance: %s" % err) from err
    if target not in ("+I", "-I"):
        raise InstanceError("target must be '+I' or '-I', got %r" % (target,))
    for m in labels:
        if not 0 <= m <= Fraction(1, 2):
            raise InstanceError("label %s outside [0, 1/2]" % m)
    return labels, target, seed


def instance_to_json(labels, target: str = "+I", seed: int = 0) -> dict:
    fr = [Fraction(m) for m in labels]
    return {"labels": [{"num": m.numerator, "den": m.denominator} for m in fr],
            "target": target, "seed": int(seed)}


def _fmt(x: float) -> str:
    return "%.17g" % x


def solution_to_json(t: HolonomyTuple, labels=None, seed: int = 0) -> dict:
    labels = labels if labels is not None else [Fraction(m).limit_denominator(10 ** 6) for m in t.labels]
    out = instance_to_json(labels, "+I" if t.target.q[0] > 0 else "-I", seed)
    out["elements"] = [[_fmt(float(x)) for x in g.q] for g in t.elements]
    out["residual"] = _fmt(t.residual())
    out["stabilizer_dimension"] = stabilizer_dimension(t.elements)
    out["reducibility_margin"] = _fmt(reducibility_margin(t.elements))
    return out


def solution_from_json(data: dict) -> HolonomyTuple:
    labels, target, _ = parse_instance(data)
    try:
        els = [SU2Element([float(x) for x in q]) for q in data["elements"]]
    except (KeyError, TypeError, ValueError) as err:
        raise InstanceError("malformed solution: %s" % err) from err
    return HolonomyTuple(tuple(els), tuple(labels), target)
