"""Command line front end.

    dehnforge <area> <subcommand> [flags]

Every run prints (or writes with ``--out``) a JSON report whose rows are
sorted by case id.  Exit status: 0 all checks pass, 1 a check failed,
2 bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import __version__
from . import acceptance
from . import holonomy as hol
from . import pl_formula as pl
from . import twist_local as tw
from .fixtures import FIXTURES
from .homalg import (ComplexError, FactorizationError, cohomology_ranks, cone, double_cone_lemma_check,
                     find_violations, mf_cohomology, mf_verify, random_cone_data, verify_complex)
from .homalg.io import (SchemaError, complex_from_json, complex_to_json, cone_data_from_json,
                        matrix_from_json, mf_from_json)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# ---------------------------------------------------------------- reporting

def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _row(case_id, metric, tol, ok, prop, inputs=None) -> dict:
    return {"case_id": case_id, "inputs_digest": _digest(inputs), "metric": metric,
            "tolerance": tol, "pass": bool(ok), "property": prop}


def _report(suite: str, seed, rows: list[dict], result=None) -> dict:
    rows = sorted(rows, key=lambda r: r["case_id"])
    out = {"suite": suite, "seed": seed, "cases": rows, "pass": all(r["pass"] for r in rows)}
    if result is not None:
        out["result"] = result
    return out


def _emit(report: dict, out: str | None) -> int:
    text = json.dumps(report, sort_keys=True, indent=2, default=str) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report["pass"] else EXIT_FAIL


def _load(args) -> dict:
    if getattr(args, "fixture", None):
        if args.fixture not in FIXTURES:
            raise InputError("unknown fixture %r (known: %s)" % (args.fixture, ", ".join(sorted(FIXTURES))))
        return FIXTURES[args.fixture]()
    if not getattr(args, "input", None):
        raise InputError("an input file or --fixture is required")
    try:
        with open(args.input) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise InputError("cannot read %s: %s" % (args.input, err)) from err


def _ranks_json(c, mode):
    h = cohomology_ranks(c, mode)
    out = {"ranks": {str(d): r for d, r in sorted(h.ranks.items())}}
    if h.torsion:
        out["torsion"] = {str(d): t for d, t in sorted(h.torsion.items())}
    return out


# ---------------------------------------------------------------- homalg

def cmd_homalg(args) -> dict:
    sub = args.sub
    if sub == "doublecone" and args.random:
        rows = []
        for i in range(args.random):
            d = random_cone_data(np.random.default_rng([args.seed, i]), max_gens=12)
            rep = double_cone_lemma_check(d)
            ok = rep.hypotheses_hold and rep.acyclic
            rows.append(_row("random-%04d" % i, float(not ok), 0.0, ok,
                             "double cone lemma: leading-order exactness implies acyclic",
                             [args.seed, i]))
        n_ok = sum(r["pass"] for r in rows)
        return _report("homalg.doublecone", args.seed, rows, {"acyclic": n_ok, "instances": args.random})
    data = _load(args)
    digest = data
    try:
        if sub == "verify":
            if "generators" not in data and {"C0", "C1", "f"} <= data.keys():
                # a cone description: verify the cone it defines
                C0, C1 = complex_from_json(data["C0"]), complex_from_json(data["C1"])
                c = cone(matrix_from_json(data["f"], (len(C1), len(C0))), C0, C1, check=False)
            else:
                c = complex_from_json(data)
            ok = verify_complex(c)
            result = {"violations": find_violations(c)}
            if ok:
                result["cohomology"] = {m: _ranks_json(c, m) for m in ("rational-u", "integer-at-q1")}
            return _report("homalg.verify", args.seed,
                           [_row("verify", float(not ok), 0.0, ok, "differential squares to zero", digest)],
                           result)
        if sub == "cone":
            C0, C1 = complex_from_json(data["C0"]), complex_from_json(data["C1"])
            f = matrix_from_json(data["f"], (len(C1), len(C0)))
            K = cone(f, C0, C1)
            ok = verify_complex(K)
            return _report("homalg.cone", args.seed,
                           [_row("cone", float(not ok), 0.0, ok, "mapping cone is a complex", digest)],
                           {"cone": complex_to_json(K),
                            "cohomology": {m: _ranks_json(K, m) for m in ("rational-u", "integer-at-q1")}})
        if sub == "doublecone":
            d = cone_data_from_json(data).validate()
            rep = double_cone_lemma_check(d)
            ok = rep.acyclic if rep.hypotheses_hold else True
            rows = [_row("hypotheses", float(not rep.hypotheses_hold), 0.0, True,
                         "double cone lemma hypotheses (reported)", digest),
                    _row("conclusion", float(not ok), 0.0, ok,
                         "double cone lemma: hypotheses imply acyclic", digest)]
            return _report("homalg.doublecone", args.seed, rows,
                           {"hypotheses_hold": rep.hypotheses_hold, "messages": rep.messages,
                            "acyclic_rational": rep.acyclic_rational,
                            "acyclic_integer": rep.acyclic_integer})
        if sub == "mf":
            m = mf_from_json(data)
            ok = mf_verify(m)
            result = {"verified": ok}
            if ok and m.w >= 2:
                H = mf_cohomology(m)
                result["cohomology"] = {str(k): v for k, v in H.invariants.items()}
            return _report("homalg.mf", args.seed,
                           [_row("mf", float(not ok), 0.0, ok, "matrix factorization: d^2 = w", digest)],
                           result)
    except (SchemaError, ComplexError, FactorizationError, KeyError, TypeError) as err:
        raise InputError(str(err)) from err
    raise InputError("unknown homalg subcommand %r" % sub)


# ---------------------------------------------------------------- twist

def cmd_twist(args) -> dict:
    if args.c not in (1, 2, 3):
        raise InputError("--c must be 1, 2 or 3")
    try:
        a = tw.AngleProfile(args.eps, args.delta)
    except ValueError as err:
        raise InputError(str(err)) from err
    c, n, seed = args.c, args.samples or 100, args.seed
    flags = [c, args.eps, args.delta, n, seed]
    rows, result = [], {}
    if args.sub == "symp":
        tol = args.tol or 1e-6
        v = tw.symplectic_check(a, c, n, seed=seed)
        rows.append(_row("symp-c%d" % c, v, tol, v < tol, "model twist preserves the symplectic form", flags))
    elif args.sub == "antipodal":
        tol = args.tol or 1e-9
        v = tw.antipodal_defect(a, c, n, seed)
        s = tw.support_defect(a, c, n, seed)
        rows += [_row("antipodal-c%d" % c, v, tol, v < tol, "antipodal map on the zero section", flags),
                 _row("support-c%d" % c, s, tol, s < tol, "identity outside the support", flags)]
    elif args.sub == "equivariance":
        tol = args.tol or 1e-9
        e, m = tw.equivariance_check(a, c, n, seed)
        rows += [_row("equivariance-c%d" % c, e, tol, e < tol, "SO(c+1)-equivariance", flags),
                 _row("moment-norm-c%d" % c, m, tol, m < tol, "fiber norm preserved", flags)]
    elif args.sub == "intersections":
        rng = np.random.default_rng(seed)
        counts = []
        for i in range(min(n, 20)):
            v0, v1 = acceptance._random_pair(rng, c)
            d0 = tw.threshold_delta(a, v0, v1)
            res = tw.count_twisted_intersections(v0, v1, a.rescaled(max(args.delta, 2 * d0)))
            worst = max(res.residuals, default=float("inf"))
            counts.append(res.count)
            rows.append(_row("pair-%02d" % i, worst, 1e-10, res.count == 1 and worst < 1e-10,
                             "twisted fiber meets the other fiber exactly once", flags + [i]))
        result = {"counts": counts}
    elif args.sub == "maslov":
        loop = tw.maslov_index_loop(tw.sqrt_z_frame(c))
        sec = tw.section_index(c)
        rows += [_row("loop", float(abs(loop - c - 1)), 0.0, loop == c + 1,
                      "index of the sqrt z boundary loop is c + 1", [c]),
                 _row("section", float(abs(sec - c + 1)), 0.0, sec == c - 1, "section index is c - 1", [c])]
        result = {"loop": loop, "section": sec}
    else:
        raise InputError("unknown twist subcommand %r" % args.sub)
    return _report("twist.%s" % args.sub, seed, rows, result or None)


# ---------------------------------------------------------------- repvar

def _labels(text: str | None) -> list[Fraction]:
    if not text:
        raise InputError("--labels is required (comma-separated, e.g. 1/4,1/4,1/4)")
    try:
        out = [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as err:
        raise InputError("bad --labels: %s" % err) from err
    if any(not 0 <= m <= Fraction(1, 2) for m in out):
        raise InputError("labels must lie in [0, 1/2]")
    return out


def _braid(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError as err:
        raise InputError("bad braid word %r" % text) from err


def cmd_repvar(args) -> dict:
    sub, seed = args.sub, args.seed
    if sub == "kr":
        nu1, nu2 = hol.kr_labels(args.r, args.k)
        result = {"omega": {str(k): str(hol.sur_weights(args.r, k)) for k in (args.k, args.k + 1, args.k + 2)},
                  "nu1": str(nu1), "nu2": str(nu2)}
        if args.r == 2:
            result["su2"] = {"nu1": str(nu1.su2_label()), "nu2": str(nu2.su2_label())}
        return _report("repvar.kr", seed, [_row("kr", 0.0, 0.0, True, "weight arithmetic", [args.r, args.k])],
                       result)
    if sub == "fibers":
        cases = (("separating-generic", 0.3, 1), ("nonseparating-central", 0.5, 3), ("halftwist-pair", 0, 2))
        rows, result = [], {}
        for case, lam, want in cases:
            got = hol.coisotropic_fiber_dim(lam, case)
            result[case] = got
            rows.append(_row(case, float(abs(got - want)), 0.0, got == want,
                             "coisotropic fiber dimension", [case, lam]))
        return _report("repvar.fibers", seed, rows, result)
    if sub == "solve" and args.input:
        data = _load(args)
        try:
            labels, target, seed = hol.parse_instance(data)
        except hol.InstanceError as err:
            raise InputError(str(err)) from err
    else:
        labels, target = _labels(args.labels), args.target
    tol = args.tol or 1e-10
    if sub == "solve":
        t = hol.solve_rep_variety(labels, target, seed=seed, tol=tol)
        ok = t.residual() < tol
        return _report("repvar.solve", seed,
                       [_row("solve", t.residual(), tol, ok, "product relation holds", [labels, target, seed])],
                       hol.solution_to_json(t, labels, seed))
    if sub == "dim":
        rows, dims = [], []
        for i in range(args.samples or 1):
            t = hol.solve_rep_variety(labels, target, seed=seed * 10007 + i, tol=tol, irreducible="prefer")
            stab = hol.stabilizer_dimension(t.elements)
            dim = hol.tangent_dimension(t, allow_reducible=True)
            dims.append(dim)
            rows.append(_row("solution-%02d" % i, t.residual(), tol, t.residual() < tol,
                             "local dimension of the moduli space", [labels, target, seed, i]))
            rows[-1]["dimension"] = dim
            rows[-1]["stabilizer_dimension"] = stab
        return _report("repvar.dim", seed, rows, {"dimensions": dims})
    if sub == "orbit":
        t = hol.solve_rep_variety(labels, target, seed=seed, tol=tol)
        w1, w2 = _braid(args.braid), _braid(args.vs) if args.vs else None
        try:
            a = hol.braid_word(t, w1)
            result = {"braid": w1, "residual": a.residual()}
            rows = [_row("invariants", a.residual(), tol, a.residual() < tol and a.label_defect() < tol,
                         "half twists preserve the product and labels", [labels, w1])]
            if w2 is not None:
                b = hol.braid_word(t, w2)
                dist = a.distance(b)
                result.update({"vs": w2, "distance": dist})
                rows.append(_row("compare", dist, 1e-12, dist < 1e-12, "braid words act equally",
                                 [labels, w1, w2]))
        except hol.SU2Error as err:
            raise InputError(str(err)) from err
        return _report("repvar.orbit", seed, rows, result)
    raise InputError("unknown repvar subcommand %r" % sub)


# ---------------------------------------------------------------- pl

def cmd_pl(args) -> dict:
    if args.signs:
        signs = [pl.sign(c) for c in range(1, 9)]
        want = [-1, 1, 1, -1, -1, 1, 1, -1]
        return _report("pl.signs", args.seed,
                       [_row("sign-table", float(signs != want), 0.0, signs == want, "sign pattern of period 4")],
                       {"signs": "".join("+" if s > 0 else "-" for s in signs)})
    data = _load(args)
    try:
        s = pl.slant_from_json(data)
    except pl.SlantError as err:
        raise InputError(str(err)) from err
    mono = pl.monodromy_matrix(s)
    rep = pl.unipotency_check(s)
    rows = [_row("determinant", float(abs(abs(rep.determinant) - 1)), 0.0, abs(rep.determinant) == 1,
                 "monodromy is invertible over Z", data)]
    if args.fixture == "torus":
        want = pl.torus_twist_oracle(1, 0)
        ok = bool(np.array_equal(mono[1], want))
        rows.append(_row("torus-oracle", float(not ok), 0.0, ok,
                         "Picard-Lefschetz formula matches the torus twist", data))
    result = {"monodromy": pl.monodromy_to_json(mono), "determinant": rep.determinant,
              "is_unipotent": rep.is_unipotent, "nilpotency_index": rep.nilpotency_index}
    return _report("pl", args.seed, rows, result)


# ---------------------------------------------------------------- accept

def cmd_accept(args) -> dict:
    threads = max(1, int(os.environ.get("DEHNFORGE_THREADS", "1") or 1))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        crits = list(pool.map(lambda k: acceptance.run_criterion(k, args.seed, args.profile),
                              sorted(acceptance.CRITERIA)))
    rows = []
    for c in crits:
        sys.stderr.write(c.line() + "\n")
        r = _row("criterion-%02d" % c.number, float(not c.passed), 0.0, c.passed, c.title,
                 [args.seed, args.profile, c.number])
        r["summary"] = c.summary
        rows.append(r)
        if args.timing:
            r["wall_time"] = round(c.seconds, 3)
    return _report("accept.%s" % args.profile, args.seed, rows)


# ---------------------------------------------------------------- parser

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    p.add_argument("--samples", type=int, default=None, help="number of random samples")
    p.add_argument("--tol", type=float, default=None, help="override the tolerance")
    p.add_argument("--out", default=None, help="write the JSON report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dehnforge", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version="dehnforge " + __version__)
    areas = ap.add_subparsers(dest="area", required=True)

    p = areas.add_parser("homalg", help="cochain complexes, cones, matrix factorizations")
    p.add_argument("sub", choices=["verify", "cone", "doublecone", "mf"])
    p.add_argument("input", nargs="?", help="JSON input")
    p.add_argument("--fixture", help="use a built-in input: %s" % ", ".join(sorted(FIXTURES)))
    p.add_argument("--random", type=int, default=0, help="doublecone: check N generated instances")
    _common(p)
    p.set_defaults(func=cmd_homalg)

    p = areas.add_parser("twist", help="model Dehn twist checks")
    p.add_argument("sub", choices=["symp", "antipodal", "equivariance", "intersections", "maslov"])
    p.add_argument("--c", type=int, default=2, help="sphere dimension (1, 2 or 3)")
    p.add_argument("--eps", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=1.0)
    _common(p)
    p.set_defaults(func=cmd_twist)

    p = areas.add_parser("repvar", help="SU(2) holonomy tuples and twists")
    p.add_argument("sub", choices=["solve", "dim", "orbit", "fibers", "kr"])
    p.add_argument("input", nargs="?", help="solve: JSON instance")
    p.add_argument("--labels", help="comma-separated alcove labels, e.g. 1/4,1/4,1/4")
    p.add_argument("--target", default="+I", choices=["+I", "-I"])
    p.add_argument("--braid", default="1", help="orbit: braid word such as '1 2 1'")
    p.add_argument("--vs", default=None, help="orbit: second braid word to compare")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--k", type=int, default=0)
    _common(p)
    p.set_defaults(func=cmd_repvar)

    p = areas.add_parser("pl", help="Picard-Lefschetz monodromy from slant data")
    p.add_argument("input", nargs="?", help="slant data JSON")
    p.add_argument("--fixture", help="torus or zero")
    p.add_argument("--signs", action="store_true", help="print the sign table for c = 1..8")
    _common(p)
    p.set_defaults(func=cmd_pl)

    p = areas.add_parser("accept", help="run the acceptance suite")
    p.add_argument("--profile", choices=acceptance.PROFILES, default="fast")
    p.add_argument("--timing", action="store_true", help="include wall times (breaks byte-identity)")
    _common(p)
    p.set_defaults(func=cmd_accept)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except (InputError, hol.InstanceError, hol.SU2Error, tw.TwistError, pl.SlantError) as err:
        sys.stderr.write("dehnforge: error: %s\n" % err)
        return EXIT_INPUT
    except hol.NoSolutionError as err:
        sys.stderr.write("dehnforge: %s\n" % err)
        return EXIT_FAIL
    return _emit(report, args.out)


if __name__ == "__main__":
    sys.exit(main())
