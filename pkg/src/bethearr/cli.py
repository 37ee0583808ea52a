"""Command-line front end: load JSON instances, run analyses and
verification suites, emit machine-readable JSON reports.

Exit codes: 0 pass, 1 verification failure, 2 input error, 3 precondition
violation.  Reports go to stdout (or --out); human-readable summaries go to
stderr only.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction

import numpy as np

from . import gaudin as gd
from .arrangement import WeightedArrangement
from .master import (CriticalPoint, find_critical_points, group_orbits,
                     hess_det, symmetric_group)
from .special import verify_norm_identity, verify_orthogonality, verify_singular

SCHEMA_VERSION = 1

EXIT_PASS = 0
EXIT_VERIFY_FAIL = 1
EXIT_INPUT_ERROR = 2
EXIT_PRECONDITION = 3


class InputError(Exception):
    pass


class PreconditionError(Exception):
    pass


def _render(value):
    """JSON-ready rendering: rationals as "p/q", complex as [re, im]."""
    if isinstance(value, bool):
        return value
    if isinstance(value, (int,)):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {str(k): _render(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_render(v) for v in value]
    return str(value)


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def _load_arrangement(path: str) -> WeightedArrangement:
    data = _load_json(path)
    try:
        return WeightedArrangement.from_json(data)
    except ValueError as exc:
        if "no vertex" in str(exc):
            raise PreconditionError(str(exc)) from exc
        raise InputError(str(exc)) from exc


def _load_gaudin(path: str) -> gd.GaudinProblem:
    data = _load_json(path)
    try:
        return gd.GaudinProblem.from_json(data)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _emit(report: dict, args) -> None:
    report = {"schema_version": SCHEMA_VERSION, **report}
    text = json.dumps(_render(report), indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _to_float_arrangement(arr: WeightedArrangement, args) -> WeightedArrangement:
    if args.mode == "exact":
        return arr
    from .arrangement import Hyperplane
    hyperplanes = [
        Hyperplane(complex(h.b0), tuple(complex(x) for x in h.b), h.label)
        for h in arr.hyperplanes
    ]
    return WeightedArrangement(
        arr.ambient_dim, hyperplanes, [complex(a) for a in arr.exponents]
    )


def _critical_points(arr, args):
    return find_critical_points(
        arr, seed=args.seed, n_starts=args.starts, tol=args.tol_newton
    )


def _point_report(cp: CriticalPoint) -> dict:
    return {
        "t": list(cp.t),
        "grad_residual": cp.grad_residual,
        "hess_det": cp.hess_det,
        "nondegenerate": cp.nondegenerate,
        "orbit_id": cp.orbit_id,
    }


# -- subcommands -------------------------------------------------------------


def cmd_analyze(args) -> int:
    arr = _to_float_arrangement(_load_arrangement(args.file), args)
    report = {
        "command": "analyze",
        "n_hyperplanes": arr.n,
        "dim": arr.ambient_dim,
        "dims": arr.dims(),
        "chi": arr.euler_characteristic(),
        "circuits": [list(c) for c in arr.circuits()],
        "has_vertex": True,
    }
    _emit(report, args)
    print(f"analyze: dims={report['dims']} chi={report['chi']}", file=sys.stderr)
    return EXIT_PASS


def cmd_critical(args) -> int:
    arr = _to_float_arrangement(_load_arrangement(args.file), args)
    points = _critical_points(arr, args)
    report = {
        "command": "critical",
        "seed": args.seed,
        "n_starts": args.starts,
        "abs_chi": abs(arr.euler_characteristic()),
        "points": [_point_report(cp) for cp in points],
    }
    _emit(report, args)
    print(f"critical: found {len(points)} points, |chi|={report['abs_chi']}",
          file=sys.stderr)
    return EXIT_PASS


def cmd_verify(args) -> int:
    arr = _to_float_arrangement(_load_arrangement(args.file), args)
    points = _critical_points(arr, args)
    tol = args.tol_verify
    checks = []

    for idx, cp in enumerate(points):
        sing = verify_singular(arr, cp.t, tol=max(tol, 1e-8))
        checks.append({
            "name": f"singular_at_critical_{idx}",
            "lhs": sing["delta_norm"], "rhs": 0.0,
            "abs_err": sing["delta_norm"],
            "pass": sing["is_critical"] and sing["delta_norm"] <= max(tol, 1e-8),
        })
        norm = verify_norm_identity(arr, cp.t)
        scale = max(abs(complex(norm["rhs"])), 1e-300)
        checks.append({
            "name": f"norm_identity_{idx}",
            "lhs": complex(norm["lhs"]), "rhs": complex(norm["rhs"]),
            "abs_err": norm["abs_err"],
            "pass": norm["abs_err"] <= tol * scale,
        })

    rng = np.random.default_rng(args.seed + 1)
    controls = 0
    while controls < 20:
        t = tuple(
            complex(a, b) for a, b in zip(
                rng.uniform(-2, 2, arr.ambient_dim),
                rng.uniform(-2, 2, arr.ambient_dim),
            )
        )
        if arr.contains_point(t):
            continue
        controls += 1
        sing = verify_singular(arr, t)
        checks.append({
            "name": f"control_point_{controls}",
            "lhs": sing["delta_norm"], "rhs": sing["grad_norm"],
            "abs_err": 0.0,
            "pass": sing["pass"],
        })

    for i, j in itertools.combinations(range(len(points)), 2):
        orth = verify_orthogonality(arr, points[i].t, points[j].t, tol=max(tol, 1e-10))
        checks.append({
            "name": f"orthogonality_{i}_{j}",
            "lhs": complex(orth["value"]), "rhs": 0.0,
            "abs_err": abs(complex(orth["value"])),
            "pass": orth["pass"],
        })

    ok = all(c["pass"] for c in checks)
    report = {
        "command": "verify",
        "seed": args.seed,
        "n_points": len(points),
        "checks": checks,
        "pass": ok,
    }
    _emit(report, args)
    print(f"verify: {sum(c['pass'] for c in checks)}/{len(checks)} checks passed",
          file=sys.stderr)
    return EXIT_PASS if ok else EXIT_VERIFY_FAIL


def cmd_gaudin(args) -> int:
    problem = _load_gaudin(args.file)
    if not problem.is_sl2:
        raise PreconditionError("module-level checks require sl2 data")
    k = problem.k
    report = {"command": "gaudin", "seed": args.seed, "k": k,
              "sing_dim": gd.singular_dimension(problem)}
    checks = []

    if k == 0:
        omega = gd.canonical_weight_function(problem, ())
        norm = gd.tensor_shapovalov(problem, omega, omega)
        checks.append({"name": "trivial_norm", "lhs": norm, "rhs": Fraction(1),
                       "abs_err": abs(complex(norm) - 1), "pass": norm == 1})
        representatives = []
    else:
        arr = gd.build_discriminantal(problem)
        points = _critical_points(arr, args)
        points = group_orbits(points, symmetric_group(k))
        seen = set()
        representatives = []
        for cp in points:
            if cp.orbit_id in seen or not cp.nondegenerate:
                continue
            if len(set(round(complex(x).real, 9) + 1j * round(complex(x).imag, 9)
                       for x in cp.t)) != k:
                continue
            seen.add(cp.orbit_id)
            representatives.append(cp)
        report["n_points"] = len(points)
        report["n_orbits"] = len(representatives)

        for idx, cp in enumerate(representatives):
            others = [r.t for r in representatives if r is not cp]
            bethe = gd.verify_bethe(problem, cp.t, others=others, tol=args.tol_verify)
            checks.append({
                "name": f"bethe_singular_{idx}",
                "lhs": bethe["singular_err"], "rhs": 0.0,
                "abs_err": bethe["singular_err"], "pass": bethe["singular_pass"],
            })
            checks.append({
                "name": f"bethe_norm_{idx}",
                "lhs": bethe["norm_lhs"], "rhs": bethe["norm_rhs"],
                "abs_err": abs(bethe["norm_lhs"] - bethe["norm_rhs"]),
                "pass": bethe["norm_pass"],
            })
            for e in bethe["eigenvectors"]:
                checks.append({
                    "name": f"bethe_eigenvector_{idx}_K{e['i'] + 1}",
                    "lhs": e["eigenvalue"], "rhs": e["eigenvalue"],
                    "abs_err": e["rel_err"], "pass": e["pass"],
                })
            for o in bethe["orthogonality"]:
                checks.append({
                    "name": f"bethe_orthogonality_{idx}_{o['other']}",
                    "lhs": o["value"], "rhs": 0.0,
                    "abs_err": abs(o["value"]), "pass": o["pass"],
                })

        if representatives:
            vectors = [gd.canonical_weight_function(problem, cp.t)
                       for cp in representatives]
            gram = np.array([
                [complex(gd.tensor_shapovalov(problem, a, b)) for b in vectors]
                for a in vectors
            ])
            rank = int(np.linalg.matrix_rank(gram))
            checks.append({
                "name": "gram_rank_vs_sing_dim",
                "lhs": rank, "rhs": report["sing_dim"],
                "abs_err": abs(rank - report["sing_dim"]),
                "pass": rank == len(representatives) and rank <= report["sing_dim"],
            })

        if k <= 3:
            shap = gd.verify_shap_correspondence(problem)
            checks.append({
                "name": "shapovalov_correspondence",
                "lhs": shap["factor"], "rhs": shap["expected_factor"],
                "abs_err": 0 if shap["pass"] else 1,
                "pass": shap["pass"],
            })
            if representatives:
                canonical = gd.verify_canonical_element(
                    problem, representatives[0].t,
                    representatives[1].t if len(representatives) > 1 else None,
                    tol=args.tol_verify,
                )
                for i, c in enumerate(canonical["checks"]):
                    checks.append({
                        "name": f"canonical_element_{i}",
                        "lhs": c["lhs"], "rhs": c["rhs"],
                        "abs_err": c["rel_err"], "pass": c["pass"],
                    })

    ok = all(c["pass"] for c in checks)
    report["checks"] = checks
    report["pass"] = ok
    _emit(report, args)
    print(f"gaudin: {sum(c['pass'] for c in checks)}/{len(checks)} checks passed",
          file=sys.stderr)
    return EXIT_PASS if ok else EXIT_VERIFY_FAIL


# -- argument parsing --------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bethearr",
        description="Analyze weighted arrangements and verify Bethe-ansatz "
                    "identities on desk-scale instances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, func, help_text in [
        ("analyze", cmd_analyze, "combinatorial summary of an arrangement"),
        ("critical", cmd_critical, "multi-start search for critical points"),
        ("verify", cmd_verify, "singularity/norm/orthogonality checks"),
        ("gaudin", cmd_gaudin, "end-to-end Bethe checks for a Gaudin problem"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="input JSON file")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--starts", type=int, default=100)
        p.add_argument("--tol-newton", type=float, default=1e-12)
        p.add_argument("--tol-verify", type=float, default=1e-8)
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--exact", dest="mode", action="store_const",
                          const="exact", default="exact")
        mode.add_argument("--float", dest="mode", action="store_const",
                          const="float")
        p.add_argument("--out", default=None, help="write the report here")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.tol_newton <= 0 or args.tol_verify <= 0:
        print("error: tolerances must be positive", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
