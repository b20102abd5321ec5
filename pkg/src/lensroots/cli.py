"""Command-line interface.

Subcommands: solve, beta, family, census, radial, milnor, plot.
Polynomials travel as JSON ({"terms": [{"nu", "mu", "re", "im"}, ...]})
read from a file argument or standard input, so subcommands compose:

    lensroots family ell --n 5 --m 2 --a 0.6 | lensroots solve

Exit codes: 0 success, 2 input error, 3 not admissible, 4 uncertified
count.  Reports are emitted as JSON even on refusal paths.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import families as fam
from . import milnor as mil
from . import mixedpoly as mp
from . import signed_index as si
from . import solver as slv
from . import svgplot
from . import symmetry as sym
from .errors import (
    CircleThroughZero,
    LensrootsError,
    NonIsolatedZeroSet,
    NotAdmissible,
    NotInvariant,
    RayViolation,
    UncertifiedCount,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_ADMISSIBLE = 3
EXIT_UNCERTIFIED = 4

_EXIT_BY_ERROR = (
    (NotAdmissible, EXIT_NOT_ADMISSIBLE),
    ((UncertifiedCount, NonIsolatedZeroSet, CircleThroughZero,
      RayViolation, NotInvariant), EXIT_UNCERTIFIED),
)


def _exit_code(exc: LensrootsError) -> int:
    for types, code in _EXIT_BY_ERROR:
        if isinstance(exc, types):
            return code
    return EXIT_INPUT


def _read_poly(path: str | None) -> mp.MixedPolynomial:
    if path in (None, "-"):
        return mp.loads(sys.stdin.read())
    with open(path) as fh:
        return mp.loads(fh.read())


def _emit(report: dict, path: str | None = None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    print(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_solve(args) -> int:
    f = _read_poly(args.poly)
    t0 = time.time()
    box = tuple(args.box) if args.box else slv.default_box(f)
    inv = slv.isolate_roots(f, box, tol=args.tol, max_depth=args.max_depth,
                            count_multiplicity=args.count_multiplicity)
    elapsed = time.time() - t0
    try:
        beta_val = si.beta(f)
        admissible = True
    except NotAdmissible:
        beta_val = None
        admissible = False
    if inv.certified:
        status = "certified"
    elif args.count_multiplicity and not inv.unresolved_boxes:
        status = "certified-with-multiplicity"
    else:
        status = "uncertified"
    report = {
        "polynomial": mp.to_json_dict(f),
        "box": list(box),
        "admissible": admissible,
        "beta": beta_val,
        "status": status,
        "seconds": round(elapsed, 3),
        **inv.to_json_dict(),
    }
    if args.symmetry:
        cfg = sym.verify_ray_constraint(inv, args.symmetry)
        report["rays"] = {str(i): j for i, j in sorted(cfg.assignments.items())}
        report["orbits"] = cfg.orbits
    _emit(report, args.json)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(svgplot.render_svg(f, box, inv.all_roots(), grid=args.grid))
    return EXIT_OK if status != "uncertified" else EXIT_UNCERTIFIED


def cmd_beta(args) -> int:
    f = _read_poly(args.poly)
    fact = si.top_part_factor(f)
    report = {
        "mixed_degree": fact.mixed_degree,
        "factorization": {
            "coefficient": [fact.coefficient.real, fact.coefficient.imag],
            "p": fact.p,
            "q": fact.q,
            "factors": [{"gamma": [g.real, g.imag], "nu": nu}
                        for g, nu in fact.factors],
        },
        "admissible": si.is_admissible(f, args.band),
    }
    try:
        report["beta"] = si.beta(f, args.band)
    except NotAdmissible as exc:
        report["beta"] = None
        report["error"] = {"code": exc.code, "message": str(exc)}
        _emit(report, args.json)
        return EXIT_NOT_ADMISSIBLE
    _emit(report, args.json)
    return EXIT_OK


def _family_spec(args) -> fam.LensFamilySpec:
    return fam.LensFamilySpec(
        kind=args.kind, n=args.n, m=args.m, a=args.a, b=args.b, eps=args.eps,
        t=args.t, preset=args.preset,
        p_coeffs=[complex(v) for v in args.p_coeffs or []],
        q_coeffs=[complex(v) for v in args.q_coeffs or []],
        sigmas=[complex(v) for v in args.sigmas or []],
        alphas=[complex(v) for v in args.alphas or []],
    )


def cmd_family(args) -> int:
    f = _family_spec(args).elaborate()
    text = json.dumps(mp.to_json_dict(f))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK


def cmd_census(args) -> int:
    param, lo, hi, steps = args.sweep
    lo, hi, steps = float(lo), float(hi), int(steps)
    if param not in ("a", "eps", "t") or steps < 1:
        raise LensrootsError(f"cannot sweep parameter {param!r}")
    values = np.linspace(lo, hi, steps)
    rows = ["param,rho,beta,certified,seconds"]
    for value in values:
        spec = _family_spec(args)
        setattr(spec, param, float(value))
        f = spec.elaborate()
        t0 = time.time()
        try:
            inv = slv.isolate_roots(f, slv.default_box(f), tol=args.tol,
                                    max_depth=args.max_depth)
            rho_s, certified = inv.rho, inv.certified
        except (UncertifiedCount, NonIsolatedZeroSet, NotAdmissible):
            rho_s, certified = "", False
        try:
            beta_s = si.beta(f)
        except NotAdmissible:
            beta_s = ""
        rows.append(f"{value:.10g},{rho_s},{beta_s},{str(certified).lower()},"
                    f"{time.time() - t0:.3f}")
    text = "\n".join(rows)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK


def cmd_radial(args) -> int:
    eq = sym.radial_equation(args.n, args.m, args.a, args.eps, args.branch)
    count = eq.count()
    report = {
        "branch": eq.branch,
        "coefficients": eq.as_floats(),
        "sturm_count": count,
        "branch_multiplicity": sym.branch_multiplicity(args.n, args.branch),
        "census_total": sym.radial_census(args.n, args.m, args.a, args.eps),
    }
    _emit(report, args.json)
    return EXIT_OK


def cmd_milnor(args) -> int:
    f = _read_poly(args.poly)
    report = mil.invariants(f, (args.p, args.q))
    _emit(report.to_json_dict(), args.json)
    return EXIT_OK


def cmd_plot(args) -> int:
    f = _read_poly(args.poly)
    box = tuple(args.box) if args.box else slv.default_box(f)
    roots = []
    if args.with_roots:
        roots = slv.isolate_roots(f, box).all_roots()
    svg = svgplot.render_svg(f, box, roots, grid=args.grid)
    with open(args.svg, "w") as fh:
        fh.write(svg)
    print(json.dumps({"svg": args.svg, "box": list(box), "grid": args.grid}))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_poly_arg(p):
    p.add_argument("poly", nargs="?", default=None,
                   help="polynomial JSON file ('-' or omitted: stdin)")


def _add_solver_args(p):
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-depth", type=int, default=60)


def _add_family_args(p):
    p.add_argument("kind", choices=fam.FAMILY_KINDS)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--preset", type=int)
    p.add_argument("--p-coeffs", nargs="*", help="ascending coefficients of p(z)")
    p.add_argument("--q-coeffs", nargs="*", help="ascending coefficients of q(z)")
    p.add_argument("--sigmas", nargs="*", help="point masses")
    p.add_argument("--alphas", nargs="*", help="mass positions")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lensroots",
        description="Certified root counting for mixed polynomials f(z, zbar)")
    ap.add_argument("--seed", type=int, default=None,
                    help="seed for any randomized sampling")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="isolate and certify all roots")
    _add_poly_arg(p)
    p.add_argument("--box", type=float, nargs=4, metavar=("X0", "X1", "Y0", "Y1"))
    _add_solver_args(p)
    p.add_argument("--count-multiplicity", action="store_true",
                   help="count flagged non-simple points by |multiplicity|")
    p.add_argument("--symmetry", type=int, metavar="N",
                   help="verify the Z/NZ ray constraint and report orbits")
    p.add_argument("--json", help="also write the report to a file")
    p.add_argument("--svg", help="write the zero-curve plot with root markers")
    p.add_argument("--grid", type=int, default=800)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("beta", help="signed count from the top factorization")
    _add_poly_arg(p)
    p.add_argument("--band", type=float, default=si.ADMISSIBILITY_BAND)
    p.add_argument("--json")
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("family", help="emit a family member as polynomial JSON")
    _add_family_args(p)
    p.add_argument("--out", help="also write the JSON to a file")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("census", help="sweep one parameter, emit a CSV of counts")
    _add_family_args(p)
    p.add_argument("--sweep", nargs=4, required=True,
                   metavar=("PARAM", "LO", "HI", "STEPS"))
    _add_solver_args(p)
    p.add_argument("--csv", help="also write the CSV to a file")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("radial", help="radial restriction and Sturm count")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--eps", type=float, default=0.0)
    p.add_argument("--branch", choices=sym.BRANCHES, default="L")
    p.add_argument("--json")
    p.set_defaults(func=cmd_radial)

    p = sub.add_parser("milnor", help="Milnor-fibration invariants of the lift")
    _add_poly_arg(p)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--json")
    p.set_defaults(func=cmd_milnor)

    p = sub.add_parser("plot", help="render the zero curves to SVG")
    _add_poly_arg(p)
    p.add_argument("--box", type=float, nargs=4, metavar=("X0", "X1", "Y0", "Y1"))
    p.add_argument("--svg", required=True)
    p.add_argument("--grid", type=int, default=800)
    p.add_argument("--with-roots", action="store_true")
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is not None:
        np.random.seed(args.seed)
    try:
        return args.func(args)
    except LensrootsError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}})
        return _exit_code(exc)
    except FileNotFoundError as exc:
        _emit({"error": {"code": "input_error", "message": str(exc)}})
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
