"""Command-line front end.

Subcommands
-----------
thresholds      coupling thresholds of the selfadjointness regimes
hardy-verify    Rayleigh quotients along the minimising sequence
psi-check       finite-difference residual of the weight identity
spectrum        lowest truncated eigenvalues for one (N, l, k)
fall-to-center  BOUNDED/UNBOUNDED scan over shrinking inner radii
phase-diagram   condition and lowest eigenvalue over a (k, l) grid
min-degree      smallest admissible harmonic degree for a coupling

Exit codes: 0 on success, 1 on invalid input or flags, 2 when a
numerical diagnostic fails (classification disagrees with the algebraic
condition, a residual gate is violated, or an inertia re-check fails).

Every run is deterministic for a fixed flag set: file outputs are
written atomically (temp file then rename), floats are serialized with
17 significant digits, infinities as the strings "-inf"/"inf", and all
sampling is driven by an explicit seed.  Relative output paths resolve
against $INVSQHARDY_OUT_DIR when that variable is set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import harmonics, hardy, radial
from .quadrature import QuadratureError

OUT_DIR_ENV = "INVSQHARDY_OUT_DIR"

SWEEP_HEADER = "m,rayleigh,predicted,gap"
SCAN_HEADER = "epsilon,lambda_min,classification"
PHASE_HEADER = "k,ell,condition,lambda_min"
PSI_HEADER = "index,h,residual,residual_half,ratio,rel_residual"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract here is 1
    def error(self, message):
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# serialization helpers

def _fmt(x: float) -> str:
    x = float(x)
    if math.isinf(x):
        return "-inf" if x < 0 else "inf"
    return format(x, ".17g")


def _render_json(obj) -> str:
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isinf(obj) or math.isnan(obj):
            return json.dumps(_fmt(obj) if not math.isnan(obj) else "nan")
        return _fmt(obj)
    if isinstance(obj, dict):
        items = ("%s: %s" % (json.dumps(str(k)), _render_json(v))
                 for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_render_json(v) for v in obj) + "]"
    raise TypeError("cannot serialize %r" % (type(obj),))


def _resolve_out(path: str) -> str:
    if os.path.isabs(path):
        return path
    return os.path.join(os.environ.get(OUT_DIR_ENV, "."), path)


def _atomic_write(path: str, text: str):
    path = _resolve_out(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-",
                               suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(cells) for cells in rows)
    return "\n".join(lines) + "\n"


def _float_list(text: str):
    try:
        return [float(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated "
                                         "list of numbers")


# ---------------------------------------------------------------------------
# harmonic construction shared by several subcommands

def _load_poly_terms(path: str):
    """Terms file: JSON array of [exponent-list, coefficient] pairs."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ValueError("polynomial file must hold a JSON array of "
                         "[exponents, coefficient] pairs")
    terms = []
    for entry in data:
        if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
            raise ValueError("each term must be an [exponents, coefficient] pair")
        exps, coeff = entry
        terms.append((tuple(int(p) for p in exps), float(coeff)))
    return terms


def _build_spec(args) -> harmonics.HarmonicSpec:
    family = args.family
    if family == "zonal":
        if args.ell is None:
            raise ValueError("zonal family needs --ell")
        return harmonics.zonal(args.N, args.ell)
    if family == "planar":
        if args.N != 2:
            raise ValueError("planar family is specific to N = 2")
        if args.ell is None:
            raise ValueError("planar family needs --ell")
        return harmonics.planar(args.ell, args.parity)
    if family == "product":
        spec = harmonics.product(args.N)
        if args.ell is not None and args.ell != spec.degree:
            raise ValueError("product family has degree N = %d" % args.N)
        return spec
    if family == "poly":
        if not args.poly_file:
            raise ValueError("poly family needs --poly-file")
        spec = harmonics.homogeneous_poly(_load_poly_terms(args.poly_file))
        if spec.dimension != args.N:
            raise ValueError("polynomial lives in dimension %d, not %d"
                             % (spec.dimension, args.N))
        if args.ell is not None and args.ell != spec.degree:
            raise ValueError("polynomial has degree %d" % spec.degree)
        return spec
    raise ValueError("unknown family %r" % family)


# ---------------------------------------------------------------------------
# subcommands

def cmd_thresholds(args) -> int:
    table = radial.regime_thresholds(args.N)
    payload = {"N": args.N}
    payload.update(table)
    text = _render_json(payload) + "\n"
    sys.stdout.write(text)
    if args.out:
        _atomic_write(args.out, text)
    return 0


def cmd_hardy_verify(args) -> int:
    spec = _build_spec(args)
    bump = hardy.make_bump(args.bump)
    rows = hardy.optimality_sweep(spec, bump, args.m)
    csv_rows = [(_fmt(r.m), _fmt(r.rayleigh), _fmt(r.predicted), _fmt(r.gap))
                for r in rows]
    text = _csv_text(SWEEP_HEADER, csv_rows)
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    sharp = hardy.sharp_constant(spec.dimension, spec.degree)
    gate = args.gate if args.gate is not None else 1e-6 * (1.0 + sharp)
    worst = max(abs(r.gap) for r in rows)
    summary = {"N": spec.dimension, "ell": spec.degree,
               "sharp_constant": sharp,
               "derivative_energy": bump.derivative_energy,
               "max_abs_gap": worst, "gate": gate}
    sys.stdout.write(_render_json(summary) + "\n")
    return 0 if worst <= gate else 2


def cmd_psi_check(args) -> int:
    spec = _build_spec(args)
    rng = np.random.Generator(np.random.PCG64(args.seed))
    directions = harmonics.sample_off_nodal(spec, args.points, rng)
    radii = rng.uniform(args.radius_min, args.radius_max, size=args.points)
    c = hardy.sharp_constant(spec.dimension, spec.degree)
    h = args.h
    rows = []
    violations = 0
    for i in range(args.points):
        x = radii[i] * directions[i]
        r = float(np.linalg.norm(x))
        psi = abs(float(hardy.weight_psi(spec, x)))
        res = hardy.delta_psi_residual(spec, x, h)
        res_half = hardy.delta_psi_residual(spec, x, 0.5 * h)
        scale = (c if c > 0 else 1.0) * psi / r ** 2
        rel = res / scale
        # below the stencil noise floor the residual is roundoff and the
        # halving ratio carries no information
        floor_half = harmonics.stencil_noise_floor(spec.dimension, psi, 0.5 * h)
        ratio = res / res_half if res_half > 4.0 * floor_half else math.nan
        if rel > args.gate and res > harmonics.stencil_noise_floor(
                spec.dimension, psi, h):
            violations += 1
        rows.append((str(i), _fmt(h), _fmt(res), _fmt(res_half),
                     _fmt(ratio) if not math.isnan(ratio) else "nan",
                     _fmt(rel)))
    text = _csv_text(PSI_HEADER, rows)
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    summary = {"N": spec.dimension, "ell": spec.degree, "points": args.points,
               "h": h, "gate": args.gate, "violations": violations}
    sys.stdout.write(_render_json(summary) + "\n")
    return 0 if violations == 0 else 2


def cmd_spectrum(args) -> int:
    problem = radial.RadialProblem(args.N, args.ell, args.k)
    grid = radial.GridSpec(args.eps, args.R, args.n, args.spacing)
    result = radial.solve_spectrum(problem, grid, args.count)
    payload = {
        "N": args.N, "ell": args.ell, "k": args.k,
        "effective_coupling": problem.coupling_effective,
        "condition_holds": problem.condition,
        "eps": args.eps, "R": args.R, "n": args.n,
        "eigenvalues": list(result.eigenvalues),
        "sturm_counts_verified": result.sturm_counts_verified,
    }
    text = _render_json(payload) + "\n"
    sys.stdout.write(text)
    if args.out:
        _atomic_write(args.out, text)
    return 0 if result.sturm_counts_verified else 2


def cmd_fall_to_center(args) -> int:
    problem = radial.RadialProblem(args.N, args.ell, args.k)
    report = radial.fall_to_center_scan(problem, args.eps, outer=args.R,
                                        points=args.n)
    rows = [(_fmt(eps), _fmt(lam), report.classification)
            for eps, lam in zip(report.epsilons, report.lambda_mins)]
    text = _csv_text(SCAN_HEADER, rows)
    if args.out:
        _atomic_write(args.out, text)
    else:
        sys.stdout.write(text)
    summary = {"N": args.N, "ell": args.ell, "k": args.k,
               "classification": report.classification,
               "expected": report.expected,
               "consistent": report.consistent}
    sys.stdout.write(_render_json(summary) + "\n")
    return 0 if report.consistent else 2


def cmd_phase_diagram(args) -> int:
    if args.k_steps < 2:
        raise ValueError("need at least two coupling steps")
    if args.ell_max < 0:
        raise ValueError("ell-max must be nonnegative")
    k_values = np.linspace(args.k_min, args.k_max, args.k_steps)
    csv_rows = []
    json_rows = []
    for k in k_values:
        k = float(k)
        for ell in range(args.ell_max + 1):
            problem = radial.RadialProblem(args.N, ell, k)
            grid = radial.GridSpec(args.eps, args.R, args.n, "log")
            result = radial.solve_spectrum(problem, grid, 1)
            lam_min = result.eigenvalues[0]
            cond = problem.condition
            csv_rows.append((_fmt(k), str(ell),
                             "true" if cond else "false", _fmt(lam_min)))
            json_rows.append({
                "N": args.N, "ell": ell, "k": k,
                "lambda_ell": harmonics.eigenvalue_of_degree(args.N, ell),
                "sharp_constant": hardy.sharp_constant(args.N, ell),
                "condition_holds": cond,
            })
    _atomic_write(args.out, _csv_text(PHASE_HEADER, csv_rows))
    if args.json:
        _atomic_write(args.json, _render_json(json_rows) + "\n")
    sys.stdout.write(_render_json({"N": args.N, "rows": len(csv_rows)}) + "\n")
    return 0


def cmd_min_degree(args) -> int:
    degree = radial.minimal_degree(args.N, args.k)
    payload = {"N": args.N, "k": args.k, "minimal_degree": degree,
               "lambda_ell": harmonics.eigenvalue_of_degree(args.N, degree)}
    text = _render_json(payload) + "\n"
    sys.stdout.write(text)
    if args.out:
        _atomic_write(args.out, text)
    return 0


# ---------------------------------------------------------------------------
# parser

def _add_family_flags(sub):
    sub.add_argument("--family", default="zonal",
                     choices=("zonal", "planar", "product", "poly"))
    sub.add_argument("--parity", default="cos", choices=("cos", "sin"))
    sub.add_argument("--poly-file", default=None,
                     help="JSON array of [exponents, coefficient] pairs")


def build_parser() -> _Parser:
    parser = _Parser(prog="invsqhardy", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("thresholds", help="selfadjointness regime thresholds")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_thresholds)

    p = subs.add_parser("hardy-verify",
                        help="sweep the minimising sequence")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--ell", type=int, default=None)
    _add_family_flags(p)
    p.add_argument("--m", type=_float_list, default=[1.0, 2.0, 4.0, 8.0])
    p.add_argument("--bump", default="mollifier",
                   choices=("mollifier", "cosine"))
    p.add_argument("--gate", type=float, default=None,
                   help="max |gap| before exit code 2; defaults to "
                        "1e-6 (1 + sharp constant)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_hardy_verify)

    p = subs.add_parser("psi-check",
                        help="finite-difference check of the weight identity")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--ell", type=int, default=None)
    _add_family_flags(p)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--h", type=float, default=1e-3)
    # the identity's relative residual grows like (h/rho)^2, so the
    # default probes the unit sphere itself
    p.add_argument("--radius-min", type=float, default=1.0)
    p.add_argument("--radius-max", type=float, default=1.0)
    p.add_argument("--gate", type=float, default=1e-5)
    p.add_argument("--seed", type=int, default=1234)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_psi_check)

    p = subs.add_parser("spectrum", help="lowest truncated eigenvalues")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--R", type=float, default=100.0)
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--spacing", default="log", choices=("log", "uniform"))
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = subs.add_parser("fall-to-center",
                        help="classify truncated spectra as eps shrinks")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--eps", type=_float_list, required=True,
                   help="strictly decreasing inner radii, e.g. 1e-1,1e-2,1e-3")
    p.add_argument("--R", type=float, default=100.0)
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fall_to_center)

    p = subs.add_parser("phase-diagram",
                        help="condition and lowest eigenvalue on a (k, l) grid")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k-min", type=float, required=True)
    p.add_argument("--k-max", type=float, required=True)
    p.add_argument("--k-steps", type=int, default=11)
    p.add_argument("--ell-max", type=int, default=4)
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--R", type=float, default=100.0)
    p.add_argument("--n", type=int, default=1500)
    p.add_argument("--out", required=True)
    p.add_argument("--json", default=None)
    p.set_defaults(func=cmd_phase_diagram)

    p = subs.add_parser("min-degree",
                        help="smallest admissible harmonic degree")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_min_degree)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(parser.format_usage())
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except (QuadratureError, RuntimeError) as exc:
        sys.stderr.write("numerical failure: %s\n" % exc)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
