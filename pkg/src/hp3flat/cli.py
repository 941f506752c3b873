"""Command-line interface.

Exit codes: 0 pass, 2 a check failed (or the lift does not descend), 1 usage,
schema or exactness error.
"""
import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from . import __version__
from .algebra import DEFAULT_TOL, c8_to_h4
from .exact import ExactAngle
from .immersions import Mode, RegionError, immersion_spec, reference_spec
from .moduli import emit_region_plot, sample_region
from .params import Certificate, ParamsFile, SchemaError
from .torus import CriterionError, ExactnessError, certify, surd_to_str
from .verify import (
    ISOTROPY_TOL, det_afr_closed, det_afr_series, isotropy_gram_norms, isotropy_order,
    random_points, run_suite,
)

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


def _cpair(z):
    return [float(np.real(z)), float(np.imag(z))]


def _emit(obj, output=None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load(args):
    pf = ParamsFile.load(args.params)
    return pf, pf.to_params()


def _torus_dict(pf, params):
    exact = pf.exact_angles()
    k = params.family.twist_slot
    if exact is None:
        if params.w != 0:
            raise ExactnessError(
                "torus decision with w != 0 needs angles given as {\"cos\": \"p/q\"}")
        angles = pf.float_angles()
    else:
        angles = exact
    cert = certify(angles[0], angles[1], params.w, k)
    out = {"descends": cert.descends, "reason": cert.reason.value, "slot": k}
    if cert.lattice_basis is not None:
        lb = cert.lattice_basis
        out["lattice_basis"] = [[surd_to_str(e) for e in v] for v in lb.vectors]
        out["hnf"] = [list(row) for row in lb.hnf]
        out["index"] = lb.index
    return out


def cmd_construct(args):
    pf, params = _load(args)
    z = complex(args.z[0], args.z[1]) if args.z else pf.z
    s = immersion_spec(params).evaluate(z)
    _emit({"z": _cpair(z), "lift": [_cpair(x) for x in s],
           "quaternionic": [[_cpair(a), _cpair(b)] for a, b in c8_to_h4(s)]}, args.output)
    return EXIT_OK


def cmd_verify(args):
    pf, params = _load(args)
    spec = immersion_spec(params)
    zs = random_points(args.samples, args.seed)
    expected = 2 if params.mode is Mode.ISOTROPY2 else None
    rep = run_suite(spec, zs, args.tol, params=params, isotropy="isotropy" in pf.checks,
                    expected_isotropy=expected)
    report = rep.to_dict()
    wanted = set(pf.checks)
    keys = {"horizontal", "totally_real", "flat_isometric", "harmonic"} & wanted
    if "isotropy" in wanted:
        keys |= {"isotropy", "isotropy_rank"}
    if "det" in wanted:
        keys |= {"det_agree", "det_nonzero"}
    ok = all(v for k, v in rep.passes.items() if k in keys)
    torus = None
    if "torus" in wanted:
        torus = _torus_dict(pf, params)
    cert = Certificate("hp3flat", __version__, args.seed, pf.source, report, torus)
    out = args.output or pf.output
    if out:
        with open(out, "w") as fh:
            fh.write(cert.to_json() + "\n")
    else:
        print(cert.to_json())
    return EXIT_OK if ok else EXIT_FAIL


def cmd_isotropy(args):
    if args.reference:
        spec = reference_spec(args.reference)
        expected = 3 if args.reference == "clifford" else None
    else:
        pf, params = _load(args)
        spec = immersion_spec(params)
        expected = 2 if params.mode is Mode.ISOTROPY2 else None
    if args.expect is not None:
        expected = args.expect
    zs = random_points(max(args.samples, 10), args.seed)[:max(10, min(args.samples, 50))]
    order = isotropy_order(spec, zs, args.tol if args.tol is not None else ISOTROPY_TOL)
    gram = [float(x) for x in isotropy_gram_norms(spec, zs)]
    _emit({"isotropy_order": order, "gram_norms": gram, "expected": expected}, args.output)
    return EXIT_OK if expected is None or order == expected else EXIT_FAIL


def cmd_det(args):
    pf, params = _load(args)
    series = det_afr_series(immersion_spec(params))
    out = {"det_afr_series": _cpair(series)}
    ok = abs(series) > 0
    if params.mode is Mode.ISOTROPY2:
        closed = det_afr_closed(params.family, params.theta, params.r, params.w)
        out["det_afr_closed"] = _cpair(closed)
        ok = ok and abs(series - closed) <= 1e-9 * max(1.0, abs(closed)) and abs(closed) > 0
    _emit(out, args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_torus(args):
    pf, params = _load(args)
    out = _torus_dict(pf, params)
    _emit(out, args.output)
    return EXIT_OK if out["descends"] else EXIT_FAIL


def cmd_lattice(args):
    pf, params = _load(args)
    exact = pf.exact_angles()
    if exact is None:
        raise ExactnessError("lattice needs exact angles given as {\"cos\": \"p/q\"}")
    out = _torus_dict(pf, params)
    _emit(out, args.output)
    return EXIT_OK if out["descends"] else EXIT_FAIL


def cmd_sample(args):
    pts = sample_region(args.family, args.mode, args.n, args.seed)
    rows = []
    for p in pts:
        d = {k: v for k, v in asdict(p).items() if v is not None and k != "exact"}
        d["family"] = p.family.value
        d["mode"] = p.mode.value
        d["w"] = _cpair(p.w)
        rows.append(d)
    _emit(rows, args.output)
    return EXIT_OK


def cmd_plot(args):
    csv_path, svg_path = emit_region_plot(args.resolution, args.output)
    print(json.dumps({"csv": str(csv_path), "svg": str(svg_path)}))
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="hp3flat", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_params(name, func, helptext):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("params", help="JSON parameter file")
        p.add_argument("-o", "--output", help="write JSON here instead of stdout")
        p.set_defaults(func=func)
        return p

    p = with_params("construct", cmd_construct, "print the lift s(z)")
    p.add_argument("--z", nargs=2, type=float, metavar=("RE", "IM"))

    p = with_params("verify", cmd_verify, "run the verification suite and emit a certificate")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("isotropy", help="isotropy order of a lift or a CP^3 reference")
    p.add_argument("params", nargs="?")
    p.add_argument("--reference", choices=["clifford", "eighth"])
    p.add_argument("--expect", type=int)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_isotropy)

    with_params("det-fr", cmd_det, "determinant of the three-step map on phi_0")
    with_params("torus", cmd_torus, "decide torus descent (exit 0 descends, 2 not)")
    with_params("lattice", cmd_lattice, "exact period lattice")

    p = sub.add_parser("sample", help="rejection-sample region points")
    p.add_argument("--family", choices=["I", "II", "III"], required=True)
    p.add_argument("--mode", choices=["general", "isotropy2"], default="isotropy2")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("plot-region", help="write the Gamma_3 region as CSV and SVG")
    p.add_argument("--resolution", type=int, default=256)
    p.add_argument("--output", default="gamma3_region")
    p.set_defaults(func=cmd_plot)
    return ap


def run(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "isotropy" and not (args.params or args.reference):
            raise UsageError("isotropy needs a params file or --reference")
        if getattr(args, "samples", 10) <= 0:
            raise UsageError("--samples must be positive")
        tol = getattr(args, "tol", None)
        if tol is not None and tol <= 0:
            raise UsageError("--tol must be positive")
        return args.func(args)
    except SchemaError as exc:
        for e in exc.errors:
            print(f"schema error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ExactnessError as exc:
        print(f"exactness error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RegionError as exc:
        print(f"region error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, CriterionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


__all__ = ["run", "main", "build_parser", "ExactAngle"]
