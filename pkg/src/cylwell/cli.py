"""Command line interface.

    cylwell spectrum --emax 50
    cylwell radial --nr 2 --nphi 2 --samples 201
    cylwell density --nr 2 --nphi 2 --nz 2 --slice meridian
    cylwell verify --suite fd --grid 2000

Output goes to stdout unless ``--output`` is given. When the environment
variable ``CYLWELL_OUTPUT_DIR`` is set, relative output paths resolve
against it and a missing ``--output`` becomes ``<dir>/<command>.<format>``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
"""

import argparse
import csv
import io
import json
import os
import sys

from .bessel import DomainError, ZeroLimitError
from .spectrum import (
    ELECTRON_MASS_SI,
    HBAR_SI,
    MERGE_RTOL,
    QuantumNumbers,
    WellGeometry,
    enumerate_levels,
    lowest_levels,
)
from .verify import SUITES, Tolerances, run_checks
from .wavefunction import AxialSlice, GridSpec, MeridianSlice, sample_density_slice, sample_radial

OUTPUT_DIR_ENV = "CYLWELL_OUTPUT_DIR"


class UsageError(Exception):
    pass


def _num(v):
    return format(float(v), ".12g")


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json_text(obj):
    return json.dumps(obj) + "\n"


def _geometry(args):
    if args.si:
        m = args.m if args.m is not None else ELECTRON_MASS_SI
        hbar = args.hbar if args.hbar is not None else HBAR_SI
    else:
        m = args.m if args.m is not None else 1.0
        hbar = args.hbar if args.hbar is not None else 1.0
    return WellGeometry(a=args.a, H=args.H, m=m, hbar=hbar)


def _geometry_dict(geom):
    return {"a": geom.a, "H": geom.H, "m": geom.m, "hbar": geom.hbar}


def cmd_spectrum(args):
    geom = _geometry(args)
    if args.emax is not None:
        levels = enumerate_levels(geom, args.emax, rtol=args.rtol)
    else:
        levels = lowest_levels(geom, args.count, rtol=args.rtol)
    if args.format == "json":
        return _json_text({
            "geometry": _geometry_dict(geom),
            "levels": [
                {
                    "index": i,
                    "energy": lv.energy,
                    "multiplicity": lv.multiplicity,
                    "accidental": lv.accidental,
                    "states": [list(s.as_tuple()) for s in lv.states],
                }
                for i, lv in enumerate(levels, start=1)
            ],
        })
    rows = [
        (
            i,
            _num(lv.energy),
            lv.multiplicity,
            ";".join("({},{},{},{})".format(*s.as_tuple()) for s in lv.states),
            int(lv.accidental),
        )
        for i, lv in enumerate(levels, start=1)
    ]
    return _csv_text(["index", "energy", "multiplicity", "states", "accidental"], rows)


def cmd_radial(args):
    geom = _geometry(args)
    QuantumNumbers(args.nr, args.nphi, 1)
    pairs = sample_radial(geom, args.nr, args.nphi, args.samples)
    if args.format == "json":
        return _json_text({
            "geometry": _geometry_dict(geom),
            "n_r": args.nr,
            "n_phi": args.nphi,
            "r": [r for r, _ in pairs],
            "R": [v for _, v in pairs],
        })
    return _csv_text(["r", "R"], [(_num(r), _num(v)) for r, v in pairs])


def cmd_density(args):
    geom = _geometry(args)
    qn = QuantumNumbers(args.nr, args.nphi, args.nz, args.p)
    grid = GridSpec(args.r_samples, args.phi_samples, args.z_samples)
    if args.slice == "axial":
        z0 = 0.5 * geom.H if args.z0 is None else args.z0
        plane = AxialSlice(z0)
        names = ("r", "phi")
    else:
        plane = MeridianSlice(args.phi0)
        names = ("r", "z")
    c1, c2, values = sample_density_slice(geom, qn, grid, plane)
    if args.format == "json":
        return _json_text({
            "geometry": _geometry_dict(geom),
            "state": list(qn.as_tuple()),
            "slice": args.slice,
            "c1_name": names[0],
            "c2_name": names[1],
            "c1": c1.tolist(),
            "c2": c2.tolist(),
            "density": values.tolist(),
        })
    rows = [
        (_num(c1[i]), _num(c2[k]), _num(values[i, k]))
        for i in range(c1.size)
        for k in range(c2.size)
    ]
    return _csv_text(["c1", "c2", "density"], rows)


def _parse_tolerances(items):
    values = {}
    for item in items or ():
        name, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects NAME=VALUE, got {item!r}")
        try:
            values[name.strip()] = float(val)
        except ValueError:
            raise UsageError(f"--tol value for {name!r} is not a number") from None
    try:
        return Tolerances().override(**values)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def cmd_verify(args):
    geom = _geometry(args)
    tol = _parse_tolerances(args.tol)
    suites = args.suite or list(SUITES)
    if args.grid < 100:
        raise UsageError("--grid must be >= 100")
    checks = run_checks(suites, geom=geom, tol=tol, fd_grid=args.grid)
    failed = [c.name for c in checks if not c.passed]
    if args.format == "json":
        text = _json_text({
            "passed": not failed,
            "checks": [
                {
                    "name": c.name,
                    "value": c.value,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                    **({"detail": c.detail} if c.detail else {}),
                }
                for c in checks
            ],
        })
    else:
        text = _csv_text(
            ["name", "value", "tolerance", "passed"],
            [(c.name, _num(c.value), _num(c.tolerance), "pass" if c.passed else "FAIL") for c in checks],
        )
    return text, failed


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("geometry")
    g.add_argument("--a", type=float, default=1.0, help="cylinder radius (default 1)")
    g.add_argument("--H", type=float, default=1.0, help="cylinder height (default 1)")
    g.add_argument("--m", type=float, default=None, help="particle mass (default 1, or m_e with --si)")
    g.add_argument("--hbar", type=float, default=None, help="reduced Planck constant (default 1)")
    g.add_argument("--si", action="store_true", help="SI units: hbar in J s, m defaults to m_e")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", default=None, help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="cylwell", description="Infinite cylindrical well")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="energy levels with degeneracy")
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--emax", type=float, help="list every level with energy <= EMAX")
    sel.add_argument("--count", type=int, default=10, help="list the COUNT lowest levels")
    p.add_argument("--rtol", type=float, default=MERGE_RTOL, help="degeneracy merge tolerance")

    p = sub.add_parser("radial", parents=[common], help="sample R(r) on [0, a]")
    p.add_argument("--nr", type=int, required=True)
    p.add_argument("--nphi", type=int, required=True)
    p.add_argument("--samples", type=int, default=201)

    p = sub.add_parser("density", parents=[common], help="|psi|^2 on a slice, long-form")
    p.add_argument("--nr", type=int, required=True)
    p.add_argument("--nphi", type=int, required=True)
    p.add_argument("--nz", type=int, required=True)
    p.add_argument("--p", type=int, default=None, help="signed azimuthal number (default +nphi)")
    p.add_argument("--slice", choices=("meridian", "axial"), default="meridian")
    p.add_argument("--z0", type=float, default=None, help="axial slice height (default H/2)")
    p.add_argument("--phi0", type=float, default=0.0, help="meridian slice angle")
    p.add_argument("--r-samples", type=int, default=101)
    p.add_argument("--z-samples", type=int, default=101)
    p.add_argument("--phi-samples", type=int, default=72)

    p = sub.add_parser("verify", parents=[common], help="run the numerical verification suite")
    p.add_argument("--suite", action="append", choices=SUITES, help="repeatable; default all")
    p.add_argument("--grid", type=int, default=2000, help="finite-difference grid points")
    p.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a tolerance")
    return parser


def _resolve_output(args):
    outdir = os.environ.get(OUTPUT_DIR_ENV)
    if args.output is None:
        if not outdir:
            return None
        return os.path.join(outdir, f"{args.command}.{args.format}")
    if outdir and not os.path.isabs(args.output):
        return os.path.join(outdir, args.output)
    return args.output


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


_COMMANDS = {"spectrum": cmd_spectrum, "radial": cmd_radial, "density": cmd_density}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        failed = []
        if args.command == "verify":
            text, failed = cmd_verify(args)
        else:
            text = _COMMANDS[args.command](args)
        _emit(text, _resolve_output(args))
    except (UsageError, ValueError, DomainError, ZeroLimitError, TypeError) as exc:
        print(f"cylwell {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if failed:
        print("cylwell verify: failed checks: " + ", ".join(failed), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
