"""Command line front end.

Four subcommands cover the library surface: ``bands`` exports a band
diagram, ``disprel`` evaluates a dispersion polynomial (or, with
``--check``, the determinant-vs-closed-form residual), ``verify`` runs
the verification suites and writes a JSON report, ``sweep`` samples
the dispersion surface over a quasimomentum grid.

Output is deterministic: floats are printed with 15 significant
digits, CSV uses a comma delimiter, ``.`` decimal separator and a
single header row, so identical configurations produce byte-identical
files.  Exit codes are a stable contract: 0 success, 1 verification
failure, 2 usage error.
"""

import argparse
import csv
import json
import sys
from dataclasses import dataclass

import numpy as np

from .charsystem import check_equivalence
from .dispersion import dispersion_root_set, evaluate_dispersion
from .intervals import potential_from_spec, solve_basis
from .oracles import SUITE_NAMES, report_to_jsonable, run_suites, suites_passed
from .spectra import bands_general, invert_discriminant_levels
from .tilings import FULL_MODEL_NAMES, UnsupportedTilingError, get_tiling

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

CHECK_TOL = 1e-8


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: everything a subcommand needs to run."""

    command: str
    tiling: str = "trH"
    q_spec: str = "zero"
    a: float = 1.0
    lam_max: float = 50.0
    theta: tuple = (0.0, 0.0)
    sprime: float = None
    rho: float = None
    grid: int = 25
    out: str = None
    fmt: str = "csv"
    check: bool = False
    suite: str = "all"

    def potential(self):
        return potential_from_spec(self.q_spec, a=self.a)


def _fmt(x):
    return "%.15g" % float(x)


def _write_text(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _rows_to_csv(header, rows):
    buf = []
    out = csv.writer(_ListWriter(buf), lineterminator="\n")
    out.writerow(header)
    for row in rows:
        out.writerow([c if isinstance(c, str) else _fmt(c) for c in row])
    return "".join(buf)


class _ListWriter:
    def __init__(self, buf):
        self.buf = buf

    def write(self, s):
        self.buf.append(s)


def _rows_to_json(header, rows):
    payload = [
        {k: (v if isinstance(v, (str, int)) else float(_fmt(v)))
         for k, v in zip(header, row)}
        for row in rows
    ]
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(config, header, rows):
    if config.fmt == "json":
        _write_text(config.out, _rows_to_json(header, rows))
    else:
        _write_text(config.out, _rows_to_csv(header, rows))


def cmd_bands(config):
    """Band diagram: one row per ac band, ascending."""
    q = config.potential()
    bands = bands_general(config.tiling, q, config.lam_max, a=config.a)
    rows = [(b.band_index, b.lambda_lo, b.lambda_hi) for b in bands]
    _emit(config, ("band_index", "lambda_lo", "lambda_hi"), rows)
    return EXIT_OK


def cmd_disprel(config):
    """Evaluate p(x, theta), or the assembly residual in check mode."""
    t1, t2 = config.theta
    if config.check:
        if get_tiling(config.tiling).name not in FULL_MODEL_NAMES:
            raise UnsupportedTilingError(
                f"tiling {config.tiling!r} has no assembled determinant; "
                f"--check needs one of {', '.join(FULL_MODEL_NAMES)}"
            )
        if config.rho is None:
            raise UsageError("--check needs --rho (so the edge solutions exist)")
        lam = config.rho * config.rho
        basis = solve_basis(config.potential(), config.a, lam)
        rep = check_equivalence(config.tiling, basis, (t1, t2))
        _write_text(config.out, _fmt(rep.residual) + "\n")
        return EXIT_OK if rep.residual <= CHECK_TOL else EXIT_FAIL
    if config.sprime is None:
        raise UsageError("disprel needs --sprime X (or --check with --rho)")
    value = evaluate_dispersion(config.tiling, config.sprime, t1, t2)
    _write_text(config.out, _fmt(value) + "\n")
    return EXIT_OK


def cmd_verify(config):
    """Run verification suites; always writes a JSON report."""
    results = run_suites((config.suite,), n=config.grid)
    report = {
        "suites": [
            {
                "name": r.name,
                "passed": bool(r.passed),
                "elapsed_s": float(_fmt(r.elapsed_s)),
                "report": report_to_jsonable(r.report),
            }
            for r in results
        ],
        "passed": bool(suites_passed(results)),
    }
    path = config.out if config.out is not None else "verify_report.json"
    with open(path, "w", newline="") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for r in results:
        sys.stdout.write(
            f"{r.name}: {'pass' if r.passed else 'FAIL'} ({r.elapsed_s:.2f}s)\n"
        )
    sys.stdout.write(f"report: {path}\n")
    return EXIT_OK if report["passed"] else EXIT_FAIL


def cmd_sweep(config):
    """Sample the dispersion surface over an n x n quasimomentum grid.

    Each row holds theta, then every lambda <= lam_max whose
    discriminant value solves the dispersion polynomial at that theta.
    Rows are ragged; trailing columns are simply absent when fewer
    roots exist.
    """
    if config.grid < 2:
        raise UsageError("--grid must be at least 2")
    q = config.potential()
    ths = np.linspace(-np.pi, np.pi, config.grid)
    rows = []
    width = 0
    for t1 in ths:
        for t2 in ths:
            xroots = dispersion_root_set(config.tiling, (t1, t2))
            lam_groups = invert_discriminant_levels(
                q, config.a, tuple(float(x) for x in xroots), config.lam_max
            )
            lams = sorted(v for grp in lam_groups for v in grp)
            width = max(width, len(lams))
            rows.append((float(t1), float(t2)) + tuple(lams))
    header = ("theta1", "theta2") + tuple(f"root{k + 1}" for k in range(width))
    _emit(config, header, rows)
    return EXIT_OK


_COMMANDS = {
    "bands": cmd_bands,
    "disprel": cmd_disprel,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
}


def _add_common(p, grid_default):
    p.add_argument("--tiling", default="trH", help="tiling name, case-insensitive")
    p.add_argument("--a", type=float, default=1.0, help="edge length")
    p.add_argument("--q", default="zero",
                   help="potential: zero, graphene, or file:PATH (two-column CSV)")
    p.add_argument("--lambda-max", type=float, default=50.0, dest="lam_max")
    p.add_argument("--theta", type=float, nargs=2, default=(0.0, 0.0),
                   metavar=("T1", "T2"))
    p.add_argument("--sprime", type=float, default=None,
                   help="discriminant value x at which to evaluate p")
    p.add_argument("--rho", type=float, default=None,
                   help="sqrt(lambda) for determinant checks")
    p.add_argument("--grid", type=int, default=grid_default)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    p.add_argument("--check", action="store_true",
                   help="disprel: compare assembled determinant with closed form")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qgtile",
        description="Spectra of periodic quantum graphs on Archimedean tilings",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text, grid_default in (
        ("bands", "export ac band intervals as CSV/JSON", 25),
        ("disprel", "evaluate a dispersion polynomial or check the determinant", 25),
        ("verify", "run verification suites and write a JSON report", 201),
        ("sweep", "dispersion surface over a quasimomentum grid", 25),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common(p, grid_default)
        if name == "verify":
            p.add_argument("--suite", default="all",
                           choices=("all",) + SUITE_NAMES)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        command=args.command,
        tiling=args.tiling,
        q_spec=args.q,
        a=args.a,
        lam_max=args.lam_max,
        theta=tuple(args.theta),
        sprime=args.sprime,
        rho=args.rho,
        grid=args.grid,
        out=args.out,
        fmt=args.fmt,
        check=args.check,
        suite=getattr(args, "suite", "all"),
    )
    if config.a <= 0:
        print("error: --a must be positive", file=sys.stderr)
        return EXIT_USAGE
    if config.lam_max <= 0:
        print("error: --lambda-max must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[config.command](config)
    except (UsageError, UnsupportedTilingError, KeyError, ValueError,
            FileNotFoundError) as exc:
        msg = exc.args[0] if exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
