"""Command-line front end.

Subcommands:

* ``periods`` -- curve JSON in, period JSON out
* ``analyze`` -- period JSON or matrix text in, distribution CSV out
  (stats JSON on stderr or to a file)
* ``check``   -- homology-relation and exclusion report for a curve
* ``sample``  -- emit an equal-modulus abelian variety matrix

Exit codes: 0 success / not excluded, 3 excluded, 1 error.  Errors are
reported as one JSON object on stderr with a module-qualified code.
"""

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import distribution as dist_mod
from . import homology, quadrature, schottky
from .errors import HyperiodError
from .hypercurve import curve_from_branch_points, mobius_normalize
from .periods import normalized_period_matrix, raw_periods, riemann_residuals

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_EXCLUDED = 3


@dataclass(frozen=True)
class RunConfig:
    quadrature_order: int = quadrature.DEFAULT_ORDER
    symmetry_tolerance: float = 1e-6
    flatness_epsilon: float = schottky.DEFAULT_FLATNESS_EPSILON
    distribution_mode: str = "modulus"
    entry_selection: str = "upper_triangle"
    step_rtol: float = quadrature.DEFAULT_STEP_RTOL
    separation_rtol: float = 1e-9
    clearance: float = homology.DEFAULT_CLEARANCE

    def __post_init__(self):
        if self.quadrature_order < 8:
            raise ValueError("quadrature order must be >= 8")
        for name in ("symmetry_tolerance", "flatness_epsilon", "step_rtol",
                     "separation_rtol", "clearance"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def to_json(self):
        return {
            "quadrature_order": self.quadrature_order,
            "symmetry_tolerance": self.symmetry_tolerance,
            "flatness_epsilon": self.flatness_epsilon,
            "distribution_mode": self.distribution_mode,
            "entry_selection": self.entry_selection,
            "step_rtol": self.step_rtol,
            "separation_rtol": self.separation_rtol,
            "clearance": self.clearance,
        }


def _complex_matrix_json(m):
    return [[[v.real, v.imag] for v in row] for row in np.asarray(m, dtype=complex)]


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_curve(path):
    text = _read_text(path)
    try:
        doc = json.loads(text)
        pairs = doc["branch_points"]
        points = [complex(re, im) for re, im in pairs]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise HyperiodError(f"bad curve JSON: {exc}") from None
    mobius = None
    if len(points) % 2 != 0:
        branch, record = mobius_normalize(points)
        points = list(branch.points)
        mobius = record.to_json()
    return curve_from_branch_points(points), mobius


def _compute_periods(curve, config):
    table = raw_periods(
        curve,
        order=config.quadrature_order,
        step_rtol=config.step_rtol,
        clearance=config.clearance,
    )
    matrix = normalized_period_matrix(table, symmetry_tol=config.symmetry_tolerance)
    return table, matrix


def _periods_document(curve, table, matrix, config, mobius):
    return {
        "genus": curve.genus,
        "omega": _complex_matrix_json(matrix.omega),
        "symmetry_residual": matrix.symmetry_residual,
        "min_imag_eigenvalue": matrix.min_imag_eigenvalue,
        "error_bound": table.error_bound,
        "transform": [list(row) for row in table.transform.T],
        "pair_periods": _complex_matrix_json(table.pair_periods),
        "config": config.to_json(),
        "mobius": mobius,
    }


def _config_from_args(args):
    return RunConfig(
        quadrature_order=args.order,
        symmetry_tolerance=args.tolerance,
        flatness_epsilon=args.epsilon,
        distribution_mode={"modulus": "modulus", "modulus2": "modulus_squared",
                           "argument": "argument"}[args.mode],
        entry_selection={"upper": "upper_triangle", "all": "all"}[args.entries],
        step_rtol=args.step_tol,
        clearance=args.clearance,
    )


def cmd_periods(args):
    config = _config_from_args(args)
    curve, mobius = _load_curve(args.curve)
    table, matrix = _compute_periods(curve, config)
    doc = _periods_document(curve, table, matrix, config, mobius)
    _write_text(args.out, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def cmd_analyze(args):
    config = _config_from_args(args)
    text = _read_text(args.input)
    matrix, (sym, min_eig) = dist_mod.ingest_matrix(text)
    entries = dist_mod.matrix_entries(matrix, selection=config.entry_selection)
    reals = dist_mod.to_real_list(entries, config.distribution_mode)
    dist = dist_mod.sorted_distribution(
        reals, source=f"ingested:{args.input}", mode=config.distribution_mode
    )
    stats = {
        "mode": config.distribution_mode,
        "entry_selection": config.entry_selection,
        "count": len(dist),
        "symmetry_residual": sym,
        "min_imag_eigenvalue": min_eig,
        "config": config.to_json(),
    }
    if len(dist) >= 3:
        prof = dist_mod.concavity_profile(dist)
        stats["concavity"] = {
            "second_differences": list(prof.second_differences),
            "fraction_nonnegative": prof.fraction_nonnegative,
            "verdict": prof.verdict,
        }
    try:
        stats["argument_spread"] = dist_mod.argument_spread(entries)
    except HyperiodError:
        stats["argument_spread"] = None
    _write_text(args.csv, dist_mod.distribution_csv(dist))
    stats_text = json.dumps(stats, indent=2) + "\n"
    if args.stats is None:
        sys.stderr.write(stats_text)
    else:
        _write_text(args.stats, stats_text)
    return EXIT_OK


def _synthetic_flat_pair_periods(g):
    """All-equal nonzero rows: the configuration the theorem forbids."""
    row = np.exp(1j * np.pi / 4) * np.ones(g, dtype=complex)
    return np.tile(row, (g + 1, 1))


def cmd_check(args):
    config = _config_from_args(args)
    if args.synthetic_flat is not None:
        g = args.synthetic_flat
        pair = _synthetic_flat_pair_periods(g)
        source = f"synthetic-flat g={g}"
    else:
        curve, _ = _load_curve(args.curve)
        table, _ = _compute_periods(curve, config)
        pair = table.pair_periods
        source = args.curve
    coeffs = None
    if args.coeffs:
        coeffs = [int(tok) for tok in args.coeffs.split(",")]
        relation = schottky.custom_relation_residual(pair, coeffs)
    else:
        relation = schottky.null_relation_residual(pair)
    verdict = schottky.hyperelliptic_exclusion(pair, epsilon=config.flatness_epsilon)
    doc = {
        "source": source,
        "coefficients": list(relation.coefficients),
        "relation_residuals": [[v.real, v.imag] for v in relation.residuals],
        "max_relative_residual": relation.max_relative,
        "excluded": verdict.excluded,
        "flatness": verdict.flatness,
        "witness": verdict.witness,
        "config": config.to_json(),
    }
    _write_text(args.out, json.dumps(doc, indent=2) + "\n")
    return EXIT_EXCLUDED if verdict.excluded else EXIT_OK


def cmd_sample(args):
    config = _config_from_args(args)
    matrix = schottky.equal_modulus_abelian_variety(args.genus, seed=args.seed)
    sym, min_eig = riemann_residuals(matrix)
    comments = [
        f"equal-modulus abelian variety, g={args.genus}, seed={args.seed}",
        f"symmetry_residual={sym:.17g} min_imag_eigenvalue={min_eig:.17g}",
    ]
    _write_text(args.out, dist_mod.format_matrix_text(matrix, comments=comments))
    report = {
        "genus": args.genus,
        "seed": args.seed,
        "symmetry_residual": sym,
        "min_imag_eigenvalue": min_eig,
        "config": config.to_json(),
    }
    sys.stderr.write(json.dumps(report) + "\n")
    return EXIT_OK


def _add_common(parser):
    parser.add_argument("--order", type=int, default=quadrature.DEFAULT_ORDER,
                        help="quadrature node count")
    parser.add_argument("--tolerance", type=float, default=1e-6,
                        help="symmetry acceptance tolerance")
    parser.add_argument("--epsilon", type=float,
                        default=schottky.DEFAULT_FLATNESS_EPSILON,
                        help="flatness threshold for the exclusion test")
    parser.add_argument("--mode", choices=("modulus", "modulus2", "argument"),
                        default="modulus", help="real reduction of the periods")
    parser.add_argument("--entries", choices=("upper", "all"), default="upper",
                        help="which matrix entries count as periods")
    parser.add_argument("--step-tol", type=float,
                        default=quadrature.DEFAULT_STEP_RTOL,
                        help="sqrt-continuation step tolerance")
    parser.add_argument("--clearance", type=float,
                        default=homology.DEFAULT_CLEARANCE,
                        help="required chord clearance fraction")


def _parse_synthetic_flat(value):
    if not value.startswith("g="):
        raise argparse.ArgumentTypeError("expected g=G, e.g. --synthetic-flat g=3")
    g = int(value[2:])
    if g < 1:
        raise argparse.ArgumentTypeError("genus must be >= 1")
    return g


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hyperiod",
        description="Hyperelliptic period matrices and period-distribution analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("periods", help="compute the period matrix of a curve")
    p.add_argument("curve", help="curve JSON file ('-' for stdin)")
    p.add_argument("--out", default="-", help="output path (default stdout)")
    _add_common(p)
    p.set_defaults(func=cmd_periods)

    p = sub.add_parser("analyze", help="sorted period distribution of a matrix")
    p.add_argument("input", help="period JSON or matrix text file ('-' for stdin)")
    p.add_argument("--csv", default="-", help="CSV output path (default stdout)")
    p.add_argument("--stats", default=None,
                   help="stats JSON path (default stderr)")
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="homology-relation and exclusion report")
    p.add_argument("curve", nargs="?", help="curve JSON file ('-' for stdin)")
    p.add_argument("--coeffs", default=None,
                   help="comma-separated integer relation coefficients")
    p.add_argument("--synthetic-flat", type=_parse_synthetic_flat, default=None,
                   metavar="g=G", help="check a synthetic all-equal-row matrix")
    p.add_argument("--out", default="-", help="output path (default stdout)")
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sample", help="emit an equal-modulus abelian variety")
    p.add_argument("genus", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-", help="output path (default stdout)")
    _add_common(p)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check" and args.curve is None and args.synthetic_flat is None:
        parser.error("check needs a curve file or --synthetic-flat")
    if args.command == "sample" and args.genus < 1:
        parser.error("genus must be >= 1")
    try:
        return args.func(args)
    except HyperiodError as exc:
        err = {"error": {"code": exc.code, "message": str(exc),
                         "details": getattr(exc, "details", {})}}
        sys.stderr.write(json.dumps(err) + "\n")
        return EXIT_ERROR
    except ValueError as exc:
        err = {"error": {"code": "hyperiod.ValueError", "message": str(exc)}}
        sys.stderr.write(json.dumps(err) + "\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
