"""
Command-line entry point.

Subcommands:
  analyze   full report for one system (JSON)
  sample    certified samples of F or phi on (0, 1) (CSV)
  search    seeded search for systems with many positive solutions (JSONL + JSON summary)
  bounds    the explicit bound table, and the per-stage counts of a system

Exit codes: 0 success, 1 usage error, 2 undecided certification,
3 theorem violation.
"""

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import List, Optional

from pydantic import ValidationError

from algebra.errors import FewnomialError
from graph.analysis_workflow_graph import AnalysisWorkflowGraph
from reduction.gen_poly import to_F
from reduction.layered import recursion_chain
from reduction.phi_map import build_phi
from rootcount.bounds import bound_t, check_bounds
from services.expression_parser import GNotTrinomial, NonIntegerExponent, SystemSpec, SystemSyntaxError, parse_system
from services.reports import ExitCode, diagnostic_bundle, exit_status
from services.sampler import SAMPLE_TARGETS, rows_to_csv, sample_function
from services.search_runner import SearchRunner, perturbation_systems, random_systems
from services.settings import AnalysisSettings, load_settings

logger = logging.getLogger("fewnomial")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
# largest exponent analyzed without --slow
SLOW_DEGREE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ExitCode.USAGE.value, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--precision", type=int, help="first rung of the precision ladder, in bits")
    p.add_argument("--max-precision", type=int, help="last rung of the precision ladder, in bits")
    p.add_argument("--max-depth", type=int, help="bisection depth limit")
    p.add_argument("--config", help="TOML file with an [analysis] table")
    p.add_argument("--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    p.add_argument("--slow", action="store_true", help="allow exponents above %d" % SLOW_DEGREE)
    p.add_argument("--out", help="write output to this file instead of stdout")


def _add_system(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("system", nargs=None if required else "?", help='"f ; g", a JSON body, or - for stdin')
    p.add_argument("--file", help="read the system from a file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fewnomial", description="Certified positive-solution counts of fewnomial systems")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    analyze = sub.add_parser("analyze", help="full JSON report")
    _add_system(analyze, required=False)
    _add_common(analyze)
    analyze.add_argument("--json", action="store_true", default=True, help="JSON output (default)")
    analyze.add_argument("--timings", action="store_true", help="include phase timings")
    analyze.add_argument("--exterior-power-cap", type=int)

    sample = sub.add_parser("sample", help="CSV samples of F or phi")
    _add_system(sample, required=False)
    _add_common(sample)
    sample.add_argument("--what", choices=SAMPLE_TARGETS, default="F")
    sample.add_argument("--n", type=int, default=None, help="number of sample points")
    sample.add_argument("--csv", action="store_true", default=True, help="CSV output (default)")

    search = sub.add_parser("search", help="seeded search, JSON lines per record")
    _add_common(search)
    search.add_argument("--support", nargs=2, metavar=("F_SUPPORT", "G_SUPPORT"),
                        help="exponent lists like 6:0,0:3,0:1")
    search.add_argument("--base", help="system whose non-unit coefficients are perturbed on a grid")
    search.add_argument("--perturb", type=Fraction, default=Fraction(1, 20), help="relative half-width of the grid")
    search.add_argument("--steps", type=int, default=21)
    search.add_argument("--coeff-range", type=int, default=100, help="largest coefficient numerator")
    search.add_argument("--max-denominator", type=int, default=100)
    search.add_argument("--seed", type=int, default=0)
    search.add_argument("--trials", type=int, default=100)
    search.add_argument("--threshold", type=int, default=5, help="record trials with at least this many solutions")

    bounds = sub.add_parser("bounds", help="bound table and per-stage counts")
    _add_system(bounds, required=False)
    _add_common(bounds)
    bounds.add_argument("--t-max", type=int, default=8)
    return parser


def _settings(args: argparse.Namespace) -> AnalysisSettings:
    overrides = {
        "precision": args.precision,
        "max_precision": args.max_precision,
        "max_depth": args.max_depth,
        "exterior_power_cap": getattr(args, "exterior_power_cap", None),
        "slow": True if args.slow else None,
    }
    return load_settings(args.config, overrides)


def _read_system(args: argparse.Namespace) -> SystemSpec:
    if args.file:
        with open(args.file, "r") as f:
            text = f.read()
    elif args.system == "-":
        text = sys.stdin.read()
    elif args.system:
        text = args.system
    else:
        raise UsageError("no system given")
    return parse_system(text)


def _check_slow(spec: SystemSpec, settings: AnalysisSettings) -> None:
    largest = max(abs(e) for p in (spec.f, spec.g) for t in p.terms for e in t.exponent)
    if largest > SLOW_DEGREE and not settings.slow:
        raise UsageError(f"exponent {largest} exceeds {SLOW_DEGREE}; pass --slow to analyze it")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _parse_support(text: str):
    points = []
    for item in text.split(","):
        try:
            a, b = item.split(":")
            points.append((Fraction(int(a)), Fraction(int(b))))
        except ValueError:
            raise UsageError(f"bad support entry {item!r}, expected a:b")
    return points


def cmd_analyze(args: argparse.Namespace, settings: AnalysisSettings) -> int:
    spec = _read_system(args)
    _check_slow(spec, settings)
    report = AnalysisWorkflowGraph(settings).analyze(spec)
    _emit(report.to_json(include_timings=args.timings) + "\n", args.out)
    if report.exit_code == ExitCode.VIOLATION.value:
        sys.stderr.write(diagnostic_bundle(report) + "\n")
    return report.exit_code


def _phi_of(spec: SystemSpec, settings: AnalysisSettings):
    F = to_F(spec.f, spec.g, settings.max_precision)
    return build_phi(recursion_chain(F)[-1])


def cmd_sample(args: argparse.Namespace, settings: AnalysisSettings) -> int:
    n = args.n if args.n is not None else settings.grid_points
    if n < 2:
        raise UsageError(f"--n must be at least 2, got {n}")
    spec = _read_system(args)
    _check_slow(spec, settings)
    if args.what == "F":
        evaluate = to_F(spec.f, spec.g, settings.max_precision).evaluate
    else:
        evaluate = _phi_of(spec, settings).evaluate
    rows = sample_function(evaluate, n, settings.precision)
    _emit(rows_to_csv(rows), args.out)
    return ExitCode.OK.value


def cmd_search(args: argparse.Namespace, settings: AnalysisSettings) -> int:
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    if args.base:
        base = parse_system(args.base)
        trials = perturbation_systems(base, args.perturb, args.steps)
    elif args.support:
        f_support, g_support = (_parse_support(s) for s in args.support)
        trials = random_systems(f_support, g_support, args.seed, args.trials, args.coeff_range, args.max_denominator)
    else:
        raise UsageError("search needs --support or --base")
    runner = SearchRunner(settings, args.threshold)
    if args.out:
        with open(args.out, "a") as out:
            summary = runner.run(trials, out)
    else:
        summary = runner.run(trials, None)
    sys.stdout.write(json.dumps(summary.to_dict(), sort_keys=True) + "\n")
    return ExitCode.VIOLATION.value if summary.violations else ExitCode.OK.value


def cmd_bounds(args: argparse.Namespace, settings: AnalysisSettings) -> int:
    data = {"bound_t": {str(t): bound_t(t) for t in range(3, args.t_max + 1)}}
    code = ExitCode.OK
    if args.system or args.file:
        spec = _read_system(args)
        _check_slow(spec, settings)
        report = check_bounds(spec.f, spec.g, settings.precision, settings.max_depth, settings.max_precision)
        data["system"] = spec.to_dict()
        data["report"] = report.to_dict()
        code = exit_status(report.violations, report.decided and not report.errors)
    _emit(json.dumps(data, sort_keys=True, indent=2) + "\n", args.out)
    return code.value


COMMANDS = {"analyze": cmd_analyze, "sample": cmd_sample, "search": cmd_search, "bounds": cmd_bounds}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), format=LOG_FORMAT, stream=sys.stderr)
    try:
        settings = _settings(args)
        return COMMANDS[args.command](args, settings)
    except (UsageError, ValidationError, FileNotFoundError, SystemSyntaxError, GNotTrinomial, NonIntegerExponent) as e:
        sys.stderr.write(f"fewnomial: {e}\n")
        return ExitCode.USAGE.value
    except FewnomialError as e:
        logger.error("analysis failed: %s", str(e))
        return ExitCode.UNDECIDED.value


if __name__ == "__main__":
    sys.exit(main())
