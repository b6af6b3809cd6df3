"""
Command-line surface.

Each subcommand maps to a cmd_* handler that returns the process exit
code:

    0 success / Inside      1 Outside          2 usage or config error
    3 numeric failure       4 Boundary         5 unwritable output
    6 validation failure
"""

import argparse
import logging
import math
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from config.logging_config import setup_logging
from config.settings import ConfigError, ConfigManager, RunConfig
from domain.analytic import DomainError, Membership, Verdict, f_upper, membership_analytic
from domain.reparam import (
    BoundsPositivityError,
    NotRepresentableError,
    b_bounds,
    delta_interval,
    membership_reparam,
    to_reparam,
)
from export.utils import default_output_name
from export.writers import ExportError, TableExporter, figure_table, read_trace_csv, scan_table, trace_table
from model.hamiltonian import Couplings, InvalidCouplingError, SecularConsistencyError, secular_quartic
from scan.boundary import NoInteriorSeedError, trace_boundary
from scan.figures import FigureSpecError, figure1_data, figure2_data
from scan.grid import SliceSpec, SliceSpecError, scan_slice
from scan.validation import run_all
from spectrum.oracle import (
    NumericFailureError,
    RealityTolerance,
    quartic_roots,
    self_duality_residual,
    spectrum_of,
)
from utils.formatting import format_complex, format_duration, format_number, format_value, parse_range, parse_window
from version import __version__

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_OUTSIDE = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_BOUNDARY = 4
EXIT_UNWRITABLE = 5
EXIT_VALIDATION = 6

VERDICT_EXIT = {Verdict.INSIDE: EXIT_OK, Verdict.OUTSIDE: EXIT_OUTSIDE, Verdict.BOUNDARY: EXIT_BOUNDARY}

# Flags whose values may start with '-' (e.g. --range -4,4)
_LIST_FLAGS = ("--range", "--window")


def _window_arg(text: str):
    try:
        return parse_window(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _add_couplings(parser: argparse.ArgumentParser, required: bool = True):
    parser.add_argument("--a", type=float, required=required, help="coupling a")
    parser.add_argument("--c", type=float, required=required, help="coupling c")
    parser.add_argument("--f", type=float, required=required, help="asymmetry f")


def _add_output(parser: argparse.ArgumentParser):
    parser.add_argument("--format", dest="output_format", choices=["csv", "json"], help="output format")
    parser.add_argument("--out", help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reality-domain",
        description="Reality domain of the 4x4 three-parameter chain Hamiltonian",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="key = value config file (default: $REALITY_DOMAIN_CONFIG)")
    parser.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING, ERROR or CRITICAL")
    parser.add_argument("--log-file", dest="log_file", help="log file path; empty for console only")
    parser.add_argument("--workers", type=int, help="worker threads (0 = one per CPU)")
    parser.add_argument("--save-config", dest="save_config", help="write the effective configuration here")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="secular data and the four energies")
    _add_couplings(p)

    p = sub.add_parser("classify", help="analytic and chart membership")
    _add_couplings(p, required=False)
    p.add_argument("--trace", help="trace CSV to take (a, c) from")
    p.add_argument("--point", type=int, default=0, help="row of the trace CSV")

    p = sub.add_parser("scan", help="classify an (a, c) grid at fixed f")
    p.add_argument("--f", type=float, required=True)
    p.add_argument("--window", type=_window_arg, help="lo_a,hi_a,lo_c,hi_c")
    p.add_argument("--res", dest="resolution", type=int, help="grid points per axis")
    _add_output(p)

    p = sub.add_parser("trace", help="trace the domain boundary at fixed f")
    p.add_argument("--f", type=float, required=True)
    p.add_argument("--rays", type=int)
    p.add_argument("--tol", dest="trace_tol", type=float)
    p.add_argument("--window", type=_window_arg, help="seed search window")
    _add_output(p)

    p = sub.add_parser("figure", help="sampled curves of the graphical solutions")
    p.add_argument("--which", type=int, choices=[1, 2], required=True)
    _add_couplings(p, required=False)
    p.add_argument("--A", dest="A", type=float, help="A for --which 2")
    p.add_argument("--range", dest="x_range", help="lo,hi[,steps]")
    p.add_argument("--steps", dest="figure_steps", type=int)
    _add_output(p)

    p = sub.add_parser("interval", help="delta interval inside the domain at (alpha, phi)")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--phi", type=float, required=True)

    p = sub.add_parser("reparam", help="chart coordinates and chart-side membership")
    _add_couplings(p)

    p = sub.add_parser("validate", help="run the property sweeps")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    return parser


def _join_list_values(argv: Sequence[str]) -> List[str]:
    """Attach values starting with '-' to their list flag so argparse keeps them."""
    joined: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in _LIST_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            joined.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        joined.append(token)
        i += 1
    return joined


def _overrides(args: argparse.Namespace) -> Dict[str, object]:
    names = ("log_level", "log_file", "workers", "window", "resolution", "trace_tol",
             "rays", "figure_steps", "output_format", "out", "samples", "seed")
    return {name: getattr(args, name, None) for name in names}


def _tolerance(config: RunConfig) -> RealityTolerance:
    return RealityTolerance(abs_tol=config.abs_tol, rel_tol=config.rel_tol)


def _emit(table: TableExporter, config: RunConfig, command: str, fixed_f: Optional[float]) -> Optional[Path]:
    """Write to config.out, or to stdout when it is empty.

    An existing directory as config.out receives a default-named file.
    """
    if config.out:
        target = Path(config.out).expanduser()
        if target.is_dir():
            target = target / default_output_name(command, fixed_f, config.output_format)
        return table.export(config.output_format, target)
    sys.stdout.write(table.render(config.output_format))
    return None


def _print_membership(label: str, m: Membership):
    print(f"{label}: {m.verdict.value} slack={format_number(m.slack)} reason={m.reason.value}")


def cmd_spectrum(args: argparse.Namespace, config: RunConfig) -> int:
    couplings = Couplings(args.a, args.c, args.f)
    tol = _tolerance(config)
    q = secular_quartic(couplings)
    result = spectrum_of(couplings, tol)
    print(f"A = {format_number(q.A)}")
    print(f"C = {format_number(q.C)}")
    print(f"b = {format_number(couplings.b)}")
    print("matrix roots: " + " ".join(format_complex(r) for r in result.roots))
    print("quartic roots: " + " ".join(format_complex(r) for r in quartic_roots(q)))
    print(f"classification: {result.classification.value}")
    print(f"path_discrepancy: {format_number(result.path_discrepancy or 0.0)}")
    if couplings.f == 0.0 and result.classification.is_real:
        print(f"self_duality_residual: {format_number(self_duality_residual(result.roots, tol))}")
    return EXIT_OK


def _classify_point(args: argparse.Namespace) -> Couplings:
    if args.trace:
        rows = read_trace_csv(Path(args.trace))
        if not 0 <= args.point < len(rows):
            raise SliceSpecError(f"Invalid point: {args.point}. Trace has {len(rows)} rows")
        if args.f is None:
            raise SliceSpecError("--f is required with --trace")
        row = rows[args.point]
        return Couplings(row["a"], row["c"], args.f)
    if args.a is None or args.c is None or args.f is None:
        raise SliceSpecError("classify needs --a --c --f or --trace with --f")
    return Couplings(args.a, args.c, args.f)


def cmd_classify(args: argparse.Namespace, config: RunConfig) -> int:
    couplings = _classify_point(args)
    analytic = membership_analytic(couplings, config.boundary_band)
    print(f"A = {format_number(analytic.A)}")
    print(f"C = {format_number(analytic.C)}")
    _print_membership("analytic", analytic)
    try:
        _print_membership("reparam", membership_reparam(to_reparam(couplings), config.boundary_band))
    except NotRepresentableError as e:
        print(f"reparam: not representable ({e.constraint})")
    return VERDICT_EXIT[analytic.verdict]


def cmd_scan(args: argparse.Namespace, config: RunConfig) -> int:
    spec = SliceSpec.from_window(args.f, config.window, config.resolution)
    grid = scan_slice(spec, _tolerance(config), config.boundary_band, config.agreement_band, config.worker_count)
    path = _emit(scan_table(grid, config.to_dict()), config, "scan", args.f)
    summary = " ".join(
        f"{key}={format_value(value)}" for key, value in grid.summary.to_dict().items()
        if key in ("cells", "inside", "outside", "boundary", "disagreements", "agreement_rate")
    )
    if path is not None:
        print(summary)
    else:
        logger.info("Scan summary: %s", summary)
    return EXIT_OK


def cmd_trace(args: argparse.Namespace, config: RunConfig) -> int:
    trace = trace_boundary(args.f, rays=config.rays, tol=config.trace_tol,
                           window=config.window, workers=config.worker_count)
    path = _emit(trace_table(trace, config.to_dict()), config, "trace", args.f)
    summary = (f"points={len(trace.points)} seed={format_number(trace.seed[0])},{format_number(trace.seed[1])} "
               f"max_abs_slack={format_number(trace.max_abs_slack)}")
    if path is not None:
        print(summary)
    else:
        logger.info("Trace summary: %s", summary)
    return EXIT_OK


def _figure_range(args: argparse.Namespace, default, config: RunConfig):
    if args.x_range:
        return parse_range(args.x_range, default_steps=config.figure_steps)
    return default[0], default[1], config.figure_steps


def cmd_figure(args: argparse.Namespace, config: RunConfig) -> int:
    if args.which == 1:
        if args.a is None or args.c is None or args.f is None:
            raise FigureSpecError("figure --which 1 needs --a --c --f")
        couplings = Couplings(args.a, args.c, args.f)
        curves = figure1_data(couplings, _figure_range(args, (-4.0, 4.0), config))
    else:
        if args.f is None:
            raise FigureSpecError("figure --which 2 needs --f")
        if args.A is not None:
            A = args.A
        elif args.a is not None and args.c is not None:
            A = secular_quartic(Couplings(args.a, args.c, args.f)).A
        else:
            raise FigureSpecError("figure --which 2 needs --A or --a --c")
        half = math.sqrt(max(A, 0.0) / 2.0) + 0.5
        curves = figure2_data(A, args.f, _figure_range(args, (-half, half), config))
    path = _emit(figure_table(curves, config.to_dict()), config, f"figure{args.which}", args.f)
    summary = (f"sign_changes={curves.sign_changes} crossings="
               + ",".join(format_number(x) for x in curves.crossings()))
    if path is not None:
        print(summary)
    else:
        logger.info("Figure summary: %s", summary)
    return EXIT_OK


def cmd_interval(args: argparse.Namespace, config: RunConfig) -> int:
    interval = delta_interval(args.alpha, args.phi)
    b_minus, b_plus = b_bounds(args.alpha, args.phi)
    print(f"B_minus = {format_number(b_minus)}")
    print(f"B_plus = {format_number(b_plus)}")
    if interval.is_empty:
        print("delta: empty")
    else:
        print(f"delta: [{format_number(interval.lo)}, {format_number(interval.hi)}] "
              f"width={format_number(interval.width)}")
    return EXIT_OK


def cmd_reparam(args: argparse.Namespace, config: RunConfig) -> int:
    couplings = Couplings(args.a, args.c, args.f)
    try:
        p = to_reparam(couplings)
    except NotRepresentableError as e:
        print(f"not representable ({e.constraint}): {e}")
        return EXIT_OUTSIDE
    print(f"alpha = {format_number(p.alpha)}")
    print(f"delta = {format_number(p.delta)}")
    print(f"phi = {format_number(p.phi)}")
    print(f"f_upper = {format_number(f_upper(p.A))}")
    b_minus, b_plus = b_bounds(p.alpha, p.phi)
    print(f"sqrt(B_minus) = {format_number(math.sqrt(b_minus))}")
    print(f"middle = {format_number(p.middle)}")
    print(f"sqrt(B_plus) = {format_number(math.sqrt(b_plus))}")
    membership = membership_reparam(p, config.boundary_band)
    _print_membership("reparam", membership)
    return VERDICT_EXIT[membership.verdict]


def cmd_validate(args: argparse.Namespace, config: RunConfig) -> int:
    started = time.monotonic()
    report = run_all(
        samples=config.samples,
        seed=config.seed,
        tol=_tolerance(config),
        band=config.boundary_band,
        agreement_band=config.agreement_band,
        rays=config.rays,
        trace_tol=config.trace_tol,
        workers=config.worker_count,
    )
    for result in report.results:
        status = {True: "passed", False: "FAILED", None: "reported"}[result.passed]
        metrics = " ".join(f"{k}={format_value(v)}" for k, v in result.metrics.items())
        print(f"{result.name}: {status} {metrics}")
    print(f"validation: {'passed' if report.passed else 'FAILED'} in {format_duration(time.monotonic() - started)}")
    return EXIT_OK if report.passed else EXIT_VALIDATION


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunConfig], int]] = {
    "spectrum": cmd_spectrum,
    "classify": cmd_classify,
    "scan": cmd_scan,
    "trace": cmd_trace,
    "figure": cmd_figure,
    "interval": cmd_interval,
    "reparam": cmd_reparam,
    "validate": cmd_validate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, load configuration, run one command."""
    parser = build_parser()
    try:
        args = parser.parse_args(_join_list_values(list(sys.argv[1:] if argv is None else argv)))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        manager = ConfigManager(args.config)
        config = manager.load(_overrides(args))
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(level=config.log_level, log_file=config.log_file)
    if args.save_config:
        try:
            manager.save(config, args.save_config)
        except OSError as e:
            logger.error("Could not save configuration: %s", e)
            return EXIT_UNWRITABLE

    try:
        return COMMANDS[args.command](args, config)
    except ExportError as e:
        logger.error("%s", e)
        return EXIT_UNWRITABLE
    except NoInteriorSeedError as e:
        logger.error("%s", e)
        return EXIT_OUTSIDE
    except (NumericFailureError, BoundsPositivityError, SecularConsistencyError) as e:
        logger.error("Numeric failure: %s", e)
        return EXIT_NUMERIC
    except (InvalidCouplingError, SliceSpecError, FigureSpecError, NotRepresentableError,
            DomainError, ConfigError, ValueError) as e:
        logger.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
