"""
Command-line entry point:
- verify: runs the named verification suites and writes a JSON report
- evolve: evolves a random lattice solution and writes field dumps
- demo: prints one line per correspondence

Exit status: 0 all checks pass, 1 a check failed, 2 usage error, 3 I/O error.
"""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np
from pydantic import ValidationError

from .evolve import evolve_grid, evolve_series, random_lattice_spec, sample_spec_on_grid
from .report_logger import ReportLogger
from .schema import CheckResult, EvolveKind, RunConfig, SolutionKind, SuiteName, SuiteReport, load_config
from .solutions import format_spec, random_spec, sample_points, to_plane_waves
from .suites import diagram_checks, run_suite
from .transforms import check_identity_eq50, map_maxwell_to_dirac, sallhofer_residual

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


def add_common_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('--config', type=str, default=None,
                        help='Flat key=value config file')
    parser.add_argument('--seed', type=int, default=None,
                        help='Seed of the random generator (default: $RELWAVE_SEED or the config value)')
    parser.add_argument('--tol', type=float, default=None,
                        help='Override every suite tolerance')
    parser.add_argument('--mass', type=float, default=None,
                        help='Mass m used by the massive checks')
    parser.add_argument('--verbose', action='store_true',
                        help='Log per-check residuals')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='relwave', description='Relativistic wave correspondence checks')
    commands = parser.add_subparsers(dest='command', required=True)

    verify = commands.add_parser('verify', help='Run verification suites')
    add_common_arguments(verify)
    verify.add_argument('--suite', type=str, default=SuiteName.ALL.value,
                        choices=[name.value for name in SuiteName],
                        help='Suite to run')
    verify.add_argument('--report', type=str, default=None,
                        help='Path of the JSON report (default: print to stdout)')
    verify.add_argument('--out', type=str, default=None,
                        help='Directory for the report and checks.csv')

    evolve = commands.add_parser('evolve', help='Evolve a random lattice solution and dump the fields')
    add_common_arguments(evolve)
    evolve.add_argument('--kind', type=str, default=None,
                        choices=[kind.value for kind in EvolveKind],
                        help='Equation to evolve')
    evolve.add_argument('--time', type=float, default=None,
                        help='Final time t')
    evolve.add_argument('--steps', type=int, default=None,
                        help='Number of equal intervals between dumps (default: 1, i.e. start and end)')
    evolve.add_argument('--diagrams', action='store_true',
                        help='Also run the commuting-diagram checks')
    evolve.add_argument('--report', type=str, default=None,
                        help='Path of the JSON report')
    evolve.add_argument('--out', type=str, default=None,
                        help='Output directory (default: ~/.relwave/<timestamp>)')

    demo = commands.add_parser('demo', help='Show every correspondence on a small random example')
    add_common_arguments(demo)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Config file, then RELWAVE_SEED, then flags; later sources win"""
    seed = args.seed
    if seed is None and os.environ.get('RELWAVE_SEED'):
        seed = os.environ['RELWAVE_SEED']
    overrides = {'seed': seed, 'mass': args.mass}
    if args.tol is not None:
        overrides.update(tol_algebra=args.tol, tol_solutions=args.tol,
                         tol_transforms=args.tol, tol_evolve=args.tol)
    if getattr(args, 'kind', None) is not None:
        overrides['evolve_kind'] = args.kind
    if getattr(args, 'time', None) is not None:
        overrides['time_t'] = args.time
    if getattr(args, 'steps', None) is not None:
        overrides['time_steps'] = args.steps
    if getattr(args, 'diagrams', False):
        overrides['evolve_diagrams'] = True
    return load_config(args.config, **overrides)


def run_verify(args: argparse.Namespace, config: RunConfig) -> int:
    report = run_suite(args.suite, config)
    if args.report is None and args.out is None:
        print(report.to_json())
    else:
        session_dir = args.out if args.out is not None else Path(args.report).parent
        ReportLogger(session_dir).write_report(report, args.report)
    for name in report.failing():
        logger.error(f"Check failed: {name}")
    return EXIT_OK if report.overall_pass else EXIT_CHECK_FAILED


def run_evolution(args: argparse.Namespace, config: RunConfig) -> int:
    kind = SolutionKind(config.evolve_kind.value)
    dims, n, box, t = config.grid_dims, config.points_per_axis, config.grid_box, config.time_t
    rng = np.random.default_rng(config.seed)
    spec = random_lattice_spec(rng, kind, config.modes_count, config.mass, dims, box)

    session = ReportLogger(args.out)
    (session.session_dir / 'spec.txt').write_text(format_spec(spec))
    initial = sample_spec_on_grid(spec, dims, n, box, 0.0)
    times = np.linspace(0.0, t, config.time_steps + 1)
    series = evolve_series(initial, lambda grid, time: evolve_grid(grid, kind, spec.mass, time), times)
    label = kind.value.lower()
    for step, (time, snapshot) in enumerate(series):
        session.log_field(snapshot, time, f"{label}_step{step:03d}")
    logger.info(f"{kind.value} {dims}D n={n}: {len(series)} dumps up to t={t} in {session.data_dir}")

    before = initial.norm_squared()
    drift = max(abs(snapshot.norm_squared() - before) for _, snapshot in series) / before if before > 0 else 0.0
    checks = [CheckResult.measured(f"norm_{label}", drift, config.tol_evolve)]
    if config.evolve_diagrams:
        checks += diagram_checks(config, rng)
    report = SuiteReport(suite="evolve", seed=config.seed, tolerance=config.tol_evolve, checks=checks)
    session.write_report(report, args.report)
    return EXIT_OK if report.overall_pass else EXIT_CHECK_FAILED


def run_demo(config: RunConfig) -> int:
    """One short line per correspondence, all from the configured seed"""
    rng = np.random.default_rng(config.seed)
    points = sample_points(rng, config.samples_count)
    maxwell = random_spec(rng, SolutionKind.GENMAXWELL, config.modes_count)
    mapped = map_maxwell_to_dirac(maxwell, points)
    print(f"U:  generalized Maxwell -> massless Dirac, residual {mapped.residual / mapped.jet.scale():.2e}")

    transverse = maxwell.with_modes([m.model_copy(update={"branch": 1 + (m.branch - 1) % 2}) for m in maxwell.modes])
    jet = to_plane_waves(transverse).jet(points)
    print(f"Sallhofer columns in vacuum, residual {sallhofer_residual(jet, (1.0, 1.0)).max_residual / jet.scale():.2e}")

    if config.mass > 0:
        identity = check_identity_eq50(rng, config.trials_count, m=config.mass)
        print(f"V:  Schrodinger-Foldy doublet -> Dirac, intertwining residual {identity.relative:.2e}")
    else:
        print("V:  skipped (mass 0)")

    for check in diagram_checks(config, rng):
        print(f"{check.name}: {check.status}, residual {check.max_residual:.2e}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments and run the selected command"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )

    try:
        config = resolve_config(args)
    except (ValidationError, ValueError) as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"Cannot read configuration: {e}")
        return EXIT_IO

    try:
        if args.command == 'verify':
            return run_verify(args, config)
        if args.command == 'evolve':
            return run_evolution(args, config)
        return run_demo(config)
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO
    except ValueError as e:
        logger.error(f"Invalid run parameters: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
