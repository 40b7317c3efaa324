"""
qubit-geometry command-line entry point

Commands:
    eval            concurrence report for one state (--state FILE or --inline JSON)
    sweep           pure-state table over a (theta, phi) grid
    verify          run the operator and concurrence property suite
    compare-random  mixed-state formula against the Wootters oracle on random ensembles

Exit codes: 0 success, 1 verification/comparison failure, 2 input error, 3 I/O error.
"""

import argparse
import re
import sys
from typing import List, Optional, Tuple

from qubit_geometry.models.errors import QubitGeometryError
from qubit_geometry.models.spinops import Sector
from qubit_geometry.parsers.state_parser import StateSpec, parse_state_file, parse_state_text
from qubit_geometry.services.config import COMMANDS, FORMATS, RunConfig, get_config
from qubit_geometry.services.entanglement import analyze
from qubit_geometry.services.logger import ActivityLogger, diagnostic, get_logger
from qubit_geometry.services.report_writer import Report, Table, get_report_writer
from qubit_geometry.services.sampling import compare_random, sweep
from qubit_geometry.services.verification import PropertyResult, run_all

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_IO = 3

GRID_PATTERN = re.compile(r'^\s*(\d+)\s*[xX]\s*(\d+)\s*$')

SWEEP_COLUMNS = ['theta', 'phi', 'c_geometric', 'c_wootters', 'cos_mean', 'sin_mean', 'var_sum', 'big_phi_mean']
VERIFY_COLUMNS = ['name', 'passed', 'max_residual', 'tolerance', 'detail']
COMPARE_COLUMNS = ['count', 'seed', 'max_difference', 'mean_difference', 'worst_index', 'tolerance', 'passed', 'worst_spec']


class InputError(Exception):
    """Bad command-line input; maps to exit code 2"""

    def __init__(self, errors: List[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='qubit-geometry',
        description="Geometric entanglement of qubit pairs: concurrence, trig operators and oracle checks",
    )
    parser.add_argument('command', choices=COMMANDS)

    source = parser.add_mutually_exclusive_group()
    source.add_argument('--state', metavar='FILE', help="State specification file (JSON, UTF-8)")
    source.add_argument('--inline', metavar='JSON', help="State specification as a JSON string")

    parser.add_argument('--grid', metavar='TxP', help="Sweep grid theta_steps x phi_steps (default 50x50)")
    parser.add_argument('--samples', type=int, metavar='N', help="Random ensembles for compare-random")
    parser.add_argument('--seed', type=int, metavar='S', help="Master seed")
    parser.add_argument('--format', choices=FORMATS, help="Output format")
    parser.add_argument('--tolerance', type=float, metavar='T', help="compare-random pass threshold")
    parser.add_argument('--degrees', action='store_true', help="Angles in the state document are degrees")
    parser.add_argument('--output', metavar='FILE', help="Write to FILE instead of stdout")
    parser.add_argument('--sector', choices=[s.value for s in Sector], help="Sweep sector (default s0)")
    parser.add_argument('--workers', type=int, metavar='N', help="Worker threads for sweep and compare-random")
    parser.add_argument('--config', metavar='FILE', help="JSON settings file")
    parser.add_argument('--log-dir', metavar='DIR', help="Activity log folder")
    return parser


def parse_grid(text: str) -> Tuple[int, int]:
    match = GRID_PATTERN.match(text)
    if not match:
        raise InputError([f"Grid must look like 50x50, got {text!r}"])
    return int(match.group(1)), int(match.group(2))


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Command-line values over config-file values over built-in defaults"""
    app = get_config().config
    grid = parse_grid(args.grid) if args.grid else (app.theta_steps, app.phi_steps)

    def pick(value, default):
        return default if value is None else value

    config = RunConfig(
        command=args.command,
        format=pick(args.format, app.format),
        tolerance=pick(args.tolerance, app.tolerance),
        samples=pick(args.samples, app.samples),
        seed=pick(args.seed, app.seed),
        grid=grid,
        sector=pick(args.sector, 's0'),
        degrees=args.degrees,
        output=args.output,
        workers=pick(args.workers, app.workers),
    )
    errors = config.validate()
    if errors:
        raise InputError(errors)
    return config


def load_state_spec(args: argparse.Namespace) -> StateSpec:
    if args.state:
        spec, errors = parse_state_file(args.state, args.degrees)
    elif args.inline:
        spec, errors = parse_state_text(args.inline, args.degrees)
    else:
        raise InputError(["eval needs --state FILE or --inline JSON"])
    if errors or spec is None:
        raise InputError(errors or ["Could not parse the state specification"])
    return spec


def cmd_eval(spec: StateSpec, config: RunConfig) -> Report:
    """ConcurrenceReport for one state as a single-row table"""
    record = analyze(spec.density()).to_dict()
    return Report(
        command='eval',
        table=Table(name='report', columns=list(record.keys()), rows=[record]),
        meta={'kind': spec.kind},
    )


def cmd_sweep(config: RunConfig) -> Report:
    rows = sweep(config.theta_steps, config.phi_steps, Sector(config.sector), config.workers)
    return Report(
        command='sweep',
        table=Table(name='rows', columns=SWEEP_COLUMNS, rows=[row.to_dict() for row in rows]),
        meta={
            'sector': config.sector,
            'theta_steps': config.theta_steps,
            'phi_steps': config.phi_steps,
        },
    )


def cmd_verify(config: RunConfig, logger: Optional[ActivityLogger] = None) -> Tuple[Report, bool]:
    def progress(result: PropertyResult):
        if logger is not None:
            logger.log_property(result.name, result.passed, result.max_residual, result.detail)
        if not result.passed:
            diagnostic("VERIFY", f"{result.name} failed: residual {result.max_residual:.3e} > {result.tolerance:.1e}")

    report = run_all(config.theta_steps, config.phi_steps, config.seed, progress)
    return Report(
        command='verify',
        table=Table(name='properties', columns=VERIFY_COLUMNS, rows=[r.to_dict() for r in report.results]),
        meta={
            'passed': report.passed,
            'seed': config.seed,
            'theta_steps': config.theta_steps,
            'phi_steps': config.phi_steps,
        },
    ), report.passed


def cmd_compare_random(config: RunConfig) -> Tuple[Report, bool]:
    summary = compare_random(config.samples, config.seed, config.tolerance, config.workers)
    return Report(
        command='compare-random',
        table=Table(name='summary', columns=COMPARE_COLUMNS, rows=[summary.to_dict()]),
    ), summary.passed


def _execute(config: RunConfig, args: argparse.Namespace, logger: ActivityLogger) -> Tuple[Report, int]:
    if config.command == 'eval':
        return cmd_eval(load_state_spec(args), config), EXIT_OK
    if config.command == 'sweep':
        return cmd_sweep(config), EXIT_OK
    if config.command == 'verify':
        report, passed = cmd_verify(config, logger)
        return report, EXIT_OK if passed else EXIT_FAILURE
    report, passed = cmd_compare_random(config)
    if not passed:
        diagnostic("COMPARE", f"max difference above tolerance {config.tolerance:.1e}")
    return report, EXIT_OK if passed else EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT

    config_service = get_config()
    config_service.reset()
    if args.config:
        errors = config_service.load(args.config)
        if errors:
            for error in errors:
                diagnostic("ERROR", error)
            get_logger(args.log_dir).log_input_error("Invalid config file", "; ".join(errors))
            return EXIT_INPUT

    app = config_service.config
    logger = get_logger(args.log_dir or app.log_dir)

    try:
        config = build_run_config(args)
    except InputError as e:
        for error in e.errors:
            diagnostic("ERROR", error)
        logger.log_input_error("Invalid arguments", str(e))
        return EXIT_INPUT

    logger.log_run_started(config.command, f"format={config.format} seed={config.seed}")
    try:
        report, code = _execute(config, args, logger)
    except InputError as e:
        for error in e.errors:
            diagnostic("ERROR", error)
        logger.log_input_error("Invalid state specification", str(e))
        logger.log_run_completed(config.command, EXIT_INPUT)
        return EXIT_INPUT
    except QubitGeometryError as e:
        diagnostic("ERROR", str(e))
        logger.log_input_error(type(e).__name__, str(e))
        logger.log_run_completed(config.command, EXIT_INPUT)
        return EXIT_INPUT
    except Exception as e:
        diagnostic("ERROR", f"Unexpected failure: {e}")
        logger.log_error(type(e).__name__, str(e))
        logger.log_run_completed(config.command, EXIT_FAILURE)
        return EXIT_FAILURE

    try:
        get_report_writer(app.digits).write(report, config.format, config.output)
    except OSError as e:
        diagnostic("IO", f"Could not write {config.output}: {e}")
        logger.log_io_error(config.output or "stdout", str(e))
        logger.log_run_completed(config.command, EXIT_IO)
        return EXIT_IO

    logger.log_run_completed(config.command, code)
    return code


if __name__ == '__main__':
    sys.exit(main())
