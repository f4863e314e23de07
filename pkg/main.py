#!/usr/bin/env python3
"""
CPA piece counting - command-line entry point
Count pieces, build extremal constructions, run sweeps and verification suites
"""

import argparse
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import ValidationError

from config.settings import Settings
from constructions.families import FAMILY_KINDS, lift_line_family, thm8_family
from constructions.lift import iterate_lift, lift_with_certificate
from constructions.sawtooth import Sawtooth
from cpa.serialization import cpa_to_dict, cpa_to_json
from geometry.rational import parse_rational
from processors.bounds import check_bounds
from processors.piece_counter import PieceCounter
from services.plot_writer import write_loglog_svg
from services.reports import (
    cells_lines, count_document, count_summary, fixture_path, load_expression, load_line_family, render_csv,
    render_failures, write_text,
)
from services.sweep_runner import SWEEP_KINDS, SweepRunner
from services.verify_suites import VerifySuites
from utils.exceptions import (
    ConstructionError, CpaParseError, InstanceTooLargeError, InvariantViolation, NoPathError,
)
from utils.helpers import canonical_json, format_duration
from utils.logger import setup_logger

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INTERNAL = 3

VERIFY_SUITES = ('fig1', 'bounds', 'lemma6', 'oracles', 'cor5', 'paths')


def parse_range(text: str) -> List[int]:
    """Inclusive integer range "a..b" (empty when b < a) or a single integer"""
    try:
        if ".." in text:
            start, stop = text.split("..", 1)
            return list(range(int(start), int(stop) + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range like 2..6, got {text!r}")


def emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        write_text(output, text)


def cmd_count(args, settings: Settings) -> int:
    counter = PieceCounter(settings.WITNESS_POINTS)
    expression = load_expression(args.input)
    dec = counter.count(expression)
    bounds = check_bounds(dec)
    arrangement_cells = counter.arrangement_cell_count(dec) if args.arrangement_cells else None

    if args.cells:
        write_text(args.cells, cells_lines(dec))
    if args.json:
        emit(canonical_json(count_document(dec, bounds, arrangement_cells)), args.output)
    else:
        emit(count_summary(dec, bounds, arrangement_cells), args.output)
    return EXIT_OK


def _write_construction(args, expression, certificate: dict) -> None:
    if args.output is None:
        sys.stdout.write(canonical_json({"expression": cpa_to_dict(expression), "certificate": certificate}))
        return
    write_text(args.output, cpa_to_json(expression) + "\n")
    certificate_path = args.output.with_name(args.output.stem + ".certificate.json")
    write_text(certificate_path, canonical_json(certificate))
    if not args.json:
        sys.stdout.write(f"wrote {args.output} and {certificate_path}\n")


def cmd_construct(args, settings: Settings) -> int:
    counter = PieceCounter(settings.WITNESS_POINTS)
    if args.kind == 'sawtooth':
        teeth = Sawtooth(args.m, parse_rational(args.zmin), parse_rational(args.zmax))
        expression = teeth.expression()
        certificate = {
            "kind": "sawtooth",
            "m": args.m,
            "certified_pieces_lower_bound": 2 * args.m,
            "component_budget": 2 * args.m,
        }
    elif args.kind == 'lift':
        base = load_expression(args.input or fixture_path("abs.json"))
        if args.d is not None and args.d != base.dim + 1:
            result = iterate_lift(base, args.d, args.m, counter)
        else:
            result = lift_with_certificate(base, args.m, counter)
        expression = result.expression
        certificate = {"kind": "lift", **result.certificate()}
    else:
        if args.lines is not None:
            instance = lift_line_family(args.d or 2, load_line_family(args.lines), args.m_family,
                                        'file', args.seed, counter)
        elif args.n is None:
            raise ConstructionError("thm8-family needs --n (number of lines) or --lines")
        else:
            instance = thm8_family(args.d or 2, args.n, args.m_family, args.family, args.seed, counter)
        expression = instance.expression
        certificate = {"kind": "thm8-family", **instance.certificate()}

    _write_construction(args, expression, certificate)
    return EXIT_OK


def cmd_sweep(args, settings: Settings) -> int:
    runner = SweepRunner(settings)
    base_json = None
    if args.kind == 'lift':
        base_json = cpa_to_json(load_expression(args.input or fixture_path("abs.json")))
    tasks = runner.build_tasks(args.kind, args.range, args.d, args.seed, args.family, base_json, args.timing)
    result = runner.run(tasks)

    emit(render_csv(row.as_csv() for row in result.rows), args.output)
    if args.svg:
        write_loglog_svg(result.samples, args.svg, result.fit, title=f"{args.kind} sweep, d={args.d}")
    if result.fit is not None:
        pairwise = ", ".join(f"{s:.4f}" for s in result.fit.pairwise)
        logging.getLogger(__name__).info(f"Fitted slope {result.fit.slope:.4f}, pairwise {pairwise}")
    return EXIT_OK


def cmd_verify(args, settings: Settings) -> int:
    suites = VerifySuites(settings)
    names = VERIFY_SUITES if args.suite == 'all' else (args.suite,)
    results = []
    for name in names:
        started = time.perf_counter()
        result = suites.run(name)
        results.append(result)
        if not args.json:
            status = "pass" if result.passed else "FAIL"
            sys.stdout.write(f"{name}: {status} ({result.checks} checks, "
                             f"{format_duration(time.perf_counter() - started)})\n")
            for key, value in sorted(result.metrics.items()):
                sys.stdout.write(f"  {key}={value}\n")
            sys.stdout.write(render_failures(result.failures))
    if args.json:
        sys.stdout.write(canonical_json([result.to_dict() for result in results]))
    return EXIT_OK if all(result.passed for result in results) else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Exact piece counting for continuous piecewise affine functions")
    parser.add_argument('--log-level', default='WARNING',
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    parser.add_argument('--log-file', type=Path, default=None, help='Also write logs to this file')
    parser.add_argument('--json', action='store_true', help='Machine-readable output')
    parser.add_argument('--witness-points', type=int, default=None, help='Interior points kept per arrangement cell')
    commands = parser.add_subparsers(dest='command', required=True)

    count = commands.add_parser('count', help='Count maximal pieces of a CPA JSON file')
    count.add_argument('input', type=Path)
    count.add_argument('-o', '--output', type=Path, default=None)
    count.add_argument('--cells', type=Path, default=None, help='Write convex pieces as JSON lines')
    count.add_argument('--arrangement-cells', action='store_true',
                       help='Also report the cell count of the full bisector arrangement')
    count.set_defaults(handler=cmd_count)

    construct = commands.add_parser('construct', help='Build an extremal construction')
    construct.add_argument('kind', choices=['sawtooth', 'lift', 'thm8-family'])
    construct.add_argument('--m', type=int, default=2, help='Sawtooth size')
    construct.add_argument('--d', type=int, default=None, help='Target dimension')
    construct.add_argument('--n', type=int, default=None, help='Number of lines (thm8-family)')
    construct.add_argument('--m-family', type=int, default=None,
                           help='Sawtooth size for thm8-family (defaults to --n)')
    construct.add_argument('--zmin', default='0')
    construct.add_argument('--zmax', default='1')
    construct.add_argument('--seed', type=int, default=0)
    construct.add_argument('--family', choices=FAMILY_KINDS, default='longest-path')
    construct.add_argument('--lines', type=Path, default=None,
                           help='Line family JSON for thm8-family instead of a generated one')
    construct.add_argument('--input', type=Path, default=None, help='Base function for lift')
    construct.add_argument('-o', '--output', type=Path, default=None)
    construct.set_defaults(handler=cmd_construct)

    sweep = commands.add_parser('sweep', help='Measure piece counts over a size range')
    sweep.add_argument('kind', choices=SWEEP_KINDS)
    sweep.add_argument('--range', type=parse_range, default="2..6", help="Inclusive range a..b")
    sweep.add_argument('--d', type=int, default=2)
    sweep.add_argument('--seed', type=int, default=0)
    sweep.add_argument('--family', choices=FAMILY_KINDS, default=None)
    sweep.add_argument('--input', type=Path, default=None, help='Base function for the lift sweep')
    sweep.add_argument('--workers', type=int, default=None)
    sweep.add_argument('--max-cells', type=int, default=None, help='Predicted cell guard')
    sweep.add_argument('--timing', action='store_true', help='Fill the ms column (breaks byte-identical output)')
    sweep.add_argument('-o', '--output', type=Path, default=None)
    sweep.add_argument('--svg', type=Path, default=None)
    sweep.set_defaults(handler=cmd_sweep)

    verify = commands.add_parser('verify', help='Run a cross-check suite')
    verify.add_argument('suite', choices=VERIFY_SUITES + ('all',))
    verify.add_argument('--seed', type=int, default=None)
    verify.add_argument('--instances', type=int, default=None)
    verify.set_defaults(handler=cmd_verify)
    return parser


def settings_from_args(args) -> Settings:
    overrides = {"LOG_LEVEL": args.log_level}
    if args.log_file is not None:
        overrides["LOG_FILE"] = str(args.log_file)
    if args.witness_points is not None:
        overrides["WITNESS_POINTS"] = args.witness_points
    if getattr(args, 'workers', None) is not None:
        overrides["SWEEP_WORKERS"] = args.workers
    if getattr(args, 'max_cells', None) is not None:
        overrides["SWEEP_MAX_PREDICTED_CELLS"] = args.max_cells
    if args.command == 'verify':
        if args.seed is not None:
            overrides["VERIFY_SEED"] = args.seed
        if args.instances is not None:
            overrides["LEMMA6_INSTANCES"] = args.instances
            overrides["ORACLE_INSTANCES"] = args.instances
    return Settings(**overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """CLI entry point; returns the process exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == 'sweep' and args.family is None:
        args.family = 'random-generic' if args.kind == 'paths' else 'longest-path'

    logger = logging.getLogger(__name__)
    try:
        settings = settings_from_args(args)
        setup_logger(settings.LOG_LEVEL, settings.LOG_FILE)
        logger.info(f"Running {args.command}")
        return args.handler(args, settings)
    except ValidationError as e:
        sys.stderr.write(f"error: invalid settings: {e}\n")
        return EXIT_USAGE
    except CpaParseError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except (ConstructionError, NoPathError, InstanceTooLargeError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except InvariantViolation as e:
        logger.error(f"Internal invariant violated: {e}", exc_info=True)
        sys.stderr.write(f"internal error: {e}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
