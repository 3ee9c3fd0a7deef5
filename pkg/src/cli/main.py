"""
Command-line entry point.

    precy coformality --n 2 --t-max 10 --weight-max 6
    precy char2 --n 2 --report text
    precy dioperad --max-legs 6 --genus-bound 4 --out reports/dioperad.json

Exit codes: 0 when every check is conclusive and as expected, 1 on a result
contradicting the expected outcome, 2 when a window is too small to decide,
3 on a usage error.
"""

import argparse
import sys
from typing import Optional, Sequence

import structlog
from pydantic import ValidationError

from src.cli.commands import COMMAND_TABLE
from src.cli.reports import COMMANDS, EXIT_USAGE, RunConfig, write_report
from src.config.settings import get_settings
from src.utils.logging import configure_logging

logger = structlog.get_logger(__name__)


class _UserInputError(RuntimeError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="precy",
        description="Exact checks on pre-Calabi-Yau deformations of spheres",
    )
    parser.add_argument("command", choices=COMMANDS, help="Check suite to run")
    parser.add_argument("--n", type=int, help="Sphere dimension")
    parser.add_argument("--field", help="Coefficient field: q, f2 or fp:<p>")
    parser.add_argument("--t-max", dest="t_max", type=int, help="Truncation bound D")
    parser.add_argument("--weight-max", dest="weight_max", type=int, help="Largest weight")
    parser.add_argument("--outputs-max", dest="outputs_max", type=int, help="Largest level")
    parser.add_argument("--input-bound", dest="input_bound", type=int, help="Input window E")
    parser.add_argument("--max-legs", dest="max_legs", type=int, help="Dimension table bound")
    parser.add_argument(
        "--genus-bound", dest="genus_bound", type=int, help="Vertex bound of the genus sweep"
    )
    parser.add_argument("--seed", type=int, help="Seed for sampled deformations")
    parser.add_argument("--samples", type=int, help="Sampled deformations per weight")
    parser.add_argument("--report", dest="report_format", choices=["json", "text"])
    parser.add_argument("--out", help="Write the report here instead of stdout")
    parser.add_argument("--timings", action="store_true", help="Record time per check")
    parser.add_argument("--log-level", dest="log_level", help="Override LOG_LEVEL")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    try:
        settings = get_settings()
    except ValidationError as e:
        raise _UserInputError(f"Invalid settings: {e}") from e

    field = args.field
    if field is None and args.command == "char2":
        field = "f2"
    config = RunConfig.from_settings(
        args.command,
        settings,
        n=args.n,
        field=field,
        t_max=args.t_max,
        weight_max=args.weight_max,
        outputs_max=args.outputs_max,
        input_bound=args.input_bound,
        max_legs=args.max_legs,
        genus_bound=args.genus_bound,
        seed=args.seed,
        samples=args.samples,
        report_format=args.report_format,
        timings=args.timings or None,
    )
    try:
        config.validate()
    except ValueError as e:
        raise _UserInputError(str(e)) from e
    return config


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as e:
        return 0 if e.code == 0 else EXIT_USAGE

    try:
        app = get_settings().app
        configure_logging(args.log_level or app.log_level, app.log_format)
        config = _config(args)
        report = COMMAND_TABLE[config.command](config)
    except (_UserInputError, ValueError) as e:
        print(f"precy: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    write_report(report, args.out)
    logger.info("run_finished", command=config.command, exit_code=report.exit_code)
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
