"""
Command-line entry point.

    hopf-galois enumerate --fixture group:S3
    hopf-galois nbg --fixture split:S3 --samples 200 --seed 7
    hopf-galois theorem --fixture split:S3 --lattice scaled:3 --out report.json
    hopf-galois hopf-order --fixture split:S3 --format markdown
    hopf-galois --verify-only report.json

Exit codes: 0 success, 2 invalid fixture or input, 3 budget exceeded,
4 contradiction.
"""

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

import structlog
from pydantic import BaseModel, ValidationError

from app.controllers.command_controller import command_controller
from app.core.config import settings
from app.core.exceptions import (
    BudgetExceededError,
    ClaimFailureError,
    HopfGaloisError,
    InternalConsistencyError,
    UnverifiedElementError,
)
from app.core.logging import setup_logging
from app.models.enums import CommandName, ExitCode, ReportFormat
from app.schemas.report_schemas import RunConfig

logger = structlog.get_logger()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopf-galois",
        description="Exact Hopf-Galois computations: regular subgroups, normal basis "
                    "generators, associated orders and generator transfer.")
    parser.add_argument("command", nargs="?", choices=[c.value for c in CommandName],
                        help="command to run (omit with --verify-only)")
    parser.add_argument("--fixture", help="group:<name>, split:<name>, field:S3 or a JSON path")
    parser.add_argument("--lattice", default="standard",
                        help="standard, augmentation, scaled:<c> or a lattice JSON path")
    parser.add_argument("--seed", type=int, default=settings.default_seed)
    parser.add_argument("--samples", type=int, default=settings.default_samples)
    parser.add_argument("--box", type=int, default=settings.default_search_box,
                        help="coefficient bound for the generator search")
    parser.add_argument("--force-zero", action="store_true",
                        help="make the first nbg sample the zero element")
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--format", choices=[f.value for f in ReportFormat], default=ReportFormat.JSON.value)
    parser.add_argument("--verify-only", metavar="REPORT",
                        help="re-validate the certificates of a theorem report")
    parser.add_argument("--log-level", default=None, help="overrides HOPF_GALOIS_LOG_LEVEL")
    return parser


def render(report: BaseModel, fmt: ReportFormat) -> str:
    if fmt is ReportFormat.MARKDOWN:
        return command_controller.render_markdown(report)
    return report.model_dump_json(indent=2) + "\n"


def write_output(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def exit_code_for(exc: HopfGaloisError) -> ExitCode:
    if isinstance(exc, BudgetExceededError):
        return ExitCode.BUDGET_EXCEEDED
    if isinstance(exc, (UnverifiedElementError, ClaimFailureError, InternalConsistencyError)):
        return ExitCode.CONTRADICTION
    return ExitCode.FIXTURE_INVALID


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    fmt = ReportFormat(args.format)

    try:
        if args.verify_only:
            report: BaseModel = command_controller.verify_only(args.verify_only)
        else:
            if args.command is None or args.fixture is None:
                parser.error("a command and --fixture are required unless --verify-only is given")
            config = RunConfig(command=args.command, fixture=args.fixture, lattice=args.lattice,
                               seed=args.seed, samples=args.samples, box=args.box,
                               out=args.out, format=fmt)
            report = command_controller.run(config, force_zero=args.force_zero)
    except ValidationError as exc:
        logger.error("Invalid run configuration", errors=exc.error_count())
        return int(ExitCode.FIXTURE_INVALID)
    except HopfGaloisError as exc:
        code = exit_code_for(exc)
        logger.error("Command failed", error=str(exc), error_type=type(exc).__name__, exit_code=int(code))
        return int(code)

    write_output(render(report, fmt), args.out)
    code = command_controller.exit_code(report)
    logger.info("Command finished", exit_code=int(code))
    return int(code)


if __name__ == "__main__":
    sys.exit(main())
