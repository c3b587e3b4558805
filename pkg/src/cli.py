"""
Command-line interface.

Usage:
    sepkit run examples.json                 # every task of the document
    sepkit solve-idempotent examples.json    # only the tasks of one kind
    sepkit dump examples.json                # re-serialized document

Exit codes:
    0: Every task passed
    1: At least one task failed
    2: Input error (unreadable file, invalid document, unresolved name, shape mismatch)
    3: Enumeration limit exceeded, or enumeration requested over Q
"""

import argparse
import json
import logging
import sys
from typing import List, Optional, Sequence, TextIO, get_args

from src.config import settings
from src.schemas.document import TaskKind
from src.schemas.report import Report
from src.services.document_service import SpecError, dump, exit_code, parse_spec, run_tasks
from src.utils.exactla import ExactLAError, InfiniteField, LimitExceeded

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_LIMIT = 3

TASK_KINDS = get_args(TaskKind)


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser: `run`, `dump` and one subcommand per task kind.

    Returns:
        argparse.ArgumentParser: Parser whose namespace carries `command` and `file`
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="Input document (JSON)")
    common.add_argument(
        "--limit",
        type=int,
        default=None,
        help=f"Solver candidate limit (default: {settings.ENUMERATION_LIMIT})",
    )
    common.add_argument(
        "--json",
        action="store_true",
        default=settings.OUTPUT_FORMAT == "json",
        help="Print reports as JSON instead of a table",
    )
    common.add_argument(
        "--log-level",
        type=str,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=settings.LOG_LEVEL.upper(),
        help=f"Logging level (default: {settings.LOG_LEVEL})",
    )
    common.add_argument(
        "--log-format",
        type=str,
        choices=["text", "json"],
        default=settings.LOG_FORMAT,
        help=f"Log record format on stderr (default: {settings.LOG_FORMAT})",
    )

    parser = argparse.ArgumentParser(
        prog="sepkit",
        description="Verify and search for separability certificates over exact fields.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Exit codes:" + __doc__.split("Exit codes:")[1],
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    sub.add_parser("run", parents=[common], help="Run every task of the document")
    sub.add_parser("dump", parents=[common], help="Print the parsed document")
    for kind in TASK_KINDS:
        sub.add_parser(kind, parents=[common], help=f"Run the {kind} tasks of the document")
    return parser


def render_table(reports: Sequence[Report], out: TextIO) -> None:
    """Print one row per report, then the first witness of every failed condition."""
    rows = [("TASK", "KIND", "VERDICT", "OUTCOME", "SOLUTIONS", "MS")]
    for r in reports:
        found = str(len(r.solutions)) if r.solutions is not None else "-"
        elapsed = f"{r.elapsed_ms:.1f}" if r.elapsed_ms is not None else "-"
        rows.append((r.task, r.kind, r.verdict.upper(), r.outcome or "-", found, elapsed))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip(), file=out)

    for r in reports:
        for c in r.conditions:
            if c.passed:
                continue
            w = c.witnesses[0]
            line = f"  {r.task} [{c.tag}] at {w.location}: {w.detail}"
            if w.lhs is not None and w.rhs is not None:
                line += f" (lhs {w.lhs}, rhs {w.rhs})"
            print(line, file=out)
        for solution in r.solutions or []:
            print(f"  {r.task} solution: [{', '.join(solution)}]", file=out)

    passed = sum(1 for r in reports if r.passed)
    print(f"{passed}/{len(reports)} task(s) passed", file=out)


def render_json(reports: Sequence[Report], out: TextIO) -> None:
    print(json.dumps([r.model_dump() for r in reports], indent=2, ensure_ascii=False), file=out)


def main(argv: Optional[List[str]] = None, out: Optional[TextIO] = None) -> int:
    """
    Entry point of the `sepkit` console script.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])
        out: Stream receiving reports (default: sys.stdout)

    Returns:
        int: Process exit code
    """
    args = build_parser().parse_args(argv)
    out = out or sys.stdout
    settings.configure_logging(level=args.log_level, fmt=args.log_format)

    try:
        doc = parse_spec(args.file)
        if args.command == "dump":
            print(dump(doc), file=out)
            return EXIT_OK
        kinds = None if args.command == "run" else [args.command]
        reports = run_tasks(doc, kinds=kinds, limit=args.limit)
    except (LimitExceeded, InfiniteField) as e:
        logger.error(f"Enumeration refused: {e}")
        return EXIT_LIMIT
    except SpecError as e:
        logger.error(f"Invalid document: {e}")
        return EXIT_INPUT_ERROR
    except ExactLAError as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_INPUT_ERROR

    if not reports:
        logger.warning(f"No {args.command} tasks in {args.file}")
    if args.json:
        render_json(reports, out)
    else:
        render_table(reports, out)
    return exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
