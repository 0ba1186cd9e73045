import argparse
import sys
from typing import List, Optional

from commands.experiment import register as register_experiment
from commands.segment import register as register_segment
from commands.simulate import register as register_simulate
from commands.theory_check import register as register_theory_check
from error_handlers import handle_exception
from exceptions import UsageError
from logging_conf import configure_logging

version = "0.1.0"


class BlockSegArgumentParser(argparse.ArgumentParser):
    """Reports bad flags as a UsageError (exit 1) instead of argparse's own exit 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> BlockSegArgumentParser:
    parser = BlockSegArgumentParser(
        prog="blockseg",
        description="Exact least-squares segmentation of diagonal blocks in symmetric matrices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {version}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    register_segment(subparsers)
    register_simulate(subparsers)
    register_experiment(subparsers)
    register_theory_check(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logger = configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logger.debug(f"Running {args.command} with {vars(args)}")
        return args.handler(args)
    except SystemExit as exc:
        # --help and --version
        return exc.code if isinstance(exc.code, int) else 0
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        return 130
    except Exception as exc:
        return handle_exception(exc)


if __name__ == "__main__":
    sys.exit(main())
