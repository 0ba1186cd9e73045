import argparse
import logging

from commands.common import add_seg_arguments, seg_config_from
from segmentation.dp import select_k
from segmentation.prefix_stats import build_stats
from storage.matrix_io import load_matrix
from storage.results_io import write_json

logger = logging.getLogger(__name__)


def cmd_segment(args: argparse.Namespace) -> int:
    """
    Segment one matrix file and write the per-K sweep and the selected
    segmentation as JSON.
    """
    cfg = seg_config_from(args, symmetrize=args.symmetrize)
    matrix = load_matrix(args.input, cfg)
    result = select_k(build_stats(matrix, cfg), cfg)
    write_json(args.output, result.to_report())
    logger.info(f"Wrote segmentation of {args.input} to {args.output} (K_hat={result.k_hat})")
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("segment", help="segment a matrix file")
    parser.add_argument("--input", required=True, help="dense TSV or CSV matrix")
    parser.add_argument("--output", required=True, help="JSON report path")
    parser.add_argument("--symmetrize", action="store_true", help="average Y and its transpose instead of rejecting")
    add_seg_arguments(parser, kmax_required=True)
    parser.set_defaults(handler=cmd_segment)
