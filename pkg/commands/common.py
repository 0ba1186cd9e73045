import argparse
from typing import Tuple

from config import config
from pydantic_models.core_model import GroundTruth, SegConfig


def real_list(text: str) -> Tuple[float, ...]:
    """Parse a comma-separated list of reals, e.g. ``0,0.07,0.2,1``."""
    try:
        return tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals, got {text!r}")


def add_seg_arguments(parser: argparse.ArgumentParser, kmax_required: bool = False) -> None:
    parser.add_argument("--c", type=float, default=config.DEFAULT_C, help="maximal block fraction, in [1/2, 1)")
    parser.add_argument("--min-len", dest="min_len", type=int, default=config.DEFAULT_MIN_LEN)
    if kmax_required:
        parser.add_argument("--kmax", type=int, required=True, help="largest number of blocks tried")
    else:
        parser.add_argument("--kmax", type=int, default=config.DEFAULT_K_MAX)


def add_truth_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tau", type=real_list, required=True, help="break fractions, 0 first and 1 last")
    parser.add_argument("--mu", type=real_list, required=True, help="block means")
    parser.add_argument("--mu0", type=float, default=0.0, help="baseline mean")
    parser.add_argument("--sigma", type=float, default=1.0, help="noise standard deviation")
    parser.add_argument("--omega", type=float, default=0.0, help="shift of the corner mean")


def seg_config_from(args: argparse.Namespace, symmetrize: bool = False) -> SegConfig:
    return SegConfig(c=args.c, min_len=args.min_len, k_max=args.kmax, symmetrize=symmetrize)


def truth_from(args: argparse.Namespace) -> GroundTruth:
    return GroundTruth(tau=args.tau, mu=args.mu, mu0=args.mu0, sigma=args.sigma, omega=args.omega)
