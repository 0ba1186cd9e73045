import argparse
import logging
from pathlib import Path

from commands.common import add_seg_arguments, add_truth_arguments, seg_config_from, truth_from
from pydantic_models.core_model import GroundTruth, SegConfig, Segmentation
from pydantic_models.simulation_model import SimSpec
from simulation.generator import generate
from storage.matrix_io import save_matrix
from storage.results_io import write_json

logger = logging.getLogger(__name__)


def truth_sidecar(spec: SimSpec, cfg: SegConfig, boundaries: Segmentation) -> dict:
    truth: GroundTruth = spec.truth
    derived = cfg.derive(spec.n)
    return {
        "spec": spec.model_dump(mode="json"),
        "config": cfg.model_dump(),
        "n0": derived.n0,
        "boundaries": list(boundaries.boundaries),
        "t": list(boundaries.one_based()),
        "lambda_inf": truth.lambda_inf,
        "lambda_bar": truth.lambda_bar,
        "corner_mean": truth.corner_mean,
        "lambda_inf_effective": truth.lambda_inf_effective,
        "beta": truth.beta,
    }


def sidecar_path(output: Path) -> Path:
    return output.with_name(output.name + ".truth.json")


def cmd_simulate(args: argparse.Namespace) -> int:
    cfg = seg_config_from(args)
    spec = SimSpec(n=args.n, truth=truth_from(args), seed=args.seed)
    matrix, boundaries = generate(spec, cfg)

    output = Path(args.output)
    save_matrix(output, matrix)
    write_json(sidecar_path(output), truth_sidecar(spec, cfg, boundaries))
    logger.info(f"Simulated n={spec.n} seed={spec.seed} into {output}; true boundaries {boundaries.boundaries}")
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="simulate a block-diagonal matrix")
    parser.add_argument("--n", type=int, required=True)
    add_truth_arguments(parser)
    parser.add_argument("--seed", type=int, required=True)
    parser.add_argument("--output", required=True, help="matrix path; the truth goes to PATH.truth.json")
    add_seg_arguments(parser)
    parser.set_defaults(handler=cmd_simulate)
