"""Monte Carlo runner: simulate, segment and score every (n, sigma, omega, seed) task.

Rows are appended to the replicate CSV as soon as a task finishes, so an
interrupted run keeps its work and a rerun only computes the missing keys.
The finished file is rewritten in key order, which makes its content
independent of the number of workers and of the order they finish in.
"""
import argparse
import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import List

import pandas as pd

from evaluation.hausdorff import hausdorff
from pydantic_models.experiment_model import ExperimentConfig, ReplicateTask, build_tasks
from pydantic_models.simulation_model import SimSpec
from segmentation.dp import select_k
from segmentation.prefix_stats import build_stats
from simulation.generator import generate
from storage.results_io import (
    ReplicateRow,
    ReplicateWriter,
    completed_keys,
    finalize_replicates,
    summarize,
    summary_path,
    write_summary,
)

logger = logging.getLogger(__name__)


def run_replicate(task: ReplicateTask) -> ReplicateRow:
    """Module-level so the process pool can pickle it."""
    matrix, t_star = generate(SimSpec(n=task.n, truth=task.cell_truth(), seed=task.seed), task.seg)
    started = time.perf_counter()
    result = select_k(build_stats(matrix, task.seg), task.seg)
    elapsed_ms = round((time.perf_counter() - started) * 1000.0)
    distance = hausdorff(t_star, result.boundaries_hat)
    return ReplicateRow(
        n=task.n,
        sigma=task.sigma,
        omega=task.omega,
        seed=task.seed,
        k_hat=result.k_hat,
        h1=distance.h1,
        h2=distance.h2,
        runtime_ms=elapsed_ms if task.record_runtime else 0,
    )


def _run_pool(tasks: List[ReplicateTask], jobs: int, writer: ReplicateWriter) -> None:
    executor = ProcessPoolExecutor(max_workers=jobs)
    try:
        futures = {executor.submit(run_replicate, task): task for task in tasks}
        for done, future in enumerate(as_completed(futures), start=1):
            writer.write(future.result())
            if done % 50 == 0:
                logger.info(f"{done}/{len(tasks)} replicates done")
    except BaseException:
        executor.shutdown(wait=False, cancel_futures=True)
        raise
    executor.shutdown()


def run_experiment(experiment: ExperimentConfig, output: Path) -> pd.DataFrame:
    """Run the missing tasks, sort the replicate file and write the per-cell summary next to it."""
    output = Path(output)
    done = completed_keys(output)
    tasks = [task for task in build_tasks(experiment) if task.key not in done]
    jobs = min(experiment.resolved_jobs(), max(1, len(tasks)))
    logger.info(
        f"Experiment: {len(experiment.cells())} cells x {experiment.replicates} replicates, "
        f"{len(done)} already on disk, {len(tasks)} to run on {jobs} worker(s)"
    )

    with ReplicateWriter(output) as writer:
        try:
            if jobs == 1:
                for task in tasks:
                    writer.write(run_replicate(task))
            else:
                _run_pool(tasks, jobs, writer)
        except KeyboardInterrupt:
            logger.warning(f"Interrupted; finished rows are kept in {output}, rerun to resume")
            raise

    frame = finalize_replicates(output)
    summary = summarize(frame, experiment.truth.k_star)
    write_summary(summary_path(output), summary)
    logger.info(f"Wrote {len(frame)} replicate rows to {output} and the summary to {summary_path(output)}")
    return frame


def cmd_experiment(args: argparse.Namespace) -> int:
    experiment = ExperimentConfig.from_file(args.config)
    run_experiment(experiment, Path(args.output))
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("experiment", help="run a Monte Carlo experiment grid")
    parser.add_argument("config", help="TOML or JSON experiment file")
    parser.add_argument("--output", required=True, help="replicate CSV; the summary goes to <stem>_summary.csv")
    parser.set_defaults(handler=cmd_experiment)
