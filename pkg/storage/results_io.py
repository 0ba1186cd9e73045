import csv
import json
from pathlib import Path
from typing import Set, Tuple, Union

import pandas as pd
from pydantic import BaseModel

PathLike = Union[str, Path]

REPLICATE_COLUMNS = ["n", "sigma", "omega", "seed", "k_hat", "h1", "h2", "runtime_ms"]
SORT_KEY = ["n", "sigma", "omega", "seed"]


class ReplicateRow(BaseModel):
    n: int
    sigma: float
    omega: float
    seed: int
    k_hat: int
    h1: int
    h2: int
    runtime_ms: int


def write_json(path: PathLike, payload: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return path


def summary_path(path: PathLike) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}_summary.csv")


def completed_keys(path: PathLike) -> Set[Tuple[int, float, float, int]]:
    """(n, sigma, omega, seed) of every row already on disk."""
    path = Path(path)
    if not path.exists() or path.stat().st_size == 0:
        return set()
    frame = pd.read_csv(path)
    return {
        (int(row.n), float(row.sigma), float(row.omega), int(row.seed))
        for row in frame.itertuples(index=False)
    }


class ReplicateWriter:
    """Appends rows as they finish and flushes each one, so an interrupted run keeps them."""

    def __init__(self, path: PathLike):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fresh = not self.path.exists() or self.path.stat().st_size == 0
        self._handle = self.path.open("a", newline="", encoding="utf-8")
        self._writer = csv.writer(self._handle, lineterminator="\n")
        if fresh:
            self._writer.writerow(REPLICATE_COLUMNS)
            self._handle.flush()

    def write(self, row: ReplicateRow) -> None:
        self._writer.writerow([getattr(row, column) for column in REPLICATE_COLUMNS])
        self._handle.flush()

    def close(self) -> None:
        self._handle.close()

    def __enter__(self) -> "ReplicateWriter":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def finalize_replicates(path: PathLike) -> pd.DataFrame:
    """Rewrite the replicate file sorted by (n, sigma, omega, seed) and return it."""
    path = Path(path)
    frame = pd.read_csv(path)
    frame = frame.sort_values(SORT_KEY, kind="mergesort").reset_index(drop=True)
    frame.to_csv(path, index=False, lineterminator="\n")
    return frame


def summarize(frame: pd.DataFrame, k_star: int) -> pd.DataFrame:
    """Per (n, sigma, omega) cell: median and quartiles of k_hat, h1 and h2, plus the exact-recovery rate."""
    grouped = frame.groupby(["n", "sigma", "omega"], sort=True)
    summary = grouped.size().rename("replicates").to_frame()
    for column in ("k_hat", "h1", "h2"):
        summary[f"{column}_median"] = grouped[column].median()
        summary[f"{column}_q1"] = grouped[column].quantile(0.25)
        summary[f"{column}_q3"] = grouped[column].quantile(0.75)
    summary["k_hat_exact_rate"] = grouped["k_hat"].apply(lambda values: float((values == k_star).mean()))
    return summary.reset_index()


def write_summary(path: PathLike, summary: pd.DataFrame) -> Path:
    path = Path(path)
    summary.to_csv(path, index=False, lineterminator="\n")
    return path
