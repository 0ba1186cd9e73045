import logging
from pathlib import Path
from typing import Union

import numpy as np
from pydantic import ValidationError

from exceptions import MatrixFileError
from pydantic_models.core_model import ObservationMatrix, SegConfig

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def delimiter_for(path: PathLike) -> str:
    """Comma for ``.csv``, tab for everything else (``.tsv``, ``.txt``)."""
    return "," if Path(path).suffix.lower() == ".csv" else "\t"


def load_matrix(path: PathLike, cfg: SegConfig) -> ObservationMatrix:
    """
    Read a dense square matrix file into a validated ObservationMatrix.

    Args:
        path: TSV or CSV file, one row per line, no header.
        cfg: only ``cfg.symmetrize`` is used; when set the matrix is replaced
            by ``(Y + Y^T) / 2`` instead of being rejected when asymmetric.

    Raises:
        MatrixFileError: unreadable file, non-numeric cell, ragged or
            non-square rows, asymmetry, or a side below 8.
    """
    path = Path(path)
    try:
        values = np.loadtxt(path, delimiter=delimiter_for(path), dtype=np.float64, ndmin=2)
    except OSError as error:
        raise MatrixFileError(f"cannot read {path}: {error}") from error
    except ValueError as error:
        raise MatrixFileError(f"{path}: {error}") from error

    try:
        matrix = ObservationMatrix.from_array(values, symmetrize=cfg.symmetrize)
    except ValidationError as error:
        messages = "; ".join(e["msg"] for e in error.errors())
        raise MatrixFileError(f"{path}: {messages}") from error

    logger.info(f"Loaded {matrix.n}x{matrix.n} matrix from {path}")
    return matrix


def save_matrix(path: PathLike, matrix: ObservationMatrix) -> Path:
    """Write with 17 significant digits so that loading gives back the same doubles."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, matrix.values, fmt="%.17g", delimiter=delimiter_for(path))
    logger.info(f"Saved {matrix.n}x{matrix.n} matrix to {path}")
    return path
