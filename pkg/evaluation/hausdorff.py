import numpy as np

from pydantic_models.core_model import Segmentation
from pydantic_models.evaluation_model import HausdorffPair


def hausdorff(t_true: Segmentation, t_hat: Segmentation) -> HausdorffPair:
    """
    Split Hausdorff distance between two boundary vectors (endpoints included).

    h1 is the worst distance from a true boundary to the nearest estimated
    one, h2 the worst distance from an estimated boundary to the nearest true
    one.
    """
    if t_true.n != t_hat.n:
        raise ValueError(f"segmentations of different sizes: {t_true.n} and {t_hat.n}")
    gaps = np.abs(np.subtract.outer(np.array(t_true.boundaries), np.array(t_hat.boundaries)))
    return HausdorffPair(h1=int(gaps.min(axis=1).max()), h2=int(gaps.min(axis=0).max()))
