import numpy as np

from pydantic_models.core_model import ObservationMatrix

FIVE_BLOCK_TAU = (0.0, 0.07, 0.2, 0.4, 0.67, 1.0)


def random_symmetric(rng: np.random.Generator, n: int) -> ObservationMatrix:
    values = rng.standard_normal((n, n))
    return ObservationMatrix(values=np.triu(values) + np.triu(values, 1).T)


def block_matrix(boundaries, means, mu0: float = 0.0) -> ObservationMatrix:
    n = boundaries[-1]
    values = np.full((n, n), float(mu0))
    for a, b, mean in zip(boundaries[:-1], boundaries[1:], means):
        values[a:b, a:b] = mean
    return ObservationMatrix(values=values)
