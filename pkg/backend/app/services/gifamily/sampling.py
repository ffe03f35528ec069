from __future__ import annotations

"""Random test instances: matrices of prescribed rank and random charts."""
import numpy as np

from app.services.densela import DEFAULT_TOLERANCES, Mat, Tolerances

from .chart import GenInverseChart, origin_chart, with_coordinates


def random_orthonormal(rng: np.random.Generator, n: int, k: int) -> Mat:
    q, r = np.linalg.qr(rng.standard_normal((n, max(k, 1))))
    q = q * np.sign(np.diag(r))
    return q[:, :k]


def random_matrix_of_rank(
    rng: np.random.Generator,
    m: int,
    n: int,
    rank: int,
    *,
    spread: tuple[float, float] = (0.5, 2.0),
) -> Mat:
    """m×n matrix with exactly `rank` singular values drawn from `spread`."""
    if not 0 <= rank <= min(m, n):
        raise ValueError(f"rank {rank} impossible for {m}x{n}")
    if rank == 0:
        return np.zeros((m, n))
    u = random_orthonormal(rng, m, rank)
    v = random_orthonormal(rng, n, rank)
    s = rng.uniform(*spread, size=rank)
    return (u * s) @ v.T


def random_chart(
    A: Mat,
    rng: np.random.Generator,
    tol: Tolerances = DEFAULT_TOLERANCES,
    *,
    scale: float = 1.0,
) -> GenInverseChart:
    base = origin_chart(A, tol)
    alpha = scale * rng.standard_normal(base.alpha.shape)
    beta = scale * rng.standard_normal(base.beta.shape)
    return with_coordinates(base, alpha, beta)
