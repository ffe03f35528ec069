from __future__ import annotations

"""
Derivative structure of the chart map M.

M is quadratic in (α, β): DM is affine, D²M is constant (independent of the
point of the chart), D³M vanishes.
"""
import logging
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from app.services.densela import Mat
from app.utils.profiling import profiled

from .chart import GenInverseChart, build_matrix, with_increment

logger = logging.getLogger(__name__)

Increment = Tuple[Mat, Mat]  # (Δα, Δβ)


def _check_increment(chart: GenInverseChart, d_alpha: Mat, d_beta: Mat) -> None:
    if d_alpha.shape != chart.alpha.shape or d_beta.shape != chart.beta.shape:
        raise ValueError(
            f"increment shapes {d_alpha.shape}/{d_beta.shape} do not match chart "
            f"{chart.alpha.shape}/{chart.beta.shape}"
        )


def dM(chart: GenInverseChart, d_alpha: npt.ArrayLike, d_beta: npt.ArrayLike) -> Mat:
    """DM(α,β)⟨Δα,Δβ⟩ = Δα A₀⁺ (I − βP) − (I + α) A₀⁺ Δβ P."""
    da = np.asarray(d_alpha, dtype=np.float64)
    db = np.asarray(d_beta, dtype=np.float64)
    _check_increment(chart, da, db)
    m, n = chart.shape
    p = chart.complement_projector
    a0 = chart.base_inverse
    first = chart.alpha_map(da) @ a0 @ (np.eye(m) - chart.beta_map() @ p)
    second = (np.eye(n) + chart.alpha_map()) @ a0 @ chart.beta_map(db) @ p
    return first - second


def d2M(
    d_alpha: npt.ArrayLike,
    d_beta: npt.ArrayLike,
    d_alpha1: npt.ArrayLike,
    d_beta1: npt.ArrayLike,
    base: GenInverseChart,
) -> Mat:
    """
    D²M⟨(Δα,Δβ), (Δα₁,Δβ₁)⟩ = −Δα A₀⁺ Δβ₁ P − Δα₁ A₀⁺ Δβ P.

    Only the bases and A₀⁺ of `base` enter; its (α, β) do not.
    """
    da, db, da1, db1 = (
        np.asarray(v, dtype=np.float64) for v in (d_alpha, d_beta, d_alpha1, d_beta1)
    )
    _check_increment(base, da, db)
    _check_increment(base, da1, db1)
    p = base.complement_projector
    a0 = base.base_inverse
    return -(base.alpha_map(da) @ a0 @ base.beta_map(db1) @ p) - (
        base.alpha_map(da1) @ a0 @ base.beta_map(db) @ p
    )


def _random_increment(chart: GenInverseChart, rng: np.random.Generator) -> Increment:
    da = rng.standard_normal(chart.alpha.shape)
    db = rng.standard_normal(chart.beta.shape)
    norm = float(np.sqrt(np.sum(da**2) + np.sum(db**2)))
    if norm == 0.0:
        return da, db
    return da / norm, db / norm


def third_difference(
    chart: GenInverseChart,
    u: Increment,
    v: Increment,
    w: Increment,
    *,
    step: float,
    evaluate: Callable[[GenInverseChart], Mat] = build_matrix,
) -> Mat:
    """Mixed central third difference of `evaluate` along u, v, w."""
    acc = np.zeros(chart.shape[::-1])
    for su in (1.0, -1.0):
        for sv in (1.0, -1.0):
            for sw in (1.0, -1.0):
                da = su * u[0] + sv * v[0] + sw * w[0]
                db = su * u[1] + sv * v[1] + sw * w[1]
                acc += su * sv * sw * evaluate(with_increment(chart, da, db, step))
    return acc / (8.0 * step**3)


@profiled("gifamily.third_derivative_is_zero")
def third_derivative_is_zero(
    base: GenInverseChart,
    trials: int,
    *,
    seed: int = 0,
    step: float = 1e-2,
    threshold: float = 1e-6,
    increments: Optional[Sequence[Tuple[Increment, Increment, Increment]]] = None,
    evaluate: Callable[[GenInverseChart], Mat] = build_matrix,
) -> bool:
    """
    True iff every sampled third difference of `evaluate` stays below
    `threshold` (max abs entry). M is exactly quadratic, so only rounding
    remains; the step is large because the stencil divides by 8·step³.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if increments is None:
        rng = np.random.default_rng(seed)
        triples = [
            (
                _random_increment(base, rng),
                _random_increment(base, rng),
                _random_increment(base, rng),
            )
            for _ in range(trials)
        ]
    else:
        triples = list(increments)
    worst = 0.0
    for u, v, w in triples:
        d3 = third_difference(base, u, v, w, step=step, evaluate=evaluate)
        worst = max(worst, float(np.max(np.abs(d3))) if d3.size else 0.0)
    logger.debug("third difference max |D3| = %.3e over %d triples", worst, len(triples))
    return worst < threshold
