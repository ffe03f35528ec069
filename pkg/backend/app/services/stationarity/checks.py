from __future__ import annotations

"""Multiplier-free critical-point test and the orthogonal witness e*."""
import logging

import numpy as np
import numpy.typing as npt

from app.core.errors import NotCritical, ZeroGradient
from app.services.densela import (
    DEFAULT_TOLERANCES,
    Mat,
    Tolerances,
    Vec,
    fundamental_subspaces,
    mp_inverse,
)
from app.services.geometry import Problem, jacobian
from app.utils.profiling import profiled

from .types import OrthogonalWitness, StationarityCheck

logger = logging.getLogger(__name__)


def tangent_residual_with(p: Problem, x: npt.ArrayLike, ginv: Mat) -> float:
    """‖f′(x)(I − B g′(x))‖ for any B ∈ GI(g′(x))."""
    pt = p.point(x)
    jac = jacobian(p, pt)
    fp = p.objective_gradient(pt)
    return float(np.linalg.norm(fp - fp @ np.asarray(ginv) @ jac))


@profiled("stationarity.check")
def check(
    p: Problem, x: npt.ArrayLike, tol: Tolerances = DEFAULT_TOLERANCES
) -> StationarityCheck:
    """
    Residuals of g(x) = y₀ and f′(x) − f′(x) g′⁺(x) g′(x) = 0 (M-P inverse);
    x is critical when both fall below residual_abs.
    """
    pt = p.point(x)
    c_res = p.constraint_residual(pt)
    t_res = tangent_residual_with(p, pt, mp_inverse(jacobian(p, pt), tol))
    return StationarityCheck(
        point=pt,
        constraint_residual=c_res,
        tangent_residual=t_res,
        is_critical=c_res < tol.residual_abs and t_res < tol.residual_abs,
        threshold=tol.residual_abs,
    )


def tangent_components(
    p: Problem, x: npt.ArrayLike, tol: Tolerances = DEFAULT_TOLERANCES
) -> Vec:
    """f′(x)·v for each vector v of the tangent basis N(g′(x))."""
    pt = p.point(x)
    basis = fundamental_subspaces(jacobian(p, pt), tol).null
    return p.objective_gradient(pt) @ basis.vectors


def _is_zero_gradient(fp: Vec, tol: Tolerances) -> bool:
    return float(np.linalg.norm(fp)) < tol.residual_abs


@profiled("stationarity.orthogonal_witness")
def orthogonal_witness(
    p: Problem, x: npt.ArrayLike, tol: Tolerances = DEFAULT_TOLERANCES
) -> OrthogonalWitness:
    """
    e* = f′(x)/‖f′(x)‖, verified orthogonal to N(g′(x)) and N(f′(x)).
    Not canonical when codim N(f′(x)) > 1; the gradient direction is returned.
    """
    pt = p.point(x)
    fp = p.objective_gradient(pt)
    if _is_zero_gradient(fp, tol):
        raise ZeroGradient("f'(x) = 0: every direction is orthogonal to N(f'(x))")
    chk = check(p, pt, tol)
    if not chk.is_critical:
        raise NotCritical(chk.constraint_residual, chk.tangent_residual)

    e_star = fp / np.linalg.norm(fp)
    tangent = fundamental_subspaces(jacobian(p, pt), tol).null
    grad_null = fundamental_subspaces(fp.reshape(1, -1), tol).null

    def _overlap(vectors: Mat) -> float:
        return float(np.max(np.abs(e_star @ vectors))) if vectors.shape[1] else 0.0

    t_over = _overlap(tangent.vectors)
    g_over = _overlap(grad_null.vectors)
    # |<e*, v>| = |f'(x)v| / |f'(x)| on the tangent basis
    t_limit = tol.residual_abs * max(1.0, 1.0 / float(np.linalg.norm(fp)))
    if t_over >= t_limit or g_over >= tol.residual_abs:
        raise NotCritical(chk.constraint_residual, chk.tangent_residual)
    return OrthogonalWitness(
        e_star=e_star, tangent_overlap=t_over, gradient_null_overlap=g_over
    )
