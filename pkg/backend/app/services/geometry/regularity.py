from __future__ import annotations

"""
Constraint-side analysis: Jacobian of g, tangent space N(g′(x)), and the
regular / generalized-regular classification of points.
"""
import enum
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import numpy.typing as npt
from scipy.stats import qmc

from app.core.errors import DomainError, NonFiniteInput, NotOnConstraint
from app.services.densela import (
    DEFAULT_TOLERANCES,
    Mat,
    SubspaceBasis,
    Tolerances,
    Vec,
    as_mat,
    fundamental_subspaces,
    numerical_rank,
)
from app.services.exprdsl import grad
from app.utils.profiling import profiled

from .problem import Problem

logger = logging.getLogger(__name__)

DEFAULT_PROBES = 64
DEFAULT_RADIUS = 1e-3


class VerdictKind(str, enum.Enum):
    CONFIRMED = "Confirmed"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"


@dataclass(frozen=True, eq=False)
class GeneralizedRegularVerdict:
    """Sampling evidence only: Confirmed is not a proof."""

    kind: VerdictKind
    samples: int = 0
    witness: Optional[Vec] = None


@dataclass(frozen=True, eq=False)
class RegularityReport:
    point: Vec
    on_constraint: bool
    constraint_residual: float
    rank: int
    regular: bool
    generalized_regular_verdict: GeneralizedRegularVerdict
    tangent_basis: SubspaceBasis


def jacobian(p: Problem, x: npt.ArrayLike) -> Mat:
    """m×n matrix of exact forward-mode gradients of the components of g."""
    pt = p.point(x)
    rows = np.vstack([grad(gi, pt) for gi in p.g])
    return as_mat(rows, name="jacobian")


def probe_points(
    x: Vec, probes: int, radius: float, seed: int = 0
) -> np.ndarray:
    """`probes` points of a scrambled Halton sequence inside the radius-ball at x."""
    n = x.shape[0]
    u = qmc.Halton(d=n, scramble=True, seed=seed).random(probes)
    return x + radius * (2.0 * u - 1.0) / np.sqrt(n)


def _meets_trivially(
    jac: Mat, complement: SubspaceBasis, tol: Tolerances
) -> bool:
    """R(jac) ∩ complement = {0}, decided by the rank of the stacked bases."""
    rng = fundamental_subspaces(jac, tol).range
    if rng.dim == 0 or complement.dim == 0:
        return True
    stacked = np.hstack([rng.vectors, complement.vectors])
    return numerical_rank(stacked, tol) == rng.dim + complement.dim


def _probe_verdict(
    p: Problem,
    center: Vec,
    complement: SubspaceBasis,
    tol: Tolerances,
    probes: int,
    radius: float,
    seed: int,
) -> GeneralizedRegularVerdict:
    if probes == 0:
        return GeneralizedRegularVerdict(VerdictKind.UNKNOWN)
    used = 0
    for xp in probe_points(center, probes, radius, seed):
        try:
            jp = jacobian(p, xp)
        except (DomainError, NonFiniteInput) as e:
            logger.warning("probe %s skipped: %s", np.array2string(xp), e)
            continue
        used += 1
        if not _meets_trivially(jp, complement, tol):
            logger.debug("generalized regularity refuted at %s", xp)
            return GeneralizedRegularVerdict(VerdictKind.REFUTED, used, witness=xp)
    if used == 0:
        return GeneralizedRegularVerdict(VerdictKind.UNKNOWN)
    return GeneralizedRegularVerdict(VerdictKind.CONFIRMED, used)


@profiled("geometry.classify")
def classify(
    p: Problem,
    x: npt.ArrayLike,
    tol: Tolerances = DEFAULT_TOLERANCES,
    probes: int = DEFAULT_PROBES,
    radius: float = DEFAULT_RADIUS,
    *,
    seed: int = 0,
) -> RegularityReport:
    """
    Regularity of x: rank of g′(x), and sampled evidence for the
    generalized-regular condition R(g′(x′)) ∩ N₀⁺ = {0} near x, with N₀⁺
    the M-P complement of R(g′(x)).
    """
    if probes < 0:
        raise ValueError("probes must be >= 0")
    if not radius > 0:
        raise ValueError("radius must be > 0")
    pt = p.point(x)
    residual = p.constraint_residual(pt)
    jac = jacobian(p, pt)
    sub = fundamental_subspaces(jac, tol)

    verdict = _probe_verdict(p, pt, sub.range_complement, tol, probes, radius, seed)

    report = RegularityReport(
        point=pt,
        on_constraint=residual < tol.residual_abs,
        constraint_residual=residual,
        rank=sub.rank,
        regular=sub.rank == p.m,
        generalized_regular_verdict=verdict,
        tangent_basis=sub.null,
    )
    logger.info(
        "classify %s: rank=%d regular=%s verdict=%s",
        p.name or "problem",
        report.rank,
        report.regular,
        verdict.kind.value,
    )
    return report


def tangent_basis(
    p: Problem, x: npt.ArrayLike, tol: Tolerances = DEFAULT_TOLERANCES
) -> SubspaceBasis:
    """Orthonormal basis of T_xS = N(g′(x)); x must lie on S."""
    pt = p.point(x)
    residual = p.constraint_residual(pt)
    if not residual < tol.residual_abs:
        raise NotOnConstraint(residual)
    return fundamental_subspaces(jacobian(p, pt), tol).null
