from __future__ import annotations

"""
Lagrange multipliers through generalized inverses.

L = f′(x)∘B solves the Euler equation f′(x) = L∘g′(x) for every B in
GI(g′(x)) at a critical point. When g′(x) is onto, all such L coincide;
otherwise two members of GI(g′(x)) give two different multipliers.
"""
import logging

import numpy as np
import numpy.typing as npt

from app.core.errors import InvalidDirection, NotAGeneralizedInverse, NotCritical, ZeroGradient
from app.services.densela import (
    DEFAULT_TOLERANCES,
    Mat,
    SubspaceBasis,
    Tolerances,
    Vec,
    penrose_residuals,
)
from app.services.geometry import Problem, jacobian
from app.services.gifamily import build, origin_chart, with_coordinates
from app.utils.profiling import profiled

from .checks import _is_zero_gradient, check
from .types import CertificateKind, MultiplierCertificate

logger = logging.getLogger(__name__)


def multiplier(
    p: Problem,
    x: npt.ArrayLike,
    ginv: npt.ArrayLike,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Vec:
    """Coordinates of L = f′(x)∘ginv; ginv must satisfy Penrose 1 and 2."""
    pt = p.point(x)
    jac = jacobian(p, pt)
    b = np.asarray(ginv, dtype=np.float64)
    r = penrose_residuals(jac, b)
    if r.aba >= tol.residual_abs or r.bab >= tol.residual_abs:
        raise NotAGeneralizedInverse(r.aba, r.bab)
    return p.objective_gradient(pt) @ b


def _distance_to(basis: SubspaceBasis, v: Vec) -> float:
    return float(np.linalg.norm(v - basis.projector() @ v))


@profiled("stationarity.ill_posed_pair")
def ill_posed_pair(
    p: Problem,
    x: npt.ArrayLike,
    y_plus: npt.ArrayLike,
    y_image: npt.ArrayLike,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> MultiplierCertificate:
    """
    Two multipliers from two generalized inverses of g′(x).

    y_plus ∈ N₀⁺ (nonzero) and y_image ∈ R(g′(x)). β maps y_plus to y_image
    and vanishes on the complement of [y_plus] in N₀⁺; B = M(0, β). Then
    y_plus + y_image ∈ N(B), so L₁ = f′(x)∘B vanishes on the witness while
    L = f′(x)∘g′⁺(x) need not.
    """
    pt = p.point(x)
    jac = jacobian(p, pt)
    origin = origin_chart(jac, tol)
    sub = origin.subspaces
    if sub.range_complement.dim == 0:
        raise InvalidDirection("g'(x) is onto: N0+ is trivial and L is unique")

    yp = np.asarray(y_plus, dtype=np.float64).reshape(-1)
    yi = np.asarray(y_image, dtype=np.float64).reshape(-1)
    yp_norm = float(np.linalg.norm(yp))
    if yp_norm < tol.residual_abs:
        raise InvalidDirection("y_plus must be nonzero")
    if _distance_to(sub.range_complement, yp) >= tol.residual_abs * max(1.0, yp_norm):
        raise InvalidDirection("y_plus does not lie in N0+")
    if _distance_to(sub.range, yi) >= tol.residual_abs * max(
        1.0, float(np.linalg.norm(yi))
    ):
        raise InvalidDirection("y_image does not lie in R(g'(x))")

    beta = np.outer(sub.range.coordinates(yi), sub.range_complement.coordinates(yp))
    beta /= yp_norm**2
    chart = with_coordinates(origin, np.zeros_like(origin.alpha), beta)
    b = build(chart).B

    fp = p.objective_gradient(pt)
    L = fp @ origin.base_inverse
    L1 = fp @ b
    witness = yp + yi
    gap = abs(float(L @ witness) - float(L1 @ witness))
    if not gap > tol.residual_abs:
        raise InvalidDirection(
            f"chosen directions separate no multipliers (gap {gap:.3e})"
        )
    logger.info("ill-posed multiplier: L(v)=%.6g, L1(v)=%.6g", L @ witness, L1 @ witness)
    return MultiplierCertificate(
        kind=CertificateKind.ILL_POSED,
        L=L,
        L1=L1,
        witness=witness,
        gap=gap,
        alt_inverse=b,
    )


@profiled("stationarity.certify_multiplier")
def certify_multiplier(
    p: Problem, x: npt.ArrayLike, tol: Tolerances = DEFAULT_TOLERANCES
) -> MultiplierCertificate:
    """
    UniqueRegular with the M-P multiplier when g′(x) is onto; otherwise an
    IllPosed certificate with gap |f′(x)e₀| = 1, e₀ the least-norm solution
    of f′(x)e = 1 and y⁺ the first basis vector of N₀⁺.
    """
    chk = check(p, x, tol)
    if not chk.is_critical:
        raise NotCritical(chk.constraint_residual, chk.tangent_residual)
    pt = chk.point
    jac = jacobian(p, pt)
    origin = origin_chart(jac, tol)
    fp = p.objective_gradient(pt)

    if origin.subspaces.rank == p.m:
        return MultiplierCertificate(
            kind=CertificateKind.UNIQUE_REGULAR, L=fp @ origin.base_inverse
        )
    if _is_zero_gradient(fp, tol):
        raise ZeroGradient(
            "f'(x) = 0 at a non-regular point: every functional is a multiplier"
        )

    e0 = fp / float(fp @ fp)
    y_image: Mat = jac @ e0
    y_plus = origin.subspaces.range_complement.vectors[:, 0]
    return ill_posed_pair(p, pt, y_plus, y_image, tol)
