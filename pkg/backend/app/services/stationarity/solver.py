from __future__ import annotations

"""
Damped Newton (Levenberg) search for critical points of f|_S.

Residual: r(x) = [g(x) − y₀ ; Bᵀ∇f(x)], B the tangent basis at the current
iterate. The tangent rows are linearized with the Lagrangian Hessian
∇²f − Σ Lᵢ∇²gᵢ, L = f′g′⁺, which carries the motion of B along S. Merit
‖g − y₀‖² + ‖Bᵀ∇f‖² equals constraint_residual² + tangent_residual² of
`check`, so only steps that reduce it are accepted.
"""
import functools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np
import numpy.typing as npt

from app.core.errors import DomainError, GencritError, MaxIterExceeded, NonFiniteInput, SingularStep
from app.services.densela import (
    DEFAULT_TOLERANCES,
    Mat,
    Tolerances,
    Vec,
    fundamental_subspaces,
    mp_inverse,
)
from app.services.exprdsl import grad
from app.services.geometry import Problem, jacobian
from app.utils.profiling import profiled

from .checks import check
from .types import StationarityCheck

logger = logging.getLogger(__name__)

LAMBDA_START = 1e-3
LAMBDA_MIN = 1e-12
LAMBDA_MAX = 1e12
POLISH_FACTOR = 1e-3  # keep iterating until residuals drop this far below residual_abs
HESSIAN_STEP = 1e-5


def _merit(chk: StationarityCheck) -> float:
    return chk.constraint_residual**2 + chk.tangent_residual**2


def _hessian(gradient: Callable[[Vec], Vec], x: Vec) -> Mat:
    """
    Differences of an exact gradient, symmetrized. Central where both
    neighbours are in the domain, one-sided next to a domain boundary.
    """
    n = x.shape[0]
    h = np.zeros((n, n))
    g0: Optional[Vec] = None
    for i in range(n):
        step = HESSIAN_STEP * max(1.0, abs(float(x[i])))
        e = np.zeros(n)
        e[i] = step
        try:
            plus: Optional[Vec] = gradient(x + e)
        except DomainError:
            plus = None
        try:
            minus: Optional[Vec] = gradient(x - e)
        except DomainError:
            minus = None
        if plus is not None and minus is not None:
            h[:, i] = (plus - minus) / (2 * step)
            continue
        if plus is None and minus is None:
            raise DomainError(f"no differentiable neighbour of x along x{i + 1}")
        if g0 is None:
            g0 = gradient(x)
        h[:, i] = (plus - g0) / step if plus is not None else (g0 - minus) / step
    return 0.5 * (h + h.T)


def _objective_hessian(p: Problem, x: Vec) -> Mat:
    return _hessian(p.objective_gradient, x)


def _lagrangian_hessian(p: Problem, x: Vec, jac: Mat, tol: Tolerances) -> Mat:
    """∇²f − Σ Lᵢ∇²gᵢ with the Moore–Penrose multiplier L = f′g′⁺."""
    L = p.objective_gradient(x) @ mp_inverse(jac, tol)
    w = _objective_hessian(p, x)
    for li, gi in zip(L, p.g):
        if li != 0.0:
            w = w - li * _hessian(functools.partial(grad, gi), x)
    return w


def _step(p: Problem, x: Vec, lam: float, tol: Tolerances) -> Vec:
    jac = jacobian(p, x)
    basis = fundamental_subspaces(jac, tol).null.vectors
    r = np.concatenate([p.constraint_value(x) - p.y0, basis.T @ p.objective_gradient(x)])
    jr = np.vstack([jac, basis.T @ _lagrangian_hessian(p, x, jac, tol)])
    if not (np.all(np.isfinite(r)) and np.all(np.isfinite(jr))):
        raise SingularStep("non-finite residual or Jacobian in step system")
    lhs = jr.T @ jr + lam * np.eye(p.n)
    try:
        return np.linalg.solve(lhs, -(jr.T @ r))
    except np.linalg.LinAlgError as e:
        raise SingularStep(f"step system unsolvable at lambda={lam:g}: {e}") from e


def _polished(chk: StationarityCheck, tol: Tolerances) -> bool:
    limit = POLISH_FACTOR * tol.residual_abs
    return chk.constraint_residual <= limit and chk.tangent_residual <= limit


@profiled("stationarity.solve")
def solve(
    p: Problem,
    x_init: npt.ArrayLike,
    tol: Tolerances = DEFAULT_TOLERANCES,
    max_iter: int = 100,
) -> StationarityCheck:
    """
    Critical point of f|_S from x_init. Returns a passing check; raises
    MaxIterExceeded (carrying the last iterate) when none is reached.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    chk = check(p, x_init, tol)
    lam = LAMBDA_START
    it = 0
    while it < max_iter and not _polished(chk, tol):
        it += 1
        try:
            delta = _step(p, chk.point, lam, tol)
            trial: Optional[StationarityCheck] = check(p, chk.point + delta, tol)
        except (DomainError, NonFiniteInput) as e:
            logger.debug("iter %d: trial rejected (%s)", it, e)
            trial = None
        if trial is not None and _merit(trial) < _merit(chk):
            chk = trial
            lam = max(lam / 10.0, LAMBDA_MIN)
            logger.debug(
                "iter %d: accepted, c=%.3e t=%.3e lambda=%.1e",
                it,
                chk.constraint_residual,
                chk.tangent_residual,
                lam,
            )
            continue
        lam *= 10.0
        if lam > LAMBDA_MAX:
            logger.debug("iter %d: stalled (lambda=%.1e)", it, lam)
            break

    chk = replace(chk, iterations=it)
    if not chk.is_critical:
        raise MaxIterExceeded(chk, it)
    logger.info("solve %s: critical after %d iterations", p.name or "problem", it)
    return chk


@dataclass(frozen=True, eq=False)
class SolveOutcome:
    start: Vec
    check: Optional[StationarityCheck]
    error: Optional[GencritError] = None


def solve_many(
    p: Problem,
    starts: Sequence[npt.ArrayLike],
    tol: Tolerances = DEFAULT_TOLERANCES,
    max_iter: int = 100,
    *,
    workers: Optional[int] = None,
) -> list[SolveOutcome]:
    """Solve from several starts; outcomes keep the order of `starts`."""

    def _one(x0: npt.ArrayLike) -> SolveOutcome:
        start = p.point(x0)
        try:
            return SolveOutcome(start, solve(p, start, tol, max_iter))
        except GencritError as e:
            return SolveOutcome(start, getattr(e, "last", None), e)

    if workers is None or workers <= 1:
        return [_one(s) for s in starts]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_one, starts))
