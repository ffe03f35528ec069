from __future__ import annotations

"""
GI(A) as a global chart.

A point of the chart is a pair of coordinate matrices (α, β) relative to the
orthonormal bases of the M-P splitting of A:
    α : R₀⁺ → N(A)      shape dim N(A) × dim R₀⁺
    β : N₀⁺ → R(A)      shape dim R(A) × dim N₀⁺
and the member of GI(A) it names is
    M(α, β) = (I + α) A₀⁺ (I − β P),   P = P_{N₀⁺}^{R(A)}.
"""
import logging
from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np
import numpy.typing as npt

from app.core.errors import NotAGeneralizedInverse
from app.services.densela import (
    DEFAULT_TOLERANCES,
    FundamentalSubspaces,
    Mat,
    SubspaceBasis,
    Tolerances,
    as_mat,
    fundamental_subspaces,
    mp_inverse,
    oblique_projector,
    orthonormalize,
    penrose_residuals,
)
from app.utils.profiling import profiled

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GenInverseChart:
    A: Mat
    base_inverse: Mat  # A₀⁺, the chart origin
    subspaces: FundamentalSubspaces
    alpha: Mat
    beta: Mat
    tol: Tolerances = DEFAULT_TOLERANCES

    def __post_init__(self) -> None:
        s = self.subspaces
        want_a = (s.null.dim, s.null_complement.dim)
        want_b = (s.range.dim, s.range_complement.dim)
        if self.alpha.shape != want_a:
            raise ValueError(f"alpha shape {self.alpha.shape}, expected {want_a}")
        if self.beta.shape != want_b:
            raise ValueError(f"beta shape {self.beta.shape}, expected {want_b}")
        m, n = self.A.shape
        if self.base_inverse.shape != (n, m):
            raise ValueError("base inverse shape does not match A")

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape

    # ambient-space realizations of coordinate matrices

    def alpha_map(self, alpha: npt.ArrayLike | None = None) -> Mat:
        """α as an n×n operator: N · α · R₀⁺ᵀ (zero on N(A))."""
        a = self.alpha if alpha is None else np.asarray(alpha, dtype=np.float64)
        s = self.subspaces
        return s.null.vectors @ a @ s.null_complement.vectors.T

    def beta_map(self, beta: npt.ArrayLike | None = None) -> Mat:
        """β as an m×m operator: R · β · N₀⁺ᵀ (zero on R(A))."""
        b = self.beta if beta is None else np.asarray(beta, dtype=np.float64)
        s = self.subspaces
        return s.range.vectors @ b @ s.range_complement.vectors.T

    @cached_property
    def complement_projector(self) -> Mat:
        """P_{N₀⁺}^{R(A)}."""
        s = self.subspaces
        return oblique_projector(s.range_complement, s.range, self.tol)


@dataclass(frozen=True, eq=False)
class GenInverse:
    B: Mat
    range_basis: SubspaceBasis  # R(B) = {e + α(e) : e ∈ R₀⁺}
    null_basis: SubspaceBasis  # N(B) = {d + β(d) : d ∈ N₀⁺}


def origin_chart(A: npt.ArrayLike, tol: Tolerances = DEFAULT_TOLERANCES) -> GenInverseChart:
    """Chart at α = β = 0, i.e. at the Moore–Penrose inverse."""
    a = as_mat(A, name="A")
    sub = fundamental_subspaces(a, tol)
    a0 = mp_inverse(a, tol)
    r = penrose_residuals(a, a0)
    if r.aba >= tol.residual_abs or r.bab >= tol.residual_abs:
        raise NotAGeneralizedInverse(r.aba, r.bab)
    return GenInverseChart(
        A=a,
        base_inverse=a0,
        subspaces=sub,
        alpha=np.zeros((sub.null.dim, sub.null_complement.dim)),
        beta=np.zeros((sub.range.dim, sub.range_complement.dim)),
        tol=tol,
    )


def with_coordinates(
    chart: GenInverseChart, alpha: npt.ArrayLike, beta: npt.ArrayLike
) -> GenInverseChart:
    return replace(
        chart,
        alpha=np.array(alpha, dtype=np.float64),
        beta=np.array(beta, dtype=np.float64),
    )


def with_increment(
    chart: GenInverseChart, d_alpha: npt.ArrayLike, d_beta: npt.ArrayLike, h: float
) -> GenInverseChart:
    """Chart shifted to (α + h·Δα, β + h·Δβ)."""
    return with_coordinates(
        chart,
        chart.alpha + h * np.asarray(d_alpha, dtype=np.float64),
        chart.beta + h * np.asarray(d_beta, dtype=np.float64),
    )


def build_matrix(chart: GenInverseChart) -> Mat:
    """M(α, β) only, without the subspace bases."""
    m, n = chart.shape
    left = np.eye(n) + chart.alpha_map()
    right = np.eye(m) - chart.beta_map() @ chart.complement_projector
    return left @ chart.base_inverse @ right


@profiled("gifamily.build")
def build(chart: GenInverseChart) -> GenInverse:
    m, n = chart.shape
    s = chart.subspaces
    b = build_matrix(chart)
    rng = orthonormalize(
        s.null_complement.vectors + chart.alpha_map() @ s.null_complement.vectors,
        chart.tol,
        ambient_dim=n,
    )
    nul = orthonormalize(
        s.range_complement.vectors + chart.beta_map() @ s.range_complement.vectors,
        chart.tol,
        ambient_dim=m,
    )
    return GenInverse(B=b, range_basis=rng, null_basis=nul)


def _check_member(a: Mat, b: Mat, tol: Tolerances) -> None:
    if b.shape != (a.shape[1], a.shape[0]):
        raise ValueError(f"B shape {b.shape} incompatible with A shape {a.shape}")
    r = penrose_residuals(a, b)
    if r.aba >= tol.residual_abs or r.bab >= tol.residual_abs:
        raise NotAGeneralizedInverse(r.aba, r.bab)


@profiled("gifamily.recover_chart")
def recover_chart(
    A: npt.ArrayLike, B: npt.ArrayLike, tol: Tolerances = DEFAULT_TOLERANCES
) -> GenInverseChart:
    """
    Inverse of build: coordinates (α, β) of a member B of GI(A).

        α = P_{N(A)}^{R₀⁺} P_{R(B)}^{N(A)}  on R₀⁺
        β = P_{R(A)}^{N₀⁺} P_{N(B)}^{R(A)}  on N₀⁺
    """
    a = as_mat(A, name="A")
    b = as_mat(B, name="B")
    _check_member(a, b, tol)

    origin = origin_chart(a, tol)
    s = origin.subspaces
    sb = fundamental_subspaces(b, tol)
    if sb.rank != s.rank:
        logger.warning("rank(B)=%d differs from rank(A)=%d", sb.rank, s.rank)

    p_null = oblique_projector(s.null, s.null_complement, tol)
    p_rb = oblique_projector(sb.range, s.null, tol)
    alpha = s.null.vectors.T @ p_null @ p_rb @ s.null_complement.vectors

    p_range = oblique_projector(s.range, s.range_complement, tol)
    p_nb = oblique_projector(sb.null, s.range, tol)
    beta = s.range.vectors.T @ p_range @ p_nb @ s.range_complement.vectors

    return with_coordinates(origin, alpha, beta)


def from_subspaces(
    chart: GenInverseChart, range_basis: SubspaceBasis, null_basis: SubspaceBasis
) -> Mat:
    """
    The member of GI(A) with prescribed R(B) = T and N(B) = S, computed
    without chart coordinates: B = P_T^{N(A)} A₀⁺ P_{R(A)}^{S}.
    """
    s = chart.subspaces
    p_t = oblique_projector(range_basis, s.null, chart.tol)
    p_r = oblique_projector(s.range, null_basis, chart.tol)
    return p_t @ chart.base_inverse @ p_r
