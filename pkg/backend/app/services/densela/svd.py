from __future__ import annotations

"""SVD-backed kernels: numerical rank, fundamental subspaces, orthonormal bases."""
import numpy as np
import numpy.typing as npt

from app.utils.profiling import profiled

from .types import (
    DEFAULT_TOLERANCES,
    FundamentalSubspaces,
    Mat,
    SubspaceBasis,
    Tolerances,
    as_mat,
)


def _rank_from_singular(s: np.ndarray, tol: Tolerances) -> int:
    if s.size == 0:
        return 0
    smax = float(s[0])
    if smax == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rel * smax))


def canonical_signs(v: Mat) -> Mat:
    """Flip each column so its largest-magnitude entry is positive."""
    out = np.array(v, dtype=np.float64, copy=True)
    if out.size == 0:
        return out
    idx = np.argmax(np.abs(out), axis=0)
    signs = np.sign(out[idx, np.arange(out.shape[1])])
    signs[signs == 0] = 1.0
    return out * signs


def _basis(vectors: Mat, tol: Tolerances) -> SubspaceBasis:
    b = SubspaceBasis(vectors.shape[0], canonical_signs(vectors))
    err = b.orthonormality_error()
    if err > tol.ortho:
        raise ValueError(f"basis not orthonormal to {tol.ortho:g} (error {err:.3e})")
    return b


def numerical_rank(A: npt.ArrayLike, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """Count of singular values above rank_rel·σ_max; 0 for the zero matrix."""
    a = as_mat(A)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return _rank_from_singular(s, tol)


@profiled("densela.fundamental_subspaces")
def fundamental_subspaces(
    A: npt.ArrayLike, tol: Tolerances = DEFAULT_TOLERANCES
) -> FundamentalSubspaces:
    """
    Orthonormal bases of N(A), R(A) and the M-P complements R₀⁺ = N(A)^⊥
    (row space) and N₀⁺ = R(A)^⊥, from one full SVD.
    """
    a = as_mat(A)
    m, n = a.shape
    u, s, vt = np.linalg.svd(a, full_matrices=True)
    r = _rank_from_singular(s, tol)
    return FundamentalSubspaces(
        null=_basis(vt[r:].T, tol),
        range=_basis(u[:, :r], tol),
        null_complement=_basis(vt[:r].T, tol),
        range_complement=_basis(u[:, r:], tol),
        rank=r,
    )


def orthonormalize(
    columns: npt.ArrayLike,
    tol: Tolerances = DEFAULT_TOLERANCES,
    *,
    ambient_dim: int | None = None,
) -> SubspaceBasis:
    """Orthonormal basis of the column span (rank decided like numerical_rank)."""
    c = np.asarray(columns, dtype=np.float64)
    if c.ndim == 1:
        c = c.reshape(-1, 1)
    dim = c.shape[0] if ambient_dim is None else ambient_dim
    if c.shape[1] == 0:
        return SubspaceBasis.empty(dim)
    u, s, _ = np.linalg.svd(c, full_matrices=False)
    r = _rank_from_singular(s, tol)
    return _basis(u[:, :r], tol)


def same_subspace(a: SubspaceBasis, b: SubspaceBasis, atol: float) -> bool:
    """Spans agree when their orthogonal projectors differ by ≤ atol (Frobenius)."""
    if a.ambient_dim != b.ambient_dim or a.dim != b.dim:
        return False
    return bool(np.linalg.norm(a.projector() - b.projector()) <= atol)
