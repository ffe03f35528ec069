from __future__ import annotations

"""Moore–Penrose inverse and the Penrose residuals used as membership tests."""
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from app.utils.profiling import profiled

from .svd import _rank_from_singular
from .types import DEFAULT_TOLERANCES, Mat, Tolerances, as_mat


class PenroseResiduals(NamedTuple):
    aba: float  # ‖ABA − A‖
    bab: float  # ‖BAB − B‖
    ab_sym: float  # ‖(AB)ᵀ − AB‖
    ba_sym: float  # ‖(BA)ᵀ − BA‖


@profiled("densela.mp_inverse")
def mp_inverse(A: npt.ArrayLike, tol: Tolerances = DEFAULT_TOLERANCES) -> Mat:
    """A⁺ from the thin SVD, truncated at the numerical rank (A = 0 → 0)."""
    a = as_mat(A)
    m, n = a.shape
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    r = _rank_from_singular(s, tol)
    if r == 0:
        return np.zeros((n, m))
    return (vt[:r].T / s[:r]) @ u[:, :r].T


def penrose_residuals(A: npt.ArrayLike, B: npt.ArrayLike) -> PenroseResiduals:
    a = np.asarray(A, dtype=np.float64)
    b = np.asarray(B, dtype=np.float64)
    if b.shape != (a.shape[1], a.shape[0]):
        raise ValueError(f"shape mismatch: A {a.shape}, B {b.shape}")
    ab = a @ b
    ba = b @ a
    return PenroseResiduals(
        aba=float(np.linalg.norm(ab @ a - a)),
        bab=float(np.linalg.norm(ba @ b - b)),
        ab_sym=float(np.linalg.norm(ab.T - ab)),
        ba_sym=float(np.linalg.norm(ba.T - ba)),
    )


def is_generalized_inverse(
    A: npt.ArrayLike, B: npt.ArrayLike, tol: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """Penrose conditions 1 and 2 (ABA = A, BAB = B) to residual_abs."""
    r = penrose_residuals(A, B)
    return r.aba < tol.residual_abs and r.bab < tol.residual_abs
