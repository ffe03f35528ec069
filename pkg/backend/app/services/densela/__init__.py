"""
Dense linear-algebra kernels.

Public API: numerical_rank, fundamental_subspaces, mp_inverse, oblique_projector.
"""

from .inverse import (
    PenroseResiduals,
    is_generalized_inverse,
    mp_inverse,
    penrose_residuals,
)
from .projectors import oblique_projector
from .svd import fundamental_subspaces, numerical_rank, orthonormalize, same_subspace
from .types import (
    DEFAULT_TOLERANCES,
    FundamentalSubspaces,
    Mat,
    SubspaceBasis,
    Tolerances,
    Vec,
    as_mat,
    as_vec,
)

__all__ = [
    "DEFAULT_TOLERANCES",
    "FundamentalSubspaces",
    "Mat",
    "PenroseResiduals",
    "SubspaceBasis",
    "Tolerances",
    "Vec",
    "as_mat",
    "as_vec",
    "fundamental_subspaces",
    "is_generalized_inverse",
    "mp_inverse",
    "numerical_rank",
    "oblique_projector",
    "orthonormalize",
    "penrose_residuals",
    "same_subspace",
]
