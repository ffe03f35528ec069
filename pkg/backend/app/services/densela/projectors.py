from __future__ import annotations

import numpy as np

from app.core.errors import DegenerateSplit

from .svd import numerical_rank
from .types import DEFAULT_TOLERANCES, Mat, SubspaceBasis, Tolerances


def oblique_projector(
    onto: SubspaceBasis,
    along: SubspaceBasis,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Mat:
    """
    P_onto^along: the idempotent fixing `onto` and annihilating `along`.

    Requires onto ⊕ along = ambient space; with M = [U | V] invertible,
    P = U · (M⁻¹)[:k, :].
    """
    if onto.ambient_dim != along.ambient_dim:
        raise DegenerateSplit(
            f"ambient dimensions differ: {onto.ambient_dim} vs {along.ambient_dim}"
        )
    n = onto.ambient_dim
    k = onto.dim
    if k + along.dim != n:
        raise DegenerateSplit(
            f"dim {k} + dim {along.dim} != ambient dim {n}: not a direct sum"
        )
    if k == 0:
        return np.zeros((n, n))
    if along.dim == 0:
        return np.eye(n)
    m = np.hstack([onto.vectors, along.vectors])
    if numerical_rank(m, tol) < n:
        raise DegenerateSplit("subspaces overlap: combined basis is singular")
    return onto.vectors @ np.linalg.inv(m)[:k, :]
