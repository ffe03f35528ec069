from __future__ import annotations

"""Value types shared by every numerical module: matrices, bases, tolerances."""
from dataclasses import dataclass
from typing import NamedTuple, TypeAlias

import numpy as np
import numpy.typing as npt

from app.core.errors import NonFiniteInput

Mat: TypeAlias = npt.NDArray[np.float64]
Vec: TypeAlias = npt.NDArray[np.float64]


@dataclass(frozen=True)
class Tolerances:
    """Decision thresholds; every one must be strictly positive."""

    rank_rel: float = 1e-10  # relative singular-value cutoff
    residual_abs: float = 1e-8  # absolute residual cutoff
    ortho: float = 1e-12  # orthonormality cutoff

    def __post_init__(self) -> None:
        for name in ("rank_rel", "residual_abs", "ortho"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"Tolerances.{name} must be > 0, got {v!r}")

    def with_overrides(self, **kw: float | None) -> "Tolerances":
        vals = {k: v for k, v in kw.items() if v is not None}
        return Tolerances(
            rank_rel=vals.get("rank_rel", self.rank_rel),
            residual_abs=vals.get("residual_abs", self.residual_abs),
            ortho=vals.get("ortho", self.ortho),
        )


DEFAULT_TOLERANCES = Tolerances()


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def as_mat(a: npt.ArrayLike, *, name: str = "matrix") -> Mat:
    """Validated read-only float64 2-D copy."""
    arr = np.array(a, dtype=np.float64, copy=True)
    if arr.ndim != 2:
        raise ValueError(f"{name}: expected 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput(f"{name}: contains non-finite entries")
    return _frozen(arr)


def as_vec(v: npt.ArrayLike, *, name: str = "vector", dim: int | None = None) -> Vec:
    arr = np.array(v, dtype=np.float64, copy=True).reshape(-1)
    if dim is not None and arr.shape[0] != dim:
        raise ValueError(f"{name}: expected length {dim}, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInput(f"{name}: contains non-finite entries")
    return _frozen(arr)


@dataclass(frozen=True, eq=False)
class SubspaceBasis:
    """Orthonormal columns (ambient_dim × dim) spanning a subspace."""

    ambient_dim: int
    vectors: Mat

    def __post_init__(self) -> None:
        v = np.asarray(self.vectors, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] != self.ambient_dim:
            raise ValueError(
                f"basis shape {v.shape} does not match ambient_dim={self.ambient_dim}"
            )
        if v.shape[1] > self.ambient_dim:
            raise ValueError("more basis vectors than ambient dimension")
        if v.base is not None or v.flags.writeable:
            v = _frozen(v.copy())
        object.__setattr__(self, "vectors", v)

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def orthonormality_error(self) -> float:
        v = self.vectors
        if v.shape[1] == 0:
            return 0.0
        return float(np.max(np.abs(v.T @ v - np.eye(v.shape[1]))))

    def projector(self) -> Mat:
        """Orthogonal projector onto the span."""
        return self.vectors @ self.vectors.T

    def coordinates(self, x: npt.ArrayLike) -> Vec:
        return self.vectors.T @ np.asarray(x, dtype=np.float64)

    @classmethod
    def empty(cls, ambient_dim: int) -> "SubspaceBasis":
        return cls(ambient_dim, np.zeros((ambient_dim, 0)))


class FundamentalSubspaces(NamedTuple):
    """N(A), R(A) and their M-P complements R₀⁺ = N(A)^⊥, N₀⁺ = R(A)^⊥."""

    null: SubspaceBasis
    range: SubspaceBasis
    null_complement: SubspaceBasis
    range_complement: SubspaceBasis
    rank: int
