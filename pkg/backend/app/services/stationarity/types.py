from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from app.services.densela import Mat, Vec


@dataclass(frozen=True, eq=False)
class StationarityCheck:
    """
    Raw residuals of the multiplier-free critical-point condition
    N(f′(x)) ⊇ N(g′(x)), g(x) = y₀, and the decision taken at `threshold`.
    """

    point: Vec
    constraint_residual: float  # ‖g(x) − y₀‖
    tangent_residual: float  # ‖f′(x)(I − g′⁺(x) g′(x))‖
    is_critical: bool
    threshold: float
    iterations: int = 0

    def __post_init__(self) -> None:
        decided = (
            self.constraint_residual < self.threshold
            and self.tangent_residual < self.threshold
        )
        if decided != self.is_critical:
            raise ValueError("is_critical disagrees with the recorded residuals")


class CertificateKind(str, enum.Enum):
    UNIQUE_REGULAR = "UniqueRegular"
    ILL_POSED = "IllPosed"


@dataclass(frozen=True, eq=False)
class MultiplierCertificate:
    kind: CertificateKind
    L: Vec  # coordinates of f′(x)∘g′⁺(x) on the codomain
    L1: Optional[Vec] = None
    witness: Optional[Vec] = None  # v with L(v) ≠ L1(v)
    gap: Optional[float] = None  # |L(v) − L1(v)|
    alt_inverse: Optional[Mat] = None  # the member B of GI(g′(x)) giving L1

    def __post_init__(self) -> None:
        if self.kind is CertificateKind.ILL_POSED:
            if self.L1 is None or self.witness is None or self.gap is None:
                raise ValueError("an ill-posed certificate needs L1, witness and gap")
        elif self.L1 is not None:
            raise ValueError("a unique multiplier carries no second functional")

    @property
    def values_at_witness(self) -> Optional[tuple[float, float]]:
        if self.L1 is None or self.witness is None:
            return None
        return float(self.L @ self.witness), float(self.L1 @ self.witness)


@dataclass(frozen=True, eq=False)
class OrthogonalWitness:
    e_star: Vec  # unit vector ⊥ N(g′(x)) and ⊥ N(f′(x))
    tangent_overlap: float  # max |⟨e*, v⟩| over the tangent basis
    gradient_null_overlap: float  # max |⟨e*, v⟩| over a basis of N(f′(x))
