"""
Critical points of f restricted to S = g⁻¹(y₀).

Public API: check, multiplier, certify_multiplier, orthogonal_witness, solve.
"""

from .checks import check, orthogonal_witness, tangent_components, tangent_residual_with
from .multipliers import certify_multiplier, ill_posed_pair, multiplier
from .solver import SolveOutcome, solve, solve_many
from .types import (
    CertificateKind,
    MultiplierCertificate,
    OrthogonalWitness,
    StationarityCheck,
)

__all__ = [
    "CertificateKind",
    "MultiplierCertificate",
    "OrthogonalWitness",
    "SolveOutcome",
    "StationarityCheck",
    "certify_multiplier",
    "check",
    "ill_posed_pair",
    "multiplier",
    "orthogonal_witness",
    "solve",
    "solve_many",
    "tangent_components",
    "tangent_residual_with",
]
