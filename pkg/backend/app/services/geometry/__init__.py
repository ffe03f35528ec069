"""
Constraint geometry.

Public API: Problem, jacobian, classify, tangent_basis.
"""

from .problem import Problem
from .regularity import (
    DEFAULT_PROBES,
    DEFAULT_RADIUS,
    GeneralizedRegularVerdict,
    RegularityReport,
    VerdictKind,
    classify,
    jacobian,
    probe_points,
    tangent_basis,
)

__all__ = [
    "DEFAULT_PROBES",
    "DEFAULT_RADIUS",
    "GeneralizedRegularVerdict",
    "Problem",
    "RegularityReport",
    "VerdictKind",
    "classify",
    "jacobian",
    "probe_points",
    "tangent_basis",
]
