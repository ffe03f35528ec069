"""
GI(A): the generalized inverses of A as a parametrized family.

Public API: build, recover_chart, dM, d2M, third_derivative_is_zero.
"""

from .chart import (
    GenInverse,
    GenInverseChart,
    build,
    build_matrix,
    from_subspaces,
    origin_chart,
    recover_chart,
    with_coordinates,
    with_increment,
)
from .derivatives import d2M, dM, third_derivative_is_zero, third_difference
from .sampling import random_chart, random_matrix_of_rank

__all__ = [
    "GenInverse",
    "GenInverseChart",
    "build",
    "build_matrix",
    "d2M",
    "dM",
    "from_subspaces",
    "origin_chart",
    "random_chart",
    "random_matrix_of_rank",
    "recover_chart",
    "third_derivative_is_zero",
    "third_difference",
    "with_coordinates",
    "with_increment",
]
