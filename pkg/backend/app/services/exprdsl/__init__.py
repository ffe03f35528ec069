"""
Expression language for objective and constraint components.

Public API: parse, evaluate, grad, to_source.
"""

from .dual import DualVec
from .evaluate import evaluate, grad, value_and_grad
from .nodes import Expr, to_source, variables
from .parser import parse

__all__ = [
    "DualVec",
    "Expr",
    "evaluate",
    "grad",
    "parse",
    "to_source",
    "value_and_grad",
    "variables",
]
