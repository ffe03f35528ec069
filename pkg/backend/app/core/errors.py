"""
Exception tree.

Every error a command can surface derives from GencritError and carries the
process exit code of its family: 2 input, 3 numeric domain, 4 non-convergence.
"""
from __future__ import annotations

from typing import TYPE_CHECKING, Iterable, Optional

if TYPE_CHECKING:
    from app.services.stationarity.types import StationarityCheck


class GencritError(Exception):
    exit_code: int = 3

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.message = message


# ---------- input (exit 2) ----------


class InputError(GencritError):
    exit_code = 2


class ExprSyntaxError(InputError):
    """Malformed expression; `offset` is the byte offset of the offending token."""

    def __init__(self, offset: int, expected: Iterable[str], found: str) -> None:
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        self.found = found
        super().__init__(
            f"offset {offset}: expected {' | '.join(self.expected)}, found {found}"
        )


class UnknownIdentifier(InputError):
    def __init__(self, name: str, offset: int) -> None:
        self.name = name
        self.offset = offset
        super().__init__(f"offset {offset}: unknown identifier {name!r}")


class VariableOutOfRange(InputError):
    def __init__(self, index: int, n: int, offset: int) -> None:
        self.index = index
        self.n = n
        self.offset = offset
        super().__init__(
            f"offset {offset}: variable x{index} outside x1..x{n}"
        )


class ProblemFileError(InputError):
    def __init__(self, message: str, offset: Optional[int] = None) -> None:
        self.offset = offset
        where = f" (offset {offset})" if offset is not None else ""
        super().__init__(f"{message}{where}")


class InvalidOption(InputError):
    """A command-line value that cannot be used (malformed point, bad tolerance)."""


# ---------- numeric (exit 3) ----------


class NumericError(GencritError):
    exit_code = 3


class NonFiniteInput(NumericError):
    pass


class DomainError(NumericError):
    pass


class DegenerateSplit(NumericError):
    pass


class NotAGeneralizedInverse(NumericError):
    def __init__(self, residual_1: float, residual_2: float) -> None:
        self.residual_1 = residual_1
        self.residual_2 = residual_2
        super().__init__(
            f"not a generalized inverse: |ABA-A|={residual_1:.3e}, "
            f"|BAB-B|={residual_2:.3e}"
        )


class NotOnConstraint(NumericError):
    def __init__(self, residual: float) -> None:
        self.residual = residual
        super().__init__(f"point is off the constraint: |g(x)-y0|={residual:.3e}")


class NotCritical(NumericError):
    def __init__(self, constraint_residual: float, tangent_residual: float) -> None:
        self.constraint_residual = constraint_residual
        self.tangent_residual = tangent_residual
        super().__init__(
            "point is not critical: "
            f"constraint={constraint_residual:.3e}, tangent={tangent_residual:.3e}"
        )


class ZeroGradient(NumericError):
    pass


class SingularStep(NumericError):
    pass


class InvalidDirection(NumericError):
    pass


# ---------- convergence (exit 4) ----------


class ConvergenceError(GencritError):
    exit_code = 4


class MaxIterExceeded(ConvergenceError):
    def __init__(self, last: "StationarityCheck", iterations: int) -> None:
        self.last = last
        self.iterations = iterations
        super().__init__(
            f"no critical point after {iterations} iterations "
            f"(constraint={last.constraint_residual:.3e}, "
            f"tangent={last.tangent_residual:.3e})"
        )
