from __future__ import annotations

"""
Evaluation (plain floats) and exact first derivatives (forward-mode duals).

Both walk the same tree through an arithmetic backend; domain checks live in
the backends so eval and grad reject the same inputs.
"""
import math
from typing import Protocol, TypeVar

import numpy as np
import numpy.typing as npt

from app.core.errors import DomainError

from .dual import DualVec
from .nodes import BinOp, Call, Expr, Neg, Num, Pi, Var

T = TypeVar("T")


class _Backend(Protocol[T]):
    def const(self, v: float) -> T: ...
    def var(self, i: int) -> T: ...
    def value(self, a: T) -> float: ...
    def add(self, a: T, b: T) -> T: ...
    def sub(self, a: T, b: T) -> T: ...
    def mul(self, a: T, b: T) -> T: ...
    def div(self, a: T, b: T) -> T: ...
    def neg(self, a: T) -> T: ...
    def pow(self, a: T, c: float) -> T: ...
    def call(self, fn: str, a: T) -> T: ...


def _check_pow(base: float, c: float, *, derivative: bool) -> None:
    integral = float(c).is_integer()
    if not integral and base < 0:
        raise DomainError(f"non-integer power {c} of negative base {base}")
    if base == 0.0 and c < 0:
        raise DomainError(f"negative power {c} of zero")
    if derivative and base == 0.0 and 0 < c < 1:
        raise DomainError(f"power {c} not differentiable at zero")


class _RealBackend:
    def __init__(self, x: np.ndarray) -> None:
        self.x = x

    def const(self, v: float) -> float:
        return float(v)

    def var(self, i: int) -> float:
        return float(self.x[i - 1])

    def value(self, a: float) -> float:
        return a

    def add(self, a: float, b: float) -> float:
        return a + b

    def sub(self, a: float, b: float) -> float:
        return a - b

    def mul(self, a: float, b: float) -> float:
        return a * b

    def div(self, a: float, b: float) -> float:
        if b == 0.0:
            raise DomainError("division by zero")
        return a / b

    def neg(self, a: float) -> float:
        return -a

    def pow(self, a: float, c: float) -> float:
        _check_pow(a, c, derivative=False)
        return float(np.power(a, c))

    def call(self, fn: str, a: float) -> float:
        if fn == "sqrt" and a < 0:
            raise DomainError(f"sqrt of negative value {a}")
        if fn == "log" and a <= 0:
            raise DomainError(f"log of non-positive value {a}")
        return float(getattr(np, fn)(a))


class _DualBackend:
    def __init__(self, x: np.ndarray) -> None:
        self.x = x
        self.n = x.shape[0]

    def const(self, v: float) -> DualVec:
        return DualVec.constant(v, self.n)

    def var(self, i: int) -> DualVec:
        return DualVec.variable(float(self.x[i - 1]), i - 1, self.n)

    def value(self, a: DualVec) -> float:
        return a.value

    def add(self, a: DualVec, b: DualVec) -> DualVec:
        return a + b

    def sub(self, a: DualVec, b: DualVec) -> DualVec:
        return a - b

    def mul(self, a: DualVec, b: DualVec) -> DualVec:
        return a * b

    def div(self, a: DualVec, b: DualVec) -> DualVec:
        if b.value == 0.0:
            raise DomainError("division by zero")
        return a / b

    def neg(self, a: DualVec) -> DualVec:
        return -a

    def pow(self, a: DualVec, c: float) -> DualVec:
        _check_pow(a.value, c, derivative=True)
        return a**c

    def call(self, fn: str, a: DualVec) -> DualVec:
        if fn == "sqrt" and a.value <= 0:
            raise DomainError(f"sqrt not differentiable at {a.value}")
        if fn == "log" and a.value <= 0:
            raise DomainError(f"log of non-positive value {a.value}")
        return getattr(a, fn)()


def _walk(e: Expr, be: _Backend[T]) -> T:
    if isinstance(e, Num):
        return be.const(e.value)
    if isinstance(e, Pi):
        return be.const(math.pi)
    if isinstance(e, Var):
        return be.var(e.index)
    if isinstance(e, Neg):
        return be.neg(_walk(e.operand, be))
    if isinstance(e, BinOp):
        if e.op == "^":
            # exponent is constant: evaluate it on plain floats
            c = _walk(e.right, _RealBackend(np.zeros(0)))
            return be.pow(_walk(e.left, be), c)
        a = _walk(e.left, be)
        b = _walk(e.right, be)
        if e.op == "+":
            return be.add(a, b)
        if e.op == "-":
            return be.sub(a, b)
        if e.op == "*":
            return be.mul(a, b)
        return be.div(a, b)
    return be.call(e.fn, _walk(e.arg, be))


def _point(x: npt.ArrayLike) -> np.ndarray:
    return np.asarray(x, dtype=np.float64).reshape(-1)


def evaluate(e: Expr, x: npt.ArrayLike) -> float:
    """IEEE evaluation at x; overflow yields inf/nan rather than raising."""
    with np.errstate(over="ignore", invalid="ignore"):
        return _walk(e, _RealBackend(_point(x)))


def value_and_grad(e: Expr, x: npt.ArrayLike) -> tuple[float, np.ndarray]:
    p = _point(x)
    with np.errstate(over="ignore", invalid="ignore"):
        d = _walk(e, _DualBackend(p))
    return d.value, np.array(d.partials, dtype=np.float64)


def grad(e: Expr, x: npt.ArrayLike) -> np.ndarray:
    """Exact gradient at x by one forward-mode sweep."""
    return value_and_grad(e, x)[1]
