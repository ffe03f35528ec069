from __future__ import annotations

"""Forward-mode dual numbers carrying a full gradient (n partials at once)."""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class DualVec:
    value: float
    partials: np.ndarray

    @classmethod
    def constant(cls, value: float, n: int) -> "DualVec":
        return cls(float(value), np.zeros(n))

    @classmethod
    def variable(cls, value: float, index: int, n: int) -> "DualVec":
        """Seed for x_{index+1} (0-based index)."""
        d = np.zeros(n)
        d[index] = 1.0
        return cls(float(value), d)

    def __add__(self, other: "DualVec") -> "DualVec":
        return DualVec(self.value + other.value, self.partials + other.partials)

    def __sub__(self, other: "DualVec") -> "DualVec":
        return DualVec(self.value - other.value, self.partials - other.partials)

    def __mul__(self, other: "DualVec") -> "DualVec":
        return DualVec(
            self.value * other.value,
            self.value * other.partials + other.value * self.partials,
        )

    def __truediv__(self, other: "DualVec") -> "DualVec":
        q = self.value / other.value
        return DualVec(q, (self.partials - q * other.partials) / other.value)

    def __neg__(self) -> "DualVec":
        return DualVec(-self.value, -self.partials)

    def __pow__(self, c: float) -> "DualVec":
        # constant exponent only
        if c == 0.0:
            return DualVec(1.0, np.zeros_like(self.partials))
        v = float(np.power(self.value, c))
        dv = c * float(np.power(self.value, c - 1.0))
        return DualVec(v, dv * self.partials)

    def sin(self) -> "DualVec":
        return DualVec(float(np.sin(self.value)), float(np.cos(self.value)) * self.partials)

    def cos(self) -> "DualVec":
        return DualVec(
            float(np.cos(self.value)), -float(np.sin(self.value)) * self.partials
        )

    def exp(self) -> "DualVec":
        e = float(np.exp(self.value))
        return DualVec(e, e * self.partials)

    def sqrt(self) -> "DualVec":
        r = float(np.sqrt(self.value))
        return DualVec(r, self.partials / (2.0 * r))

    def log(self) -> "DualVec":
        return DualVec(float(np.log(self.value)), self.partials / self.value)
