from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt

from app.services.densela import Vec, as_vec
from app.services.exprdsl import Expr, evaluate, grad, parse, variables
from app.services.exprdsl.nodes import BinOp, Num


@dataclass(frozen=True, eq=False)
class Problem:
    """Critical points of f restricted to S = g⁻¹(y₀), g: ℝⁿ → ℝᵐ."""

    n: int
    m: int
    g: tuple[Expr, ...]
    y0: Vec
    f: Expr
    name: str = ""

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise ValueError(f"dimensions must be positive (n={self.n}, m={self.m})")
        if len(self.g) != self.m:
            raise ValueError(f"expected {self.m} constraint components, got {len(self.g)}")
        object.__setattr__(self, "y0", as_vec(self.y0, name="y0", dim=self.m))
        for e in (self.f, *self.g):
            bad = [i for i in variables(e) if not 1 <= i <= self.n]
            if bad:
                raise ValueError(f"variables {bad} outside x1..x{self.n}")

    @classmethod
    def from_sources(
        cls,
        *,
        n: int,
        f: str,
        g: Sequence[str],
        y0: npt.ArrayLike,
        name: str = "",
    ) -> "Problem":
        return cls(
            n=n,
            m=len(g),
            g=tuple(parse(src, n) for src in g),
            y0=np.asarray(y0, dtype=np.float64),
            f=parse(f, n),
            name=name,
        )

    def point(self, x: npt.ArrayLike) -> Vec:
        return as_vec(x, name="x", dim=self.n)

    def constraint_value(self, x: npt.ArrayLike) -> Vec:
        p = self.point(x)
        return np.array([evaluate(gi, p) for gi in self.g])

    def constraint_residual(self, x: npt.ArrayLike) -> float:
        return float(np.linalg.norm(self.constraint_value(x) - self.y0))

    def objective(self, x: npt.ArrayLike) -> float:
        return evaluate(self.f, self.point(x))

    def objective_gradient(self, x: npt.ArrayLike) -> Vec:
        return grad(self.f, self.point(x))

    def scaled(self, factor: float) -> "Problem":
        """Same constraint set with every component of g and y₀ multiplied by factor."""
        return Problem(
            n=self.n,
            m=self.m,
            g=tuple(BinOp("*", Num(float(factor)), gi) for gi in self.g),
            y0=self.y0 * factor,
            f=self.f,
            name=self.name,
        )
