from __future__ import annotations

"""Built-in problems: the circle, the sphere cut by x3 = 0, the ellipse, x ↦ x1²."""
from typing import Sequence

from app.services.geometry import Problem


def _num(v: float) -> str:
    s = repr(float(v))
    return f"({s})" if s.startswith("-") else s


def _distance_squared(center: Sequence[float]) -> str:
    return "+".join(f"(x{i}-{_num(c)})^2" for i, c in enumerate(center, start=1))


def circle(center: Sequence[float] = (3.0, 4.0)) -> Problem:
    """Distance² to `center` on the unit circle; 1 is a regular value."""
    return Problem.from_sources(
        n=2,
        f=_distance_squared(center),
        g=["x1^2+x2^2"],
        y0=[1.0],
        name="circle",
    )


def sphere_slice(center: Sequence[float] = (3.0, 4.0, 7.0)) -> Problem:
    """
    g(x) = (x1²+x2²+x3², x3, x3) at y₀ = (1, 0, 0): S is the unit circle in
    the x3 = 0 plane, rank g′ = 2 < 3 everywhere on S.
    """
    return Problem.from_sources(
        n=3,
        f=_distance_squared(center),
        g=["x1^2+x2^2+x3^2", "x3", "x3"],
        y0=[1.0, 0.0, 0.0],
        name="sphere_slice",
    )


def ellipse(
    a: float = 2.0, b: float = 1.0, center: Sequence[float] = (1.0, 0.5)
) -> Problem:
    return Problem.from_sources(
        n=2,
        f=_distance_squared(center),
        g=[f"x1^2/{_num(a * a)}+x2^2/{_num(b * b)}"],
        y0=[1.0],
        name="ellipse",
    )


def x_squared() -> Problem:
    """g(x) = x1² at y₀ = 0: rank 0 at the origin, 1 everywhere else."""
    return Problem.from_sources(n=1, f="x1", g=["x1^2"], y0=[0.0], name="x_squared")
