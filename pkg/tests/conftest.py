from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

from app.services.densela import DEFAULT_TOLERANCES, Tolerances
from app.services.geometry import Problem
from app.services.paper_suite import problems
from app.utils import profiling

PROBLEMS_DIR = Path(__file__).resolve().parents[1] / "backend" / "problems"


@pytest.fixture
def tol() -> Tolerances:
    return DEFAULT_TOLERANCES


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def circle() -> Problem:
    return problems.circle((3.0, 4.0))


@pytest.fixture
def sphere_slice() -> Problem:
    return problems.sphere_slice((3.0, 4.0, 7.0))


@pytest.fixture
def problems_dir() -> Path:
    return PROBLEMS_DIR


@pytest.fixture(autouse=True)
def _clear_profile() -> None:
    profiling.reset()


# Jacobian of (x1²+x2²+x3², x3, x3) at (0.6, 0.8, 0)
SPHERE_SLICE_JACOBIAN = np.array([[1.2, 1.6, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 1.0]])
