"""
Built-in reproduction suite.

Public API: run_suite, FIXTURES, and the problem constructors in .problems.
"""

from . import problems
from .fixtures import FIXTURES, Fixture, FixtureResult
from .runner import run_suite

__all__ = ["FIXTURES", "Fixture", "FixtureResult", "problems", "run_suite"]
