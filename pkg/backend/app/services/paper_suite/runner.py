from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

from app.core.errors import GencritError
from app.services.densela import DEFAULT_TOLERANCES, Tolerances
from app.utils.profiling import profiled

from .fixtures import FIXTURES, Fixture, FixtureResult

logger = logging.getLogger(__name__)


def _run_one(fx: Fixture, tol: Tolerances) -> FixtureResult:
    try:
        res = fx.run(tol)
    except (GencritError, ValueError, AssertionError) as e:
        logger.warning("fixture %s raised %s: %s", fx.name, type(e).__name__, e)
        return FixtureResult(fx.name, False, f"{type(e).__name__}: {e}")
    logger.debug("fixture %s: %s", fx.name, "PASS" if res.passed else "FAIL")
    return res


@profiled("paper_suite.run")
def run_suite(
    tol: Tolerances = DEFAULT_TOLERANCES,
    *,
    workers: Optional[int] = None,
    fixtures: Sequence[Fixture] = FIXTURES,
) -> List[FixtureResult]:
    """Run every fixture; results come back in declaration order."""
    if workers is None or workers <= 1:
        return [_run_one(fx, tol) for fx in fixtures]
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="fixture") as pool:
        return list(pool.map(lambda fx: _run_one(fx, tol), fixtures))
