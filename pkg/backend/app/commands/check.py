from __future__ import annotations

"""
Check command

Multiplier-free criticality test at a point, plus the orthogonal witness e*
when the point is critical and f′(x) ≠ 0.
"""
import logging
from pathlib import Path
from typing import Optional

import typer

from app.core.errors import ZeroGradient
from app.schemas.problem import load_problem_file
from app.schemas.report import Report
from app.services.reporting import new_report, stationarity_out, witness_out
from app.services.stationarity import check, orthogonal_witness

from .common import OUT_OPTION, TIMINGS_OPTION, finish, parse_point, run_into, tolerances_for

logger = logging.getLogger(__name__)


def cmd_check(
    file: Path = typer.Argument(..., help="Problem JSON file"),
    at: str = typer.Option(..., "--at", help="Point x1,x2,... to test"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Override residual_abs"),
    out: Optional[Path] = OUT_OPTION,
    timings: bool = TIMINGS_OPTION,
) -> None:
    """Test N(f'(x)) ⊇ N(g'(x)) and g(x) = y0 at a point."""
    report = new_report("check", problem=str(file), args={"at": at, "tol": tol})

    def body(r: Report) -> None:
        pf = load_problem_file(file)
        p = pf.to_problem()
        x = parse_point(at, p.n)
        t = tolerances_for(pf, tol)
        result = check(p, x, t)
        r.stationarity = stationarity_out(result)
        if result.is_critical:
            try:
                r.orthogonal_witness = witness_out(orthogonal_witness(p, x, t))
            except ZeroGradient:
                logger.info("f'(x) = 0: no orthogonal witness")

    finish(run_into(report, body), out, timings)
