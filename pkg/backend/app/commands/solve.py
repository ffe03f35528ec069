from __future__ import annotations

"""
Solve command

Damped Gauss–Newton from a start point to a critical point of f|_S, followed
by the multiplier certificate there.
"""
from pathlib import Path
from typing import Optional

import typer

from app.core.config import settings
from app.core.errors import ProblemFileError
from app.schemas.problem import load_problem_file
from app.schemas.report import Report
from app.services.reporting import certificate_out, new_report, stationarity_out
from app.services.stationarity import certify_multiplier, solve

from .common import OUT_OPTION, TIMINGS_OPTION, finish, parse_point, run_into, tolerances_for


def cmd_solve(
    file: Path = typer.Argument(..., help="Problem JSON file"),
    start: Optional[str] = typer.Option(None, "--start", help="Start x1,x2,... (default: x_init)"),
    max_iter: int = typer.Option(settings.MAX_ITER, "--max-iter", min=1, help="Iteration cap"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Override residual_abs"),
    out: Optional[Path] = OUT_OPTION,
    timings: bool = TIMINGS_OPTION,
) -> None:
    """Find a critical point of f on S and certify its multiplier."""
    report = new_report(
        "solve", problem=str(file), args={"start": start, "max_iter": max_iter, "tol": tol}
    )

    def body(r: Report) -> None:
        pf = load_problem_file(file)
        p = pf.to_problem()
        if start is not None:
            x0 = parse_point(start, p.n, option="--start")
        elif pf.x_init is not None:
            x0 = pf.x_init
        else:
            raise ProblemFileError("no start point: give --start or x_init")
        t = tolerances_for(pf, tol)
        result = solve(p, x0, t, max_iter)
        r.stationarity = stationarity_out(result)
        r.certificate = certificate_out(certify_multiplier(p, result.point, t))

    finish(run_into(report, body), out, timings)
