from __future__ import annotations

"""
Certify command

Multiplier certificate at a critical point: unique when g′(x) is onto,
otherwise two multipliers from two generalized inverses and a witness.
"""
from pathlib import Path
from typing import Optional

import typer

from app.schemas.problem import load_problem_file
from app.schemas.report import Report
from app.services.reporting import certificate_out, new_report, stationarity_out
from app.services.stationarity import certify_multiplier, check

from .common import OUT_OPTION, TIMINGS_OPTION, finish, parse_point, run_into, tolerances_for


def cmd_certify(
    file: Path = typer.Argument(..., help="Problem JSON file"),
    at: str = typer.Option(..., "--at", help="Critical point x1,x2,..."),
    tol: Optional[float] = typer.Option(None, "--tol", help="Override residual_abs"),
    out: Optional[Path] = OUT_OPTION,
    timings: bool = TIMINGS_OPTION,
) -> None:
    """Certify whether the Lagrange multiplier at a critical point is unique."""
    report = new_report("certify", problem=str(file), args={"at": at, "tol": tol})

    def body(r: Report) -> None:
        pf = load_problem_file(file)
        p = pf.to_problem()
        x = parse_point(at, p.n)
        t = tolerances_for(pf, tol)
        r.stationarity = stationarity_out(check(p, x, t))
        r.certificate = certificate_out(certify_multiplier(p, x, t))

    finish(run_into(report, body), out, timings)
