from __future__ import annotations

"""
Classify command

Rank, regularity and the sampled generalized-regularity verdict at a point.
"""
from pathlib import Path
from typing import Optional

import typer

from app.core.config import settings
from app.schemas.problem import load_problem_file
from app.schemas.report import Report
from app.services.geometry import classify
from app.services.reporting import new_report, regularity_out

from .common import OUT_OPTION, TIMINGS_OPTION, finish, parse_point, run_into, tolerances_for


def cmd_classify(
    file: Path = typer.Argument(..., help="Problem JSON file"),
    at: str = typer.Option(..., "--at", help="Point x1,x2,... to classify"),
    probes: int = typer.Option(settings.PROBES, "--probes", min=0, help="Probe count"),
    radius: float = typer.Option(settings.PROBE_RADIUS, "--radius", help="Probe ball radius"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Probe seed (default: file, then settings)"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Override residual_abs"),
    out: Optional[Path] = OUT_OPTION,
    timings: bool = TIMINGS_OPTION,
) -> None:
    """Classify a point of the constraint set as regular / generalized regular."""
    report = new_report(
        "classify",
        problem=str(file),
        args={"at": at, "probes": probes, "radius": radius, "seed": seed, "tol": tol},
    )

    def body(r: Report) -> None:
        pf = load_problem_file(file)
        p = pf.to_problem()
        x = parse_point(at, p.n)
        s = seed if seed is not None else (pf.seed if pf.seed is not None else settings.SEED)
        r.regularity = regularity_out(
            classify(p, x, tolerances_for(pf, tol), probes, radius, seed=s)
        )

    finish(run_into(report, body), out, timings)
