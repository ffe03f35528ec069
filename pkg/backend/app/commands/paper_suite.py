from __future__ import annotations

"""
Paper-suite command

Runs the built-in fixtures and prints a PASS/FAIL table; exit 1 on any FAIL.
"""
from pathlib import Path
from typing import Optional

import typer

from app.core.config import settings
from app.schemas.report import Report
from app.services.paper_suite import run_suite
from app.services.reporting import new_report, record_fixtures

from .common import OUT_OPTION, TIMINGS_OPTION, finish, run_into


def cmd_paper_suite(
    workers: Optional[int] = typer.Option(
        settings.SUITE_WORKERS, "--workers", min=1, help="Fixture threads"
    ),
    out: Optional[Path] = OUT_OPTION,
    timings: bool = TIMINGS_OPTION,
) -> None:
    """Reproduce the worked examples and the GI(A) property sweeps."""
    report = new_report("paper-suite")

    def body(r: Report) -> None:
        record_fixtures(r, run_suite(settings.tolerances(), workers=workers))

    finish(run_into(report, body), out, timings)
