from __future__ import annotations

"""Helpers shared by the command modules: option parsing, report output, exit codes."""
import logging
from pathlib import Path
from typing import Callable, List, Optional

import typer

from app.core.config import settings
from app.core.errors import GencritError, InvalidOption
from app.schemas.problem import ProblemFile
from app.schemas.report import Report
from app.services.densela import Tolerances
from app.services.reporting import attach_timings, dump_report, record_error, render_summary
from app.utils import profiling

logger = logging.getLogger(__name__)

STDOUT = "-"


def parse_point(text: str, n: int, *, option: str = "--at") -> List[float]:
    """'0.6,0.8,0' -> [0.6, 0.8, 0.0]; the length must be n."""
    parts = [s.strip() for s in text.split(",")]
    try:
        values = [float(s) for s in parts]
    except ValueError as e:
        raise InvalidOption(f"{option}: not a comma-separated list of reals: {text!r}") from e
    if len(values) != n:
        raise InvalidOption(f"{option}: expected {n} coordinates, got {len(values)}")
    return values


def tolerances_for(pf: ProblemFile, residual_abs: Optional[float]) -> Tolerances:
    """Settings, then the file's overrides, then --tol."""
    if residual_abs is not None and not residual_abs > 0:
        raise InvalidOption(f"--tol must be > 0, got {residual_abs!r}")
    tol = pf.effective_tolerances(settings.tolerances())
    return tol.with_overrides(residual_abs=residual_abs)


def run_into(report: Report, body: Callable[[Report], None]) -> Report:
    """Run `body`, turning any error into a diagnostic on the report."""
    profiling.reset()
    try:
        body(report)
    except GencritError as e:
        logger.info("%s failed: %s", report.command.name, e.message)
        record_error(report, e)
    except ValueError as e:
        logger.warning("%s: invalid value: %s", report.command.name, e)
        record_error(report, e)
    return report


def finish(report: Report, out: Optional[Path], timings: bool) -> None:
    """Write the JSON report, print the summary, exit with the report's code."""
    if timings:
        attach_timings(report)
    payload = dump_report(report)
    if out is not None and str(out) == STDOUT:
        typer.echo(payload, nl=False)
    else:
        if out is not None:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(payload, encoding="utf-8")
        typer.echo(render_summary(report), nl=False)
    for d in report.diagnostics:
        typer.echo(f"error: {d.kind}: {d.message}", err=True)
    if report.exit_code:
        raise typer.Exit(code=report.exit_code)


OUT_OPTION = typer.Option(
    None, "--out", help="Write the JSON report here ('-' for standard output)"
)
TIMINGS_OPTION = typer.Option(
    False, "--timings", help="Add per-operation wall times to the report"
)
