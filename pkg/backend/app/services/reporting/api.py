from __future__ import annotations

"""Conversion from domain results to report models."""
from typing import Any, Dict, Iterable, Optional

import numpy as np

from app import __version__
from app.core.errors import GencritError, MaxIterExceeded
from app.schemas.report import (
    CertificateOut,
    CommandEcho,
    Diagnostic,
    FixtureOut,
    OrthogonalWitnessOut,
    RegularityOut,
    Report,
    StationarityOut,
    ToolInfo,
    VerdictOut,
)
from app.services.geometry import RegularityReport
from app.services.paper_suite import FixtureResult
from app.services.stationarity import (
    MultiplierCertificate,
    OrthogonalWitness,
    StationarityCheck,
)
from app.utils.profiling import snapshot

TOOL_NAME = "gencrit"


def _floats(v: Any) -> list[float]:
    return [float(x) for x in np.asarray(v, dtype=np.float64).reshape(-1)]


def regularity_out(r: RegularityReport) -> RegularityOut:
    v = r.generalized_regular_verdict
    return RegularityOut(
        point=_floats(r.point),
        on_constraint=r.on_constraint,
        constraint_residual=r.constraint_residual,
        rank=r.rank,
        regular=r.regular,
        generalized_regular_verdict=VerdictOut(
            kind=v.kind.value,
            samples=v.samples,
            witness=None if v.witness is None else _floats(v.witness),
        ),
        tangent_basis=[_floats(col) for col in r.tangent_basis.vectors.T],
    )


def stationarity_out(c: StationarityCheck) -> StationarityOut:
    return StationarityOut(
        point=_floats(c.point),
        constraint_residual=c.constraint_residual,
        tangent_residual=c.tangent_residual,
        is_critical=c.is_critical,
        threshold=c.threshold,
        iterations=c.iterations,
    )


def certificate_out(c: MultiplierCertificate) -> CertificateOut:
    at = c.values_at_witness
    return CertificateOut(
        kind=c.kind.value,
        L=_floats(c.L),
        L1=None if c.L1 is None else _floats(c.L1),
        witness=None if c.witness is None else _floats(c.witness),
        gap=c.gap,
        L_at_witness=None if at is None else at[0],
        L1_at_witness=None if at is None else at[1],
    )


def witness_out(w: OrthogonalWitness) -> OrthogonalWitnessOut:
    return OrthogonalWitnessOut(
        e_star=_floats(w.e_star),
        tangent_overlap=w.tangent_overlap,
        gradient_null_overlap=w.gradient_null_overlap,
    )


def diagnostic(e: BaseException) -> Diagnostic:
    if isinstance(e, GencritError):
        return Diagnostic(
            kind=type(e).__name__,
            message=e.message,
            exit_code=e.exit_code,
            offset=getattr(e, "offset", None),
        )
    # programming errors from value-object validation
    return Diagnostic(kind=type(e).__name__, message=str(e), exit_code=3)


def new_report(
    command: str, *, problem: Optional[str] = None, args: Optional[Dict[str, Any]] = None
) -> Report:
    return Report(
        tool=ToolInfo(name=TOOL_NAME, version=__version__),
        command=CommandEcho(name=command, problem=problem, args=args or {}),
    )


def record_error(report: Report, e: BaseException) -> Report:
    """Attach a diagnostic; a non-convergence also reports its last iterate."""
    d = diagnostic(e)
    report.diagnostics.append(d)
    report.status = "error"
    report.exit_code = d.exit_code
    if isinstance(e, MaxIterExceeded):
        report.stationarity = stationarity_out(e.last)
    return report


def fixture_out(r: FixtureResult) -> FixtureOut:
    return FixtureOut(name=r.name, passed=r.passed, detail=r.detail, observed=dict(r.observed))


def record_fixtures(report: Report, results: Iterable[FixtureResult]) -> Report:
    report.fixtures = [fixture_out(r) for r in results]
    if not all(f.passed for f in report.fixtures):
        report.status = "fail"
        report.exit_code = 1
    return report


def attach_timings(report: Report) -> Report:
    report.timings = snapshot()
    return report
