from __future__ import annotations

"""Plain-text summary printed to standard output."""
from typing import List, Sequence

from app.schemas.report import Report


def _vec(v: Sequence[float]) -> str:
    return "(" + ", ".join(f"{x:.10g}" for x in v) + ")"


def render_summary(report: Report) -> str:
    lines: List[str] = []
    head = report.command.name
    if report.command.problem:
        head += f" {report.command.problem}"
    lines.append(head)

    r = report.regularity
    if r is not None:
        v = r.generalized_regular_verdict
        lines.append(f"  point:               {_vec(r.point)}")
        lines.append(
            f"  on constraint:       {'yes' if r.on_constraint else 'no'} "
            f"(residual {r.constraint_residual:.3e})"
        )
        lines.append(f"  rank g'(x):          {r.rank}")
        lines.append(f"  regular:             {'yes' if r.regular else 'no'}")
        verdict = v.kind
        if v.kind == "Confirmed":
            verdict += f" ({v.samples} probes)"
        elif v.kind == "Refuted" and v.witness is not None:
            verdict += f" at {_vec(v.witness)}"
        lines.append(f"  generalized regular: {verdict}")
        lines.append(f"  tangent dimension:   {len(r.tangent_basis)}")

    s = report.stationarity
    if s is not None:
        lines.append(f"  point:               {_vec(s.point)}")
        lines.append(f"  constraint residual: {s.constraint_residual:.3e}")
        lines.append(f"  tangent residual:    {s.tangent_residual:.3e}")
        lines.append(f"  critical:            {'yes' if s.is_critical else 'no'}")
        if s.iterations:
            lines.append(f"  iterations:          {s.iterations}")

    w = report.orthogonal_witness
    if w is not None:
        lines.append(f"  e*:                  {_vec(w.e_star)}")

    c = report.certificate
    if c is not None:
        lines.append(f"  multiplier:          {c.kind}")
        lines.append(f"  L:                   {_vec(c.L)}")
        if c.L1 is not None and c.witness is not None:
            lines.append(f"  L1:                  {_vec(c.L1)}")
            lines.append(f"  witness v:           {_vec(c.witness)}")
            lines.append(
                f"  L(v), L1(v):         {c.L_at_witness:.10g}, {c.L1_at_witness:.10g}"
            )

    if report.fixtures is not None:
        width = max((len(f.name) for f in report.fixtures), default=0)
        for f in report.fixtures:
            mark = "PASS" if f.passed else "FAIL"
            lines.append(f"  {mark}  {f.name.ljust(width)}  {f.detail}")
        passed = sum(f.passed for f in report.fixtures)
        lines.append(f"  {passed}/{len(report.fixtures)} fixtures passed")

    for d in report.diagnostics:
        lines.append(f"  error ({d.kind}): {d.message}")
    return "\n".join(lines) + "\n"
