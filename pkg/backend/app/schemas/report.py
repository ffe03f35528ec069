"""
Report schema

Pydantic models for the JSON report every command writes. Reals are plain
floats here; `app.services.reporting.encoding` renders them with 17
significant digits.
"""
from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

REPORT_SCHEMA = "gencrit.report/1"


class ToolInfo(BaseModel):
    name: str
    version: str


class CommandEcho(BaseModel):
    name: str
    problem: Optional[str] = None
    args: Dict[str, Any] = Field(default_factory=dict)


class VerdictOut(BaseModel):
    kind: Literal["Confirmed", "Refuted", "Unknown"]
    samples: int
    witness: Optional[List[float]] = None


class RegularityOut(BaseModel):
    point: List[float]
    on_constraint: bool
    constraint_residual: float
    rank: int
    regular: bool
    generalized_regular_verdict: VerdictOut
    tangent_basis: List[List[float]] = Field(
        ..., description="Basis vectors of N(g'(x)), one list per vector"
    )


class StationarityOut(BaseModel):
    point: List[float]
    constraint_residual: float
    tangent_residual: float
    is_critical: bool
    threshold: float
    iterations: int


class CertificateOut(BaseModel):
    kind: Literal["UniqueRegular", "IllPosed"]
    L: List[float]
    L1: Optional[List[float]] = None
    witness: Optional[List[float]] = None
    gap: Optional[float] = None
    L_at_witness: Optional[float] = None
    L1_at_witness: Optional[float] = None


class OrthogonalWitnessOut(BaseModel):
    e_star: List[float]
    tangent_overlap: float
    gradient_null_overlap: float


class FixtureOut(BaseModel):
    name: str
    passed: bool
    detail: str
    observed: Dict[str, Any] = Field(default_factory=dict)


class Diagnostic(BaseModel):
    kind: str
    message: str
    exit_code: int
    offset: Optional[int] = None


class Report(BaseModel):
    """
    One command run.

    Attributes:
        schema_: Format tag, always "gencrit.report/1"
        status: "ok", or "error" when `diagnostics` is non-empty
        timings: Per-operation wall times; present only with --timings
    """

    model_config = ConfigDict(populate_by_name=True)

    schema_: str = Field(default=REPORT_SCHEMA, alias="schema")
    tool: ToolInfo
    command: CommandEcho
    status: Literal["ok", "error", "fail"] = "ok"
    exit_code: int = 0
    regularity: Optional[RegularityOut] = None
    stationarity: Optional[StationarityOut] = None
    certificate: Optional[CertificateOut] = None
    orthogonal_witness: Optional[OrthogonalWitnessOut] = None
    fixtures: Optional[List[FixtureOut]] = None
    diagnostics: List[Diagnostic] = Field(default_factory=list)
    timings: Optional[Dict[str, Dict[str, float]]] = None
