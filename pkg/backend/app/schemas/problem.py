"""
Problem file schema

Pydantic model for the JSON problem files read by every command. A file
names the objective f, the constraint components g and the level y₀; the
optional fields carry a default start, tolerance overrides and a seed.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, ValidationError, model_validator

from app.core.errors import ProblemFileError
from app.services.densela import Tolerances
from app.services.geometry import Problem

PROBLEM_SCHEMA = "gencrit.problem/1"


class ToleranceOverrides(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rank_rel: Optional[PositiveFloat] = None
    residual_abs: Optional[PositiveFloat] = None
    ortho: Optional[PositiveFloat] = None

    def apply(self, base: Tolerances) -> Tolerances:
        return base.with_overrides(**self.model_dump())


class ProblemFile(BaseModel):
    """
    Schema for a constrained critical-point problem.

    Attributes:
        schema_: Format tag, always "gencrit.problem/1"
        name: Label echoed in reports
        n, m: Domain and codomain dimensions
        f: Objective expression in x1..xn
        g: One expression per constraint component
        y0: Constraint level, length m
        x_init: Default start for `solve`
        tolerances: Per-file tolerance overrides
        seed: Probe seed for `classify`
    """

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_: str = Field(default=PROBLEM_SCHEMA, alias="schema")
    name: str = Field(default="", max_length=255)
    n: int = Field(..., ge=1)
    m: int = Field(..., ge=1)
    f: str = Field(..., min_length=1)
    g: List[str] = Field(..., min_length=1)
    y0: List[float]
    x_init: Optional[List[float]] = None
    tolerances: Optional[ToleranceOverrides] = None
    seed: Optional[int] = None

    @model_validator(mode="after")
    def _lengths(self) -> "ProblemFile":
        if self.schema_ != PROBLEM_SCHEMA:
            raise ValueError(f"unsupported schema {self.schema_!r}, expected {PROBLEM_SCHEMA!r}")
        if len(self.g) != self.m:
            raise ValueError(f"g has {len(self.g)} components, m = {self.m}")
        if len(self.y0) != self.m:
            raise ValueError(f"y0 has length {len(self.y0)}, m = {self.m}")
        if self.x_init is not None and len(self.x_init) != self.n:
            raise ValueError(f"x_init has length {len(self.x_init)}, n = {self.n}")
        return self

    def to_problem(self) -> Problem:
        """Parse the expressions; syntax errors surface as ExprSyntaxError."""
        return Problem.from_sources(n=self.n, f=self.f, g=self.g, y0=self.y0, name=self.name)

    def effective_tolerances(self, base: Tolerances) -> Tolerances:
        return self.tolerances.apply(base) if self.tolerances else base


def _first_error(e: ValidationError) -> str:
    err = e.errors()[0]
    where = ".".join(str(p) for p in err.get("loc", ())) or "<root>"
    return f"{where}: {err.get('msg', 'invalid value')}"


def parse_problem_file(text: str) -> ProblemFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemFileError(f"malformed JSON: {e.msg}", offset=e.pos) from e
    if not isinstance(data, dict):
        raise ProblemFileError("top-level JSON value must be an object", offset=0)
    try:
        return ProblemFile.model_validate(data)
    except ValidationError as e:
        raise ProblemFileError(_first_error(e)) from e


def load_problem_file(path: str | Path) -> ProblemFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ProblemFileError(f"cannot read {p}: {e.strerror or e}") from e
    return parse_problem_file(text)
