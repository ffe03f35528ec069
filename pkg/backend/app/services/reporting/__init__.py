"""
Report construction and rendering.

Public API is exposed from .api, .encoding and .summary.
"""

from .api import (
    attach_timings,
    certificate_out,
    diagnostic,
    fixture_out,
    new_report,
    record_error,
    record_fixtures,
    regularity_out,
    stationarity_out,
    witness_out,
)
from .encoding import dump_report, dumps, format_real
from .summary import render_summary

__all__ = [
    "attach_timings",
    "certificate_out",
    "diagnostic",
    "fixture_out",
    "dump_report",
    "dumps",
    "format_real",
    "new_report",
    "record_error",
    "record_fixtures",
    "regularity_out",
    "render_summary",
    "stationarity_out",
    "witness_out",
]
