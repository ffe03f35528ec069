from __future__ import annotations

import logging
from typing import Optional

import typer

from app import __version__
from app.commands import certify as certify_cmd
from app.commands import check as check_cmd
from app.commands import classify as classify_cmd
from app.commands import paper_suite as paper_suite_cmd
from app.commands import solve as solve_cmd
from app.core.config import settings
from app.core.logging import configure_logging

logger = logging.getLogger(__name__)


def _version(value: bool) -> None:
    if value:
        typer.echo(f"{settings.APP_NAME} {__version__}")
        raise typer.Exit()


def create_app() -> typer.Typer:
    app = typer.Typer(
        name=settings.APP_NAME,
        help="Critical points of f on g⁻¹(y₀) with rank-deficient constraints.",
        add_completion=False,
        no_args_is_help=True,
    )

    @app.callback()
    def main(
        log_level: str = typer.Option(settings.LOG_LEVEL, "--log-level", help="stderr log level"),
        log_json: bool = typer.Option(settings.LOG_JSON, "--log-json", help="JSON-lines logs"),
        version: Optional[bool] = typer.Option(
            None, "--version", callback=_version, is_eager=True, help="Show version and exit"
        ),
    ) -> None:
        configure_logging(log_level, log_json)
        logger.debug("%s %s (env=%s)", settings.APP_NAME, __version__, settings.ENV)

    # ----- Commands -----
    app.command("classify")(classify_cmd.cmd_classify)
    app.command("check")(check_cmd.cmd_check)
    app.command("certify")(certify_cmd.cmd_certify)
    app.command("solve")(solve_cmd.cmd_solve)
    app.command("paper-suite")(paper_suite_cmd.cmd_paper_suite)
    return app


app = create_app()
