"""Command-line client for the study pipeline.

Every command is a thin wrapper over :class:`~peerscope.study.StudyStore`,
so output always matches what the HTTP service would return for the same
study. Pipeline problems exit non-zero with the error message.
"""

from __future__ import annotations

import json
from pathlib import Path

import click

from . import __version__
from .errors import PeerscopeError, ValidationFailed
from .study import DATA_DIR_ENV, StudyStore


class _PipelineGroup(click.Group):
    """Group that turns pipeline errors into clean non-zero exits."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ValidationFailed as exc:
            lines = [str(exc)]
            for key, values in exc.report.as_dict().items():
                if values:
                    lines.append(f"  {key}: {', '.join(str(v) for v in values)}")
            raise click.ClickException("\n".join(lines)) from exc
        except PeerscopeError as exc:
            raise click.ClickException(str(exc)) from exc


@click.group(cls=_PipelineGroup)
@click.option(
    "--data-dir",
    envvar=DATA_DIR_ENV,
    type=click.Path(file_okay=False),
    default=None,
    help=f"Directory holding study bundles [env: {DATA_DIR_ENV}].",
)
@click.version_option(__version__)
@click.pass_context
def main(ctx, data_dir):
    """Classroom social-network and alcohol-use-risk studies."""
    ctx.obj = data_dir


@main.group()
def study():
    """Study lifecycle."""


@study.command("new")
@click.argument("title")
@click.pass_obj
def study_new(data_dir, title):
    """Create a study and print its id."""
    created = StudyStore(data_dir).create(title)
    click.echo(created.id)


@main.group()
def roster():
    """Roster management."""


@roster.command("import")
@click.argument("study_id")
@click.argument("csv_file", type=click.File("r"))
@click.pass_obj
def roster_import(data_dir, study_id, csv_file):
    """Import a roster CSV; prints the assigned pseudonyms."""
    imported = StudyStore(data_dir).import_roster(study_id, csv_file.read())
    for member in imported.roster:
        click.echo(member.pseudonym)


@main.group()
def responses():
    """Questionnaire responses."""


@responses.command("import")
@click.argument("study_id")
@click.argument("json_file", type=click.File("r"))
@click.pass_obj
def responses_import(data_dir, study_id, json_file):
    """Import a JSON batch: an object with "date" and "answers"."""
    try:
        payload = json.load(json_file)
    except json.JSONDecodeError as exc:
        raise click.ClickException(f"bad JSON in responses file: {exc}") from exc
    if not isinstance(payload, dict) or "date" not in payload or "answers" not in payload:
        raise click.ClickException(
            'responses file must be an object with "date" and "answers"'
        )
    updated, report = StudyStore(data_dir).import_responses(
        study_id, payload["date"], payload["answers"]
    )
    click.echo(f"stored {len(updated.answers)} answers over {len(updated.events)} event(s)")
    if report.missing_respondents:
        click.echo(
            f"note: no answers yet from {', '.join(report.missing_respondents)}", err=True
        )
    if report.missing_items:
        click.echo(f"note: {len(report.missing_items)} unanswered items remain", err=True)


@main.command()
@click.argument("study_id")
@click.pass_obj
def analyze(data_dir, study_id):
    """Run the full pipeline and print a per-graph summary."""
    snapshot = StudyStore(data_dir).analyze(study_id)
    summary = snapshot["summary"]
    click.echo(
        f"version {snapshot['version']}: {summary['people']} people, "
        f"{summary['answers']} answers, {summary['events']} event(s)"
    )
    for name in sorted(summary["graphs"]):
        info = summary["graphs"][name]
        parts = [f"{info['nodes']} nodes", f"{info['ties']} ties"]
        if "density" in info:
            parts.append(f"density {info['density']}")
        if "diameter" in info:
            parts.append(f"diameter {info['diameter']}")
        click.echo(f"{name}: {', '.join(parts)}")


@main.command()
@click.argument("study_id")
@click.argument("graph_name")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["pajek", "csv"]),
    default="pajek",
    show_default=True,
)
@click.option(
    "--output",
    "-o",
    type=click.File("w"),
    default="-",
    help="File to write (default: stdout).",
)
@click.pass_obj
def export(data_dir, study_id, graph_name, fmt, output):
    """Write one analyzed graph as Pajek or CSV."""
    output.write(StudyStore(data_dir).export_graph(study_id, graph_name, fmt))


@main.command()
@click.argument("study_id")
@click.argument("pseudonym")
@click.pass_obj
def report(data_dir, study_id, pseudonym):
    """Print the narrative report for one student."""
    results = StudyStore(data_dir).get(study_id).latest_results()
    try:
        text = results["reports"][pseudonym]
    except KeyError:
        raise click.ClickException(f"no person {pseudonym!r} in study {study_id!r}") from None
    click.echo(text)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option(
    "--ui-dir",
    type=click.Path(file_okay=False),
    default="frontend/dist",
    show_default=True,
    help="Built web UI to serve at the root (skipped when missing).",
)
@click.pass_obj
def serve(data_dir, host, port, ui_dir):
    """Host the HTTP API (and the web UI when built)."""
    import uvicorn

    from .api import create_app

    app = create_app(StudyStore(data_dir), ui_dir=Path(ui_dir))
    uvicorn.run(app, host=host, port=port)
