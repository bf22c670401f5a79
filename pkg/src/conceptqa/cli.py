"""Command-line interface: import/export networks, ask, serve, evaluate."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .config import load_config
from .engine import Engine
from .errors import ConceptQAError
from .evaluation import load_question_set, run_eval
from .retrieval import STATUS_ANSWERED


@click.group()
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Path to a JSON config file.",
)
@click.pass_context
def main(ctx: click.Context, config_path: str | None):
    """Question answering over curated concept networks."""
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path


def _engine(ctx: click.Context) -> Engine:
    try:
        return Engine(load_config(ctx.obj.get("config_path")))
    except ConceptQAError as exc:
        raise click.ClickException(str(exc)) from exc


@main.command("import")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def import_network(ctx: click.Context, file: str):
    """Register or replace a network from a document FILE."""
    engine = _engine(ctx)
    try:
        network = engine.import_document(Path(file).read_text(encoding="utf-8"),
                                         actor="cli")
    except ConceptQAError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"imported {network.id!r} at version {network.version}")


@main.command()
@click.argument("network_id")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def export(ctx: click.Context, network_id: str, output: str | None):
    """Print (or write) the canonical document of a network."""
    engine = _engine(ctx)
    try:
        document = engine.export(network_id)
    except ConceptQAError as exc:
        raise click.ClickException(str(exc)) from exc
    if output:
        Path(output).write_text(document, encoding="utf-8")
        click.echo(f"wrote {output}")
    else:
        click.echo(document, nl=False)


@main.command()
@click.argument("network_id")
@click.argument("question")
@click.pass_context
def ask(ctx: click.Context, network_id: str, question: str):
    """Ask a question against a stored network."""
    engine = _engine(ctx)
    try:
        result = engine.ask(network_id, question)
    except ConceptQAError as exc:
        raise click.ClickException(str(exc)) from exc
    if result.status == STATUS_ANSWERED:
        click.echo(result.answer)
        click.echo(f"[confidence {result.confidence:.2f}]", err=True)
    else:
        click.echo(
            f"No confident answer; forwarded to the expert (ticket {result.ticket_id})."
        )


@main.command()
@click.option("--addr", default="127.0.0.1:8000", show_default=True,
              help="host:port to bind.")
@click.pass_context
def serve(ctx: click.Context, addr: str):
    """Run the HTTP API."""
    import uvicorn

    from .service import create_app

    host, _, port = addr.partition(":")
    engine = _engine(ctx)
    uvicorn.run(create_app(engine), host=host or "127.0.0.1",
                port=int(port or "8000"), log_level="warning")


@main.command("eval")
@click.argument("network_id")
@click.option("--questions", "questions_file", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--report", "report_file", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def eval_command(ctx: click.Context, network_id: str, questions_file: str,
                 report_file: str | None):
    """Score a labeled question set and print a per-category table."""
    engine = _engine(ctx)
    try:
        network = engine.store.get(network_id)
        questions = load_question_set(
            Path(questions_file).read_text(encoding="utf-8"), network
        )
        report = run_eval(network, engine.lexicon, engine.sim_config, questions)
    except ConceptQAError as exc:
        raise click.ClickException(str(exc)) from exc
    if report_file:
        Path(report_file).write_text(
            json.dumps(report.to_document(), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
    click.echo(report.format_table())


if __name__ == "__main__":
    main(sys.argv[1:])
