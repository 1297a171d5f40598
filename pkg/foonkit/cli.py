"""``foonkit`` command line.

Every command is a thin shell over the library: data goes to stdout (or
``--out``), diagnostics go to stderr. Exit status 0 means success, 1 a domain
failure such as an unreachable goal, 2 a usage or input-format error.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, List, Optional, Sequence

import click
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from foonkit import __version__
from foonkit.errors import EXIT_DOMAIN, EXIT_USAGE, FoonkitError
from foonkit.features.core.export import write_dot
from foonkit.features.core.models import ObjectNode
from foonkit.features.core.service import merge as merge_graphs
from foonkit.features.corpus.service import FieldPaths, load_corpus, match_equivalent
from foonkit.features.parser.service import Severity, load_graph, read_graph, serialize_graph
from foonkit.features.recipegen.models import PortionTable, Recipe
from foonkit.features.recipegen.portions import load_portions
from foonkit.features.recipegen.service import (
    generate_recipe,
    load_recipe_json,
    render_json,
    render_text,
    tree_from_graph,
)
from foonkit.features.retrieval.kitchen import format_descriptor, load_kitchen, parse_descriptor
from foonkit.features.retrieval.service import reachable_goals, retrieve_many
from foonkit.features.retrieval.service import retrieve as retrieve_tree
from foonkit.features.stats.report import build_report, render_report_json, render_report_text
from foonkit.features.stats.survey import build_samples, load_ratings, load_respondents
from foonkit.logging import setup_logging
from foonkit.main import run
from foonkit.settings import Scheme, Settings, get_settings, load_scheme

console = Console(stderr=True, highlight=False, soft_wrap=True)

ExistingFile = click.Path(exists=True, dir_okay=False, path_type=Path)
OutFile = click.Path(dir_okay=False, writable=True, path_type=Path)


@dataclass
class CliContext:
    settings: Settings
    scheme: Scheme


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        click.echo(text, nl=False)
        return
    out.write_text(text, encoding="utf-8")
    console.print(f"wrote {out}")


def _report(exc: FoonkitError) -> None:
    console.print(f"[bold red]error[/] [{exc.code.value}] {escape(str(exc))}")
    for diagnostic in getattr(exc, "diagnostics", ()):
        console.print(f"  {diagnostic}", markup=False)


class FoonkitGroup(click.Group):
    """Maps library errors onto exit codes instead of tracebacks."""

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except FoonkitError as exc:
            _report(exc)
            ctx.exit(exc.exit_code)


@click.group(cls=FoonkitGroup)
@click.version_option(__version__, prog_name="foonkit")
@click.option(
    "--config",
    "config_path",
    type=ExistingFile,
    default=None,
    help="YAML/JSON file with verb classes, skip states, weights and normalisation lists.",
)
@click.option("--log-level", default=None, help="Logging level (default from FOONKIT_LOG_LEVEL).")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[Path], log_level: Optional[str]) -> None:
    """Work with FOON graphs: validate, merge, retrieve, generate, match and stats."""
    settings = get_settings()
    updates = {}
    if log_level:
        updates["log_level"] = log_level
    if config_path is not None:
        updates["config"] = config_path
    if updates:
        settings = settings.model_copy(update=updates)
    setup_logging(settings)
    scheme = load_scheme(settings.config) if settings.config is not None else Scheme()
    ctx.obj = CliContext(settings, scheme)


@cli.command()
@click.argument("files", nargs=-1, required=True, type=ExistingFile)
def validate(files: Sequence[Path]) -> None:
    """Parse and check .foon files; prints one summary line per file."""
    failed = False
    for path in files:
        graph, diagnostics = read_graph(path)
        errors = [d for d in diagnostics if d.severity is Severity.ERROR]
        for diagnostic in diagnostics:
            console.print(f"{path}: {diagnostic}", markup=False)
        failed = failed or bool(errors)
        click.echo(f"{path}\t{len(graph)} units\t{len(errors)} errors\t{len(diagnostics) - len(errors)} warnings")
    if failed:
        raise click.exceptions.Exit(EXIT_USAGE)


@cli.command()
@click.argument("inputs", nargs=-1, required=True, type=ExistingFile)
@click.option("-o", "--out", type=OutFile, default=None, help="Write the merged graph here instead of stdout.")
@click.option("--dot", "dot_path", type=OutFile, default=None, help="Also export the merged graph as Graphviz DOT.")
def merge(inputs: Sequence[Path], out: Optional[Path], dot_path: Optional[Path]) -> None:
    """Union several .foon files into one graph without duplicate units."""
    graphs = [load_graph(path) for path in inputs]
    merged = merge_graphs(graphs)
    before = sum(len(graph) for graph in graphs)
    console.print(f"units before={before} after={len(merged)} (removed {before - len(merged)} duplicates)")
    _emit(serialize_graph(merged), out)
    if dot_path is not None:
        write_dot(merged, dot_path)
        console.print(f"wrote {dot_path}")


def _parse_goal(text: str) -> ObjectNode:
    try:
        return parse_descriptor(text)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="goal") from exc


def _read_goals(path: Path) -> List[ObjectNode]:
    goals = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip() and not line.lstrip().startswith("#"):
            goals.append(_parse_goal(line))
    return goals


@cli.command()
@click.argument("foon_path", metavar="FOON", type=ExistingFile)
@click.argument("kitchen_path", metavar="KITCHEN", type=ExistingFile)
@click.option("-g", "--goal", default=None, help="Goal descriptor: name|state,state[|{ings}][|in:target].")
@click.option("--goals-file", type=ExistingFile, default=None, help="One goal descriptor per line (batch mode).")
@click.option(
    "-o",
    "--out",
    type=click.Path(path_type=Path),
    default=None,
    help="Tree file, or a directory in batch mode.",
)
@click.option("--workers", type=int, default=None, help="Threads for batch retrieval.")
@click.pass_obj
def retrieve(
    app: CliContext,
    foon_path: Path,
    kitchen_path: Path,
    goal: Optional[str],
    goals_file: Optional[Path],
    out: Optional[Path],
    workers: Optional[int],
) -> None:
    """Find a task tree that makes GOAL from what the kitchen holds."""
    if (goal is None) == (goals_file is None):
        raise click.UsageError("give exactly one of --goal or --goals-file")
    foon = load_graph(foon_path)
    kitchen = load_kitchen(kitchen_path)

    if goal is not None:
        tree = retrieve_tree(foon, _parse_goal(goal), kitchen)
        console.print(f"task tree: {len(tree.units)} unit(s)")
        _emit(serialize_graph(tree.graph), out)
        return

    results = retrieve_many(foon, _read_goals(goals_file), kitchen, workers=workers or app.settings.workers)
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    lines = []
    for number, result in enumerate(results, start=1):
        status = "ok" if result.ok else result.error.code.value
        units = len(result.tree.units) if result.ok else 0
        lines.append(f"{format_descriptor(result.goal)}\t{status}\t{units}")
        if result.ok and out is not None:
            (out / f"tree_{number:03d}.foon").write_text(serialize_graph(result.tree.graph), encoding="utf-8")
        elif not result.ok:
            console.print(f"{format_descriptor(result.goal)}: {result.error}", markup=False)
    click.echo("\n".join(lines) + "\n", nl=False)
    if not all(result.ok for result in results):
        raise click.exceptions.Exit(EXIT_DOMAIN)


@cli.command()
@click.argument("foon_path", metavar="FOON", type=ExistingFile)
@click.argument("kitchen_path", metavar="KITCHEN", type=ExistingFile)
def reachable(foon_path: Path, kitchen_path: Path) -> None:
    """List every object the kitchen can be turned into."""
    nodes = reachable_goals(load_graph(foon_path), load_kitchen(kitchen_path))
    click.echo("".join(f"{line}\n" for line in sorted(format_descriptor(node) for node in nodes)), nl=False)


@cli.command()
@click.argument("tree_path", metavar="TREE", type=ExistingFile)
@click.option("-p", "--portions", "portions_path", type=ExistingFile, default=None, help="TSV or JSON portion table.")
@click.option("-t", "--title", default=None, help="Recipe title (default: the goal's name).")
@click.option("-g", "--goal", default=None, help="Goal descriptor (default: first output of the last unit).")
@click.option("-o", "--out", type=OutFile, default=None)
@click.option("--json", "as_json", is_flag=True, help="Emit {title, steps, ingredients} JSON.")
@click.option("--no-merge", is_flag=True, help="Keep consecutive same-verb steps apart.")
@click.pass_obj
def generate(
    app: CliContext,
    tree_path: Path,
    portions_path: Optional[Path],
    title: Optional[str],
    goal: Optional[str],
    out: Optional[Path],
    as_json: bool,
    no_merge: bool,
) -> None:
    """Turn a task tree into numbered recipe steps."""
    graph = load_graph(tree_path)
    portions = load_portions(portions_path) if portions_path else PortionTable()
    if not graph.units:
        recipe = Recipe(title or "recipe")
    else:
        tree = tree_from_graph(graph, _parse_goal(goal) if goal else None)
        recipe = generate_recipe(tree, portions, title, scheme=app.scheme.generation, merge=not no_merge)
        if not recipe.steps:
            console.print("[yellow]warning[/] every unit was skipped; no instructive steps")
    _emit(render_json(recipe) if as_json else render_text(recipe), out)


@cli.command()
@click.argument("recipe_path", metavar="RECIPE", type=ExistingFile)
@click.argument("corpus_path", metavar="CORPUS", type=ExistingFile)
@click.option("-k", "top_k", type=click.IntRange(min=1), default=None, help="How many matches to return.")
@click.option("--id-field", default="id", show_default=True)
@click.option("--title-field", default="title", show_default=True)
@click.option("--ingredients-field", default="ingredients[].text", show_default=True)
@click.option("--instructions-field", default="instructions[].text", show_default=True)
@click.option("--workers", type=int, default=None)
@click.option("-o", "--out", type=OutFile, default=None)
@click.pass_obj
def match(
    app: CliContext,
    recipe_path: Path,
    corpus_path: Path,
    top_k: Optional[int],
    id_field: str,
    title_field: str,
    ingredients_field: str,
    instructions_field: str,
    workers: Optional[int],
    out: Optional[Path],
) -> None:
    """Rank corpus recipes by ingredient overlap with a generated RECIPE (JSON)."""
    fields = FieldPaths(id_field, title_field, ingredients_field, instructions_field)
    matches = match_equivalent(
        load_recipe_json(recipe_path),
        load_corpus(corpus_path, fields),
        top_k or app.settings.match_top_k,
        workers=workers or app.settings.workers,
        scheme=app.scheme.normalization,
    )
    _emit(json.dumps([m.to_dict() for m in matches], indent=2, ensure_ascii=False) + "\n", out)


@cli.command()
@click.argument("ratings_path", metavar="RATINGS", type=ExistingFile)
@click.argument("respondents_path", metavar="RESPONDENTS", type=ExistingFile)
@click.option("--alpha", type=float, default=None, help="Significance level (default 0.05).")
@click.option("--cohen-d", type=float, default=None, help="Equivalence margin in pooled SDs (default 0.3).")
@click.option("--test", "method", type=click.Choice(["welch", "student"]), default=None)
@click.option("--effective-n", type=click.Choice(["count", "kish"]), default=None)
@click.option("--json", "as_json", is_flag=True)
@click.option("--wide", is_flag=True, help="Add verdict, equivalence and per-source mean/std/n columns.")
@click.option("--pretty", is_flag=True, help="Also print a rich table to stderr.")
@click.option("-o", "--out", type=OutFile, default=None)
@click.pass_obj
def stats(
    app: CliContext,
    ratings_path: Path,
    respondents_path: Path,
    alpha: Optional[float],
    cohen_d: Optional[float],
    method: Optional[str],
    effective_n: Optional[str],
    as_json: bool,
    wide: bool,
    pretty: bool,
    out: Optional[Path],
) -> None:
    """Compare ratings of generated and reference recipes per question."""
    settings = app.settings
    samples = build_samples(load_ratings(ratings_path), load_respondents(respondents_path), app.scheme.weights)
    report = build_report(
        samples,
        alpha=alpha if alpha is not None else settings.alpha,
        cohen_d=cohen_d if cohen_d is not None else settings.cohen_d,
        method=method or settings.t_test,
        effective_n=effective_n or settings.effective_n,
    )
    text = render_report_text(report, wide=wide)
    if pretty:
        _print_table(text)
    _emit(render_report_json(report, pretty=True) if as_json else text, out)


def _print_table(tsv: str) -> None:
    lines = tsv.splitlines()
    rows = [line.split("\t") for line in lines if not line.startswith("#")]
    caption = "\n".join(line.lstrip("# ") for line in lines if line.startswith("#"))
    table = Table(*rows[0], caption=caption or None)
    for row in rows[1:]:
        table.add_row(*row)
    console.print(table)


@cli.command()
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
def serve(host: Optional[str], port: Optional[int]) -> None:
    """Start the HTTP API."""
    run(host, port)


def main() -> None:
    cli(prog_name="foonkit")


__all__ = ["cli", "main"]
