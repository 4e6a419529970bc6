"""
doctrace command group

Exit codes: 0 success, 1 pipeline or evaluation failure, 2 usage or
config error, 3 provider or credential failure.
"""
import asyncio
import functools
import logging
from pathlib import Path
from typing import Any, Callable, List, Optional

import click

from ...application.use_cases import EvaluationUseCases, ExportUseCases
from ...domain.entities.artifact_tree import ArtifactTree
from ...domain.exceptions import (
    ArgumentError,
    ConfigError,
    DoctraceError,
    ProviderError,
)
from ...domain.value_objects.evaluation import ConceptAnnotation
from ...infrastructure.config.settings import settings
from ...infrastructure.logging import configure_logging, stage_timer
from ...infrastructure.persistence import (
    FileTreeRepository,
    parse_concepts,
    parse_ground_truth,
    write_layer_diagnostics,
)
from .dependencies import container, resolve_config

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_PROVIDER = 3


def exit_code_for(error: BaseException) -> int:
    cause: Optional[BaseException] = error
    while cause is not None:
        if isinstance(cause, ProviderError):
            return EXIT_PROVIDER
        cause = cause.__cause__
    if isinstance(error, (ConfigError, ArgumentError)):
        return EXIT_USAGE
    return EXIT_FAILURE


def handle_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Map domain errors onto exit codes with a one-line diagnostic on stderr"""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except DoctraceError as e:
            click.echo(f"Error: {e}", err=True)
            raise SystemExit(exit_code_for(e)) from e

    return wrapper


def read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read {path}: {e}") from e


def load_tree_file(path: str) -> ArtifactTree:
    tree = asyncio.run(FileTreeRepository().get(path))
    if tree is None:
        raise ArgumentError(f"Tree file {path} does not exist")
    return tree


config_option = click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    help="Pipeline config YAML",
)
src_option = click.option(
    "--src",
    type=click.Path(file_okay=False),
    help="Source tree root (overrides config)",
)
out_option = click.option(
    "--out", required=True, type=click.Path(dir_okay=False), help="Output tree JSON"
)
seed_option = click.option(
    "--seed", type=int, default=None, help="Seed for every random choice"
)
provider_option = click.option(
    "--provider",
    type=click.Choice(["mock", "http"]),
    default=None,
    help="Provider switch",
)
cache_option = click.option(
    "--cache-dir",
    type=click.Path(file_okay=False),
    default=None,
    help="Response cache directory",
)
tree_option = click.option(
    "--tree",
    "tree_path",
    required=True,
    type=click.Path(dir_okay=False),
    help="Tree JSON",
)


@click.group()
@click.option(
    "--log-level", default=None, help="Log level (default from DOCTRACE_LOG_LEVEL)"
)
@click.version_option(settings.version, prog_name="doctrace")
def cli(log_level: Optional[str]) -> None:
    """Generate documentation hierarchies with trace links from source code"""
    configure_logging(log_level or settings.log_level)


@cli.command()
@config_option
@src_option
@out_option
@seed_option
@provider_option
@cache_option
@click.option(
    "--debug-dir",
    type=click.Path(file_okay=False),
    default=None,
    help="Write per-layer debug dumps here",
)
@handle_errors
def generate(
    config_path: Optional[str],
    src: Optional[str],
    out: str,
    seed: Optional[int],
    provider: Optional[str],
    cache_dir: Optional[str],
    debug_dir: Optional[str],
) -> None:
    """Run the full hierarchy pipeline and write the tree"""
    config = resolve_config(config_path, src, seed, provider, cache_dir, debug_dir)

    async def run() -> None:
        async with container(config) as deps:
            with stage_timer("generate", project=config.project_name):
                result = await deps.pipeline.run_pipeline()
        if config.debug_dir:
            for diagnostics in result.diagnostics:
                write_layer_diagnostics(config.debug_dir, diagnostics)
        await FileTreeRepository().save(out, result.tree)

    asyncio.run(run())


@cli.command()
@config_option
@src_option
@out_option
@seed_option
@provider_option
@cache_option
@click.option(
    "--cutoff",
    type=float,
    default=None,
    help="Normalized similarity cutoff (default from config)",
)
@handle_errors
def baseline(
    config_path: Optional[str],
    src: Optional[str],
    out: str,
    seed: Optional[int],
    provider: Optional[str],
    cache_dir: Optional[str],
    cutoff: Optional[float],
) -> None:
    """Run the non-clustered baseline generator and write the tree"""
    config = resolve_config(config_path, src, seed, provider, cache_dir)
    if cutoff is not None:
        config = config.model_copy(update={"baseline_cutoff": cutoff})

    async def run() -> None:
        async with container(config) as deps:
            with stage_timer("baseline", project=config.project_name):
                result = await deps.baseline.run_baseline()
        await FileTreeRepository().save(out, result.tree)

    asyncio.run(run())


@cli.command()
@config_option
@src_option
@click.option(
    "--out",
    type=click.Path(dir_okay=False),
    default=None,
    help="Optional tree JSON holding only the summaries",
)
@seed_option
@provider_option
@cache_option
@handle_errors
def summarize(
    config_path: Optional[str],
    src: Optional[str],
    out: Optional[str],
    seed: Optional[int],
    provider: Optional[str],
    cache_dir: Optional[str],
) -> None:
    """Run only code summarization (warms the cache)"""
    config = resolve_config(config_path, src, seed, provider, cache_dir)

    async def run() -> None:
        async with container(config) as deps:
            layer = await deps.pipeline.build_code_layer()
            tree = deps.pipeline.finalize(
                ArtifactTree(project_name=config.project_name, layers=[layer]),
                "summary",
            )
        if out:
            await FileTreeRepository().save(out, tree)
        click.echo(f"Summarized {len(layer)} source files", err=True)

    asyncio.run(run())


@cli.command(name="export")
@tree_option
@click.option(
    "--format", "export_format", required=True, help="markdown, dot or csv-links"
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False),
    default=None,
    help="Output file (stdout when omitted)",
)
@handle_errors
def export_command(tree_path: str, export_format: str, out: Optional[str]) -> None:
    """Render a tree as markdown, DOT or CSV links"""
    use_cases = ExportUseCases(FileTreeRepository())
    data = asyncio.run(use_cases.export_file(tree_path, export_format, out))
    if not out:
        click.echo(data.decode("utf-8"), nl=False)


@cli.command(name="eval")
@tree_option
@click.option(
    "--truth",
    "truth_path",
    required=True,
    type=click.Path(dir_okay=False),
    help="Ground truth CSV",
)
@click.option(
    "--concepts",
    "concepts_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="Concept annotations CSV",
)
@click.option(
    "--layer",
    "layer_index",
    type=int,
    default=None,
    help="Layer for covered-by (default: top)",
)
@handle_errors
def eval_command(
    tree_path: str,
    truth_path: str,
    concepts_path: Optional[str],
    layer_index: Optional[int],
) -> None:
    """Print traceability and coverage metrics as JSON"""
    tree = load_tree_file(tree_path)
    truth = parse_ground_truth(read_text(truth_path), truth_path)
    concepts: Optional[List[ConceptAnnotation]] = None
    if concepts_path:
        concepts = parse_concepts(read_text(concepts_path), concepts_path)
    report = EvaluationUseCases().evaluate(tree, truth, concepts, layer_index)
    click.echo(report.to_json())
