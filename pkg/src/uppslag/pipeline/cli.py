"""Command-line entry point.

    uppslag --workdir runs/demo ingest
    uppslag --workdir runs/demo run-all
    uppslag --workdir runs/demo eval match gold/match_gold.jsonl
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path

import click

from ..errors import UppslagError
from .config import PipelineConfig, load_config
from .evaluate import EVALUABLE, evaluate
from .stages import STAGE_ORDER, run_all, run_stage


def _load(ctx) -> tuple[PipelineConfig, Path]:
    config = load_config(ctx.obj["config_path"])
    if ctx.obj["seed"] is not None:
        config.seed = ctx.obj["seed"]
    return config, Path(ctx.obj["workdir"])


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="YAML config file; defaults apply when omitted.")
@click.option("--workdir", type=click.Path(file_okay=False), default="runs/default", show_default=True,
              help="Directory for stage artifacts and the run manifest.")
@click.option("--seed", type=int, default=None, help="Override the config seed.")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging.")
@click.pass_context
def main(ctx, config_path, workdir, seed, verbose):
    """Encyclopedia facsimile pipeline: segment, align and map two editions."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.ensure_object(dict)
    ctx.obj.update(config_path=config_path, workdir=workdir, seed=seed)


def _stage_command(stage: str):
    @main.command(name=stage)
    @click.pass_context
    def _cmd(ctx):
        config, workdir = _load(ctx)
        artifacts = run_stage(stage, config, workdir)
        for path in artifacts:
            click.echo(str(path))

    _cmd.__doc__ = f"Run the {stage} stage."
    return _cmd


for _stage in STAGE_ORDER:
    if _stage != "link":
        _stage_command(_stage)


@main.command(name="link")
@click.option("--api-mode", type=click.Choice(["live", "record", "replay"]), default=None,
              help="Override linking.api_mode.")
@click.option("--rate-limit", type=float, default=None, help="Live requests per second.")
@click.option("--link-threshold", type=float, default=None, help="Override linking.threshold.")
@click.pass_context
def link_cmd(ctx, api_mode, rate_limit, link_threshold):
    """Run the link stage (knowledge-graph linking of location entries)."""
    config, workdir = _load(ctx)
    if api_mode is not None:
        config.linking.api_mode = api_mode
    if rate_limit is not None:
        config.linking.rate_limit = rate_limit
    if link_threshold is not None:
        config.linking.threshold = link_threshold
    for path in run_stage("link", config, workdir):
        click.echo(str(path))


@main.command(name="run-all")
@click.pass_context
def run_all_cmd(ctx):
    """Run every stage in order."""
    config, workdir = _load(ctx)
    for stage, artifacts in run_all(config, workdir).items():
        click.echo(f"{stage}: {len(artifacts)} artifacts")


@main.command(name="eval")
@click.argument("stage", type=click.Choice(list(EVALUABLE)))
@click.argument("gold_path", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def eval_cmd(ctx, stage, gold_path):
    """Score STAGE against GOLD_PATH and write the report."""
    config, workdir = _load(ctx)
    metrics = evaluate(stage, gold_path, config, workdir)
    for name, m in metrics.items():
        click.echo(f"{name}: P={m.precision:.3f} R={m.recall:.3f} F1={m.f1:.3f}")


def entrypoint() -> None:
    try:
        main(standalone_mode=True)
    except UppslagError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    entrypoint()
