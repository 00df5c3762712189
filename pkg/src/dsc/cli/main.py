import json
import logging
import time
from dataclasses import dataclass
from pathlib import Path

import click
from dotenv import load_dotenv
from pydantic import ValidationError

from dsc.cli.experiments import get_all_experiment_info, get_experiment
from dsc.cli.output import describe_version, write_json, write_manifest, write_table
from dsc.core.enums import ExperimentKind
from dsc.core.errors import ConfigError, NumericalError, RhsDivergentError
from dsc.core.settings import settings
from dsc.schema import ExperimentConfig, RunManifest

logger = logging.getLogger(__name__)

EXIT_INTERNAL = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


@dataclass
class RunOptions:
    config_path: Path | None
    seed: int | None
    out_dir: Path


def _inline_fixtures(raw: dict, root: Path) -> dict:
    """Replace ``symbol`` / ``function`` entries given as file names by the file contents."""
    for key in ("symbol", "function"):
        reference = raw.get(key)
        if isinstance(reference, str):
            path = root / reference
            if not path.is_file():
                raise ConfigError(f"Fixture file {path} referenced by {key!r} does not exist")
            raw[key] = json.loads(path.read_text(encoding="utf-8"))
    return raw


def load_config(path: Path | None) -> ExperimentConfig:
    if path is None:
        raise ConfigError("No config file given; pass --config PATH")
    if not path.is_file():
        raise ConfigError(f"Config file {path} does not exist")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"Config file {path} is not valid JSON: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigError(f"Config file {path} must hold a JSON object")
    return ExperimentConfig.model_validate(_inline_fixtures(raw, path.parent))


def run_experiment(
    options: RunOptions, default: ExperimentKind, allowed: tuple[ExperimentKind, ...]
) -> dict[str, bool]:
    timings: dict[str, float] = {}
    started = time.perf_counter()
    config = load_config(options.config_path)
    kind = config.experiment or default
    if kind not in allowed:
        raise ConfigError(f"Config is for experiment {kind!r}, not {', '.join(allowed)}")
    seed = options.seed if options.seed is not None else config.seed
    seed = settings.DSC_SEED if seed is None else seed
    output = Path(config.output_path) if config.output_path else options.out_dir / f"{kind}.csv"
    config = config.model_copy(
        update={"experiment": kind, "seed": seed, "output_path": str(output)}
    )
    timings["load"] = time.perf_counter() - started

    logger.info(f"Running {kind} with seed {seed} on {settings.DSC_JOBS} jobs")
    started = time.perf_counter()
    result = get_experiment(kind).runner(config, seed)
    timings["run"] = time.perf_counter() - started

    started = time.perf_counter()
    outputs = [write_table(result.frame, output, result.header)]
    if result.extras is not None:
        outputs.append(write_json(result.extras, output.with_suffix(".json")))
    timings["write"] = time.perf_counter() - started
    manifest = RunManifest(
        version=describe_version(),
        experiment=kind,
        seed=seed,
        jobs=settings.DSC_JOBS,
        config=config.model_dump(mode="json", by_alias=True),
        outputs=[str(p) for p in outputs],
        flags=result.flags,
        timings=timings,
    )
    write_manifest(manifest, output.with_suffix(".manifest.json"))
    return result.flags


def _guarded_run(ctx: click.Context, default: ExperimentKind, *allowed: ExperimentKind) -> None:
    options: RunOptions = ctx.obj
    try:
        flags = run_experiment(options, default, allowed or (default,))
    except (ConfigError, ValidationError) as e:
        click.echo(f"Config error: {e}", err=True)
        ctx.exit(EXIT_CONFIG)
    except RhsDivergentError as e:
        click.echo(f"Diverged: {e}", err=True)
        ctx.exit(0)
    except NumericalError as e:
        click.echo(f"Numerical error: {e}", err=True)
        ctx.exit(EXIT_NUMERICAL)
    except Exception as e:
        logger.exception("Experiment failed")
        click.echo(f"Internal error: {e}", err=True)
        ctx.exit(EXIT_INTERNAL)
    raised = sorted(name for name, value in flags.items() if value)
    click.echo(f"{default}: done" + (f" (flags: {', '.join(raised)})" if raised else ""))


@click.group()
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="JSON experiment config.",
)
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes.")
@click.option("--seed", type=int, default=None, help="RNG seed, overriding the config.")
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Output directory.",
)
@click.pass_context
def cli(
    ctx: click.Context,
    config_path: Path | None,
    jobs: int | None,
    seed: int | None,
    out_dir: Path | None,
) -> None:
    """Mean counting functions, Jessen functions and weighted norms of Dirichlet series."""
    logging.basicConfig(
        level=settings.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s"
    )
    if jobs is not None:
        settings.DSC_JOBS = jobs
    ctx.obj = RunOptions(config_path, seed, out_dir or Path(settings.DSC_OUT))


def _simple_command(name: str, kind: ExperimentKind, help_text: str) -> None:
    @cli.command(name=name, help=help_text)
    @click.pass_context
    def command(ctx: click.Context) -> None:
        _guarded_run(ctx, kind)


_simple_command("count", ExperimentKind.COUNT, "Iterated limits of mean counting functions.")
_simple_command("jessen", ExperimentKind.JESSEN, "Jessen functions and their right-derivatives.")
_simple_command("polytorus", ExperimentKind.POLYTORUS, "Monte Carlo averages over characters.")
_simple_command("stanton", ExperimentKind.STANTON, "Both sides of the Stanton-type formula.")
_simple_command("kernel", ExperimentKind.KERNEL, "Reproducing kernel norms and J_a values.")
_simple_command("schwarz", ExperimentKind.SCHWARZ, "Schwarz-lemma constant of a G0 symbol.")
_simple_command("littlewood", ExperimentKind.LITTLEWOOD, "Littlewood-type upper bounds.")
_simple_command("ratio", ExperimentKind.RATIO, "Boundary ratio profiles.")
_simple_command("submean", ExperimentKind.SUBMEAN, "Submean value checks over disks.")
_simple_command("transfer", ExperimentKind.TRANSFER, "Half-strip to disk transference.")


@cli.command()
@click.pass_context
def identity(ctx: click.Context) -> None:
    """Weight identity (identity3) or Jessen identity (identity24), as named by the config."""
    _guarded_run(ctx, ExperimentKind.IDENTITY3, ExperimentKind.IDENTITY3, ExperimentKind.IDENTITY24)


@cli.command(name="list")
def list_experiments() -> None:
    """List the available experiments."""
    for info in get_all_experiment_info():
        click.echo(f"{info.key}: {info.description}")


def main() -> None:
    load_dotenv()
    cli()
