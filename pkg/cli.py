"""Command-line front end: sweeps and reproduction recipes as CSV/JSON artifacts.

Exit codes: 2 bad flags, 3 invalid input files, 4 numerical-domain errors.
Numbers in CSV and JSON artifacts carry SIGNIFICANT_DIGITS significant digits.
Artifacts go to ``--output`` (or stdout); the run manifest goes to
``<output>.manifest.json`` (or stderr).
"""
import csv
import io
import json
import math
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import typer
from pydantic import BaseModel, ValidationError

from config.base import get_settings
from core.enums.run_command import RunCommand
from core.errors import SzilardError
from core.finite import frontier_sweep
from core.kelly import isomorphism_table
from core.logger import getLogger, setLevel
from core.montecarlo import simulate as run_simulation
from core.prob_core import divergence_report
from core.risk import ce_sweep as run_ce_sweep
from core.risk import strategy_summary
from models.engine import EngineSpec
from models.risk import RiskProfile
from models.simulation import SimConfig
from schemas.divergence import DEFAULT_ORDERS, DivergenceRow
from schemas.finite import FrontierRow
from schemas.kelly import KellyRow
from schemas.risk import CeSweepRow
from schemas.run import RunManifest

logger = getLogger(__name__)
settings = get_settings()

app = typer.Typer(help="Adversarial Szilard engine: risk-sensitive work extraction sweeps.",
                  no_args_is_help=True, add_completion=False)

EXIT_INVALID_INPUT = 3
EXIT_DOMAIN_ERROR = 4


@app.callback()
def main(log_level: Optional[str] = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING or ERROR")):
    if log_level is not None:
        try:
            setLevel(log_level)
        except ValueError as error:
            raise typer.BadParameter(str(error))


def _fail(code: int, message: str) -> None:
    typer.echo(f"error: {message}", err=True)
    raise typer.Exit(code)


@contextmanager
def exit_codes():
    """Map input and domain failures to exit codes with a one-line diagnostic"""
    try:
        yield
    except ValidationError as error:
        first = error.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "input"
        _fail(EXIT_INVALID_INPUT, f"{error.error_count()} validation error(s); {location}: {first['msg']}")
    except OSError as error:
        _fail(EXIT_INVALID_INPUT, f"{type(error).__name__}: {error}")
    except SzilardError as error:
        _fail(EXIT_DOMAIN_ERROR, f"{type(error).__name__}: {error}")


def format_number(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, f".{settings.SIGNIFICANT_DIGITS}g")

    return str(value)


def round_floats(value: Any) -> Any:
    if isinstance(value, float):
        return float(format_number(value)) if math.isfinite(value) else value
    if isinstance(value, list):
        return [round_floats(item) for item in value]
    if isinstance(value, dict):
        return {key: round_floats(item) for key, item in value.items()}

    return value


def to_json(model: BaseModel) -> str:
    return json.dumps(round_floats(json.loads(model.model_dump_json())), indent=2, ensure_ascii=False) + "\n"


def to_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(value) for value in row])

    return buffer.getvalue()


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        typer.echo(text, nl=False)
    else:
        output.write_text(text, encoding="utf-8")


def _write_manifest(manifest: RunManifest, output: Optional[Path]) -> None:
    text = manifest.model_dump_json(indent=2)
    if output is None:
        typer.echo(text, err=True)
    else:
        Path(f"{output}.manifest.json").write_text(text + "\n", encoding="utf-8")


def _finish(command: RunCommand, text: str, output: Optional[Path], input_path: Path,
            parameters: Dict[str, Any], seed: Optional[int] = None) -> None:
    _emit(text, output)
    _write_manifest(RunManifest(command=command, spec_path=str(input_path),
                                output_path=None if output is None else str(output),
                                parameters=parameters, seed=seed), output)
    logger.info(f"cli: {command.value} finished, output={output or 'stdout'}")


def load_spec(path: Path, kt: Optional[float] = None) -> EngineSpec:
    spec = EngineSpec.model_validate_json(path.read_text(encoding="utf-8"))
    if kt is not None:
        spec = spec.with_kt(kt)

    return spec


def parse_r_grid(value: Optional[str]) -> Optional[List[float]]:
    """``a:b:step`` with both ends inclusive"""
    if value is None:
        return None
    try:
        start, stop, step = (float(part) for part in value.split(":"))
    except ValueError:
        raise typer.BadParameter(f"expected a:b:step, got {value!r}")
    if step <= 0 or stop < start:
        raise typer.BadParameter("step must be positive and a <= b")

    count = round((stop - start) / step)
    if abs(start + count * step - stop) > 1e-9 * max(1.0, abs(stop)):
        raise typer.BadParameter(f"step {step} does not divide [{start}, {stop}]")

    return [start + i * step for i in range(count + 1)]


def parse_float_list(value: Optional[str]) -> Optional[List[float]]:
    if value is None:
        return None
    try:
        return [float(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise typer.BadParameter(f"expected a comma separated list of numbers, got {value!r}")


def _rows(models: Iterable[BaseModel], flatten: str) -> List[List[Any]]:
    """Model dumps in field order, with the list field ``flatten`` spread in place"""
    rows = []
    for model in models:
        row = []
        for name, value in model.model_dump().items():
            row.extend(value if name == flatten else [value])
        rows.append(row)

    return rows


SpecOption = typer.Option(..., "--spec", help="Engine spec JSON: {prior, bob, kT}")
OutputOption = typer.Option(None, "--output", "-o", help="Artifact path; stdout when omitted")
KtOption = typer.Option(None, "--kT", help="Override the spec's energy scale kT")


@app.command()
def divergence(spec_path: Path = SpecOption,
               alphas: Optional[str] = typer.Option(None, "--alpha", callback=parse_float_list,
                                                    help="Comma separated orders, 'inf' allowed"),
               output: Optional[Path] = OutputOption):
    """Rényi divergences D_α(P||Q^B) over a list of orders (CSV)."""
    with exit_codes():
        spec = load_spec(spec_path)
        orders = alphas if alphas else DEFAULT_ORDERS
        report = divergence_report(spec.prior, spec.bob, orders)
        text = to_csv(DivergenceRow.header(), ([row.alpha, row.renyi_divergence] for row in report.rows))
        _finish(RunCommand.DIVERGENCE, text, output, spec_path, {"alpha": orders})


@app.command()
def strategy(spec_path: Path = SpecOption,
             r: float = typer.Option(..., "--r", help="CARA risk parameter, r != -1"),
             kt: Optional[float] = KtOption,
             output: Optional[Path] = OutputOption):
    """Optimal strategy, certainty equivalent and expected work for one r (JSON)."""
    with exit_codes():
        spec = load_spec(spec_path, kt)
        summary = strategy_summary(spec, RiskProfile(r=r))
        _finish(RunCommand.STRATEGY, to_json(summary), output, spec_path, {"r": r, "kT": spec.kt})


@app.command("ce-sweep")
def ce_sweep(spec_path: Path = SpecOption,
             r_grid: str = typer.Option(..., "--r-grid", callback=parse_r_grid, help="a:b:step, inclusive"),
             kt: Optional[float] = KtOption,
             output: Optional[Path] = OutputOption):
    """Certainty equivalent, expected work and dominance audit over an r grid (CSV)."""
    with exit_codes():
        spec = load_spec(spec_path, kt)
        rows = run_ce_sweep(spec, r_grid)
        text = to_csv(list(CeSweepRow.model_fields), ([v for v in row.model_dump().values()] for row in rows))
        _finish(RunCommand.CE_SWEEP, text, output, spec_path, {"r_grid": r_grid, "kT": spec.kt})


@app.command()
def frontier(spec_path: Path = SpecOption,
             ns: List[int] = typer.Option(..., "--n", help="Number of rounds; repeat for several"),
             eps_grid: str = typer.Option(..., "--eps-grid", "--eps", callback=parse_float_list,
                                          help="Comma separated risk budgets in (0, 1]"),
             kt: Optional[float] = KtOption,
             output: Optional[Path] = OutputOption):
    """Finite-n work bound against the exhaustive type oracle (CSV)."""
    with exit_codes():
        spec = load_spec(spec_path, kt)
        rows = frontier_sweep(spec, ns, eps_grid)
        text = to_csv(FrontierRow.header(spec.alphabet_size), _rows(rows, flatten="strategy"))
        _finish(RunCommand.FRONTIER, text, output, spec_path, {"n": ns, "eps_grid": eps_grid, "kT": spec.kt})


@app.command()
def simulate(config_path: Path = typer.Option(..., "--config", help="SimConfig JSON"),
             r: float = typer.Option(0.0, "--r", help="CARA risk parameter, r != -1"),
             kt: Optional[float] = KtOption,
             output: Optional[Path] = OutputOption):
    """Seeded Monte Carlo run of the engine (SimReport JSON)."""
    with exit_codes():
        config = SimConfig.model_validate_json(config_path.read_text(encoding="utf-8"))
        if kt is not None:
            config = config.model_copy(update={"spec": config.spec.with_kt(kt)})
        report = run_simulation(config, RiskProfile(r=r))
        _finish(RunCommand.SIMULATE, to_json(report), output, config_path,
                {"r": r, "rounds": config.rounds, "trials": config.trials, "kT": config.spec.kt},
                seed=config.seed)


@app.command("kelly-compare")
def kelly_compare(spec_path: Path = SpecOption,
                  r_values: Optional[str] = typer.Option(None, "--r", callback=parse_float_list,
                                                         help="Comma separated r of the tilted strategies"),
                  kt: Optional[float] = KtOption,
                  output: Optional[Path] = OutputOption):
    """Fair-odds growth rate next to work/kT for the same strategies (CSV)."""
    with exit_codes():
        spec = load_spec(spec_path, kt)
        rows = isomorphism_table(spec, r_values or [])
        text = to_csv(KellyRow.header(spec.alphabet_size), _rows(rows, flatten="weights"))
        _finish(RunCommand.KELLY_COMPARE, text, output, spec_path, {"r": r_values or [], "kT": spec.kt})


if __name__ == "__main__":
    app()
