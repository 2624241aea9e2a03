"""Command-line front end: `dep-err <command> --model FILE ... --output FILE`.

Commands: eval, errors, classify, parallel, simulate.  The model (and
optionally every run option) lives in a JSON config file; command-line
flags override file values.  Output is a deterministic CSV with a header
row, comma separators, LF line endings, and 17-significant-digit floats.

Exit codes: 0 success, 2 config error, 3 domain error, 4 capability error,
5 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import classify_aging, closed_form_error, error_curve
from .exceptions import (
    CapabilityError,
    ConfigError,
    DomainError,
    ValidationError,
)
from .grids import GridSpec
from .models import (
    MetricKind,
    ModelSpec,
    ValidatedModel,
    mask_to_subset,
    series_metric,
    validate_model,
)
from .parallel import parallel_relative_error, parallel_sf_ie
from .simulate import RngPolicy, estimate_system_sf

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_CAPABILITY = 4
EXIT_IO = 5

COMMANDS = ("eval", "errors", "classify", "parallel", "simulate")
STRUCTURES = ("series", "parallel")

_MODEL_KEYS = {"family", "n", "rates", "shapes", "gamma", "l", "alpha", "c",
               "delta", "m"}
_RUN_KEYS = _MODEL_KEYS | {"command", "grid", "metric", "samples", "seed",
                           "structure", "output"}
_GRID_KEYS = {"start", "stop", "count", "spacing"}


@dataclass(frozen=True)
class RunConfig:
    command: str
    model: ValidatedModel
    grid: GridSpec
    output: str
    metric: MetricKind | None = None
    samples: int | None = None
    seed: int | None = None
    structure: str = "series"

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"command: unknown command {self.command!r}")
        if self.structure not in STRUCTURES:
            raise ConfigError(f"structure: must be one of {STRUCTURES}")
        if self.command == "simulate":
            if self.samples is None or self.samples < 1:
                raise ConfigError("samples: simulate requires samples >= 1")


def model_from_dict(data: dict) -> ValidatedModel:
    """Build and validate a model from its JSON representation."""
    if not isinstance(data, dict):
        raise ConfigError("model config must be a JSON object")
    unknown = set(data) - _MODEL_KEYS
    if unknown:
        raise ConfigError(f"unknown model key(s): {sorted(unknown)}")
    if "family" not in data:
        raise ConfigError("family: missing")
    if "n" not in data:
        raise ConfigError("n: missing")
    rates = {}
    for entry in data.get("rates", []):
        if not isinstance(entry, dict) or set(entry) != {"subset", "lambda"}:
            raise ConfigError(
                "rates: each entry must be {\"subset\": [...], \"lambda\": x}"
            )
        rates[tuple(entry["subset"])] = entry["lambda"]
    spec = ModelSpec(
        family=data["family"],
        n=data["n"],
        rates=rates,
        shapes=data.get("shapes"),
        gamma=data.get("gamma"),
        stable_exponent=data.get("l"),
        alpha=data.get("alpha"),
        scales=data.get("c"),
        delta=data.get("delta"),
        m=data.get("m"),
    )
    try:
        return validate_model(spec)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc


def model_to_dict(model: ValidatedModel) -> dict:
    """Canonical JSON representation; inverse of :func:`model_from_dict`."""
    out: dict = {
        "family": model.family.value,
        "n": model.n,
        "rates": [
            {"subset": list(mask_to_subset(mask)), "lambda": rate}
            for mask, rate in model.rates.items
        ],
    }
    if model.shapes is not None:
        out["shapes"] = list(model.shapes)
    if model.family.value in ("Crowder", "LeeII"):
        out["gamma"] = model.gamma
        out["l"] = model.stable_exponent
    if model.alpha is not None:
        out["alpha"] = model.alpha
    if model.scales is not None:
        out["c"] = list(model.scales)
    if model.delta is not None:
        out["delta"] = model.delta
        out["m"] = model.m
    return out


def _grid_from_dict(data: dict) -> GridSpec:
    if not isinstance(data, dict):
        raise ConfigError("grid: must be an object")
    unknown = set(data) - _GRID_KEYS
    if unknown:
        raise ConfigError(f"grid: unknown key(s): {sorted(unknown)}")
    for key in ("start", "stop", "count"):
        if key not in data:
            raise ConfigError(f"grid.{key}: missing")
    try:
        return GridSpec(
            start=float(data["start"]),
            stop=float(data["stop"]),
            count=int(data["count"]),
            spacing=data.get("spacing", "log"),
        )
    except DomainError as exc:
        raise ConfigError(f"grid: {exc}") from exc


def parse_config(path) -> RunConfig:
    """Parse a self-contained run configuration file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - _RUN_KEYS
    if unknown:
        raise ConfigError(f"unknown config key(s): {sorted(unknown)}")
    for key in ("command", "grid", "output"):
        if key not in data:
            raise ConfigError(f"{key}: missing")
    model = model_from_dict({k: v for k, v in data.items() if k in _MODEL_KEYS})
    metric = None
    if data.get("metric") is not None:
        try:
            metric = MetricKind(data["metric"])
        except ValueError:
            raise ConfigError(f"metric: unknown metric {data['metric']!r}") from None
    return RunConfig(
        command=data["command"],
        model=model,
        grid=_grid_from_dict(data["grid"]),
        output=str(data["output"]),
        metric=metric,
        samples=data.get("samples"),
        seed=data.get("seed"),
        structure=data.get("structure", "series"),
    )


def emit_config(config: RunConfig) -> str:
    """Serialize a RunConfig to canonical JSON; parse_config round-trips it."""
    data = model_to_dict(config.model)
    data["command"] = config.command
    data["grid"] = {
        "start": config.grid.start,
        "stop": config.grid.stop,
        "count": config.grid.count,
        "spacing": config.grid.spacing,
    }
    if config.metric is not None:
        data["metric"] = config.metric.value
    if config.samples is not None:
        data["samples"] = config.samples
    if config.seed is not None:
        data["seed"] = config.seed
    data["structure"] = config.structure
    data["output"] = config.output
    return json.dumps(data, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Command execution
# ---------------------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int,)):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _run_eval(config: RunConfig) -> str:
    rows = []
    for t in config.grid.points():
        t = float(t)
        rows.append(
            [t]
            + [
                series_metric(config.model, metric, t)
                for metric in (MetricKind.SF, MetricKind.FR, MetricKind.RHR,
                               MetricKind.AI)
            ]
        )
    return _csv(["t", "sf", "fr", "rhr", "ai"], rows)


def _run_errors(config: RunConfig) -> str:
    metrics = [config.metric] if config.metric else list(MetricKind)
    rows = []
    for metric in metrics:
        curve = error_curve(config.model, metric, config.grid)
        for point in curve.points:
            closed = (
                closed_form_error(config.model, metric, point.t)
                if point.rel_err is not None
                else None
            )
            rows.append(
                [point.t, metric.value, point.dep, point.indep, point.rel_err,
                 closed]
            )
    return _csv(["t", "metric", "dep", "indep", "rel_err", "closed_form_err"],
                rows)


def _run_classify(config: RunConfig) -> str:
    verdict = classify_aging(config.model, config.grid)
    return _csv(
        ["frclass", "fraclass", "aiclass", "fr_constant", "ai_constant"],
        [[verdict.frclass, verdict.fraclass, verdict.aiclass,
          verdict.fr_constant, verdict.ai_constant]],
    )


def _run_parallel(config: RunConfig) -> str:
    rows = []
    for t in config.grid.points():
        t = float(t)
        result = parallel_sf_ie(config.model, t)
        rel = parallel_relative_error(config.model, t)
        rows.append([t, result.sf_ie, result.sf_closed, rel])
    return _csv(["t", "sf_ie", "sf_closed", "rel_err"], rows)


def _run_simulate(config: RunConfig) -> str:
    policy = RngPolicy(seed=config.seed if config.seed is not None else 0)
    rows = []
    for t in config.grid.points():
        t = float(t)
        est = estimate_system_sf(
            config.model, config.structure, t, config.samples, policy
        )
        if config.structure == "series":
            analytic = series_metric(config.model, MetricKind.SF, t)
        else:
            analytic = parallel_sf_ie(config.model, t).sf_ie
        rows.append([t, est.value, est.stderr, est.n_samples, analytic])
    return _csv(["t", "estimate", "stderr", "n", "analytic"], rows)


_RUNNERS = {
    "eval": _run_eval,
    "errors": _run_errors,
    "classify": _run_classify,
    "parallel": _run_parallel,
    "simulate": _run_simulate,
}


def run(config: RunConfig) -> None:
    """Execute the command and write the CSV artifact (all-or-nothing)."""
    text = _RUNNERS[config.command](config)
    Path(config.output).write_text(text, newline="")


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _parse_grid_arg(value: str) -> GridSpec:
    parts = value.split(":")
    if len(parts) != 4:
        raise ConfigError(f"--grid expects START:STOP:COUNT:lin|log, got {value!r}")
    spacing = {"lin": "linear", "log": "log"}.get(parts[3])
    if spacing is None:
        raise ConfigError(f"--grid spacing must be lin or log, got {parts[3]!r}")
    try:
        return GridSpec(
            start=float(parts[0]), stop=float(parts[1]), count=int(parts[2]),
            spacing=spacing,
        )
    except (ValueError, DomainError) as exc:
        raise ConfigError(f"--grid: {exc}") from exc


def build_config(argv: list[str]) -> RunConfig:
    parser = argparse.ArgumentParser(
        prog="dep-err",
        description="Series/parallel reliability metrics and the relative "
        "error of assuming independent components.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--model", required=True, help="model/run config JSON")
    parser.add_argument("--metric", choices=[m.value for m in MetricKind])
    parser.add_argument("--grid", help="START:STOP:COUNT:lin|log")
    parser.add_argument("--samples", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--structure", choices=STRUCTURES)
    parser.add_argument("--output", help="output CSV path")
    args = parser.parse_args(argv)

    try:
        text = Path(args.model).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {args.model}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {args.model}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - _RUN_KEYS
    if unknown:
        raise ConfigError(f"unknown config key(s): {sorted(unknown)}")

    model = model_from_dict({k: v for k, v in data.items() if k in _MODEL_KEYS})

    if args.grid is not None:
        grid = _parse_grid_arg(args.grid)
    elif "grid" in data:
        grid = _grid_from_dict(data["grid"])
    else:
        raise ConfigError("grid: missing (provide --grid or a grid in the config)")

    metric_name = args.metric if args.metric is not None else data.get("metric")
    metric = MetricKind(metric_name) if metric_name is not None else None

    output = args.output if args.output is not None else data.get("output")
    if output is None:
        raise ConfigError("output: missing (provide --output or output in the config)")

    return RunConfig(
        command=args.command,
        model=model,
        grid=grid,
        output=str(output),
        metric=metric,
        samples=args.samples if args.samples is not None else data.get("samples"),
        seed=args.seed if args.seed is not None else data.get("seed"),
        structure=(
            args.structure
            if args.structure is not None
            else data.get("structure", "series")
        ),
    )


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = build_config(argv)
        run(config)
    except (ConfigError, ValidationError) as exc:
        print(f"dep-err: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CapabilityError as exc:
        print(f"dep-err: capability error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except DomainError as exc:
        print(f"dep-err: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"dep-err: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
