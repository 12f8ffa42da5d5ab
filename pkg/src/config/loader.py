"""Configuration loader and validator."""

import logging
import os
import re
from pathlib import Path
from typing import Any, get_args

import yaml

from src.config.models import PipelineConfig, RenderFormat, RunConfig, VariantPolicy
from src.core.evaluation import BUDGET_ENV
from src.core.weights import Weight, canonicalize, fundamental, weight_sum

logger = logging.getLogger(__name__)

_TERM = re.compile(r"^(\d*)w(\d+)$")


def parse_boundary(boundary_str: str) -> list[int]:
    """
    Parse a boundary string.

    Supports formats:
    - w1,w3,w1,w3
    - 1,3,1,3

    Args:
        boundary_str: Comma separated orbit classes

    Returns:
        List of orbit classes

    Raises:
        ValueError: If format is invalid
    """
    labels: list[int] = []
    try:
        for part in boundary_str.split(","):
            part = part.strip().lower()
            if not part:
                continue
            labels.append(int(part[1:] if part.startswith("w") else part))
    except ValueError as e:
        raise ValueError(f"Invalid boundary format '{boundary_str}': {e}") from e
    return labels


def parse_endpoint(endpoint_str: str, n: int) -> Weight:
    """
    Parse an endpoint weight.

    Supports formats:
    - 0
    - w1+w3, 2w2
    - 2,1,1,0 (coordinates)

    Raises:
        ValueError: If format is invalid
    """
    text = endpoint_str.replace(" ", "").lower()
    if text in ("", "0"):
        return fundamental(n, 0)
    if "w" not in text:
        try:
            return canonicalize([int(c) for c in text.split(",")], n)
        except ValueError as e:
            raise ValueError(f"Invalid endpoint coordinates '{endpoint_str}': {e}") from e
    terms = []
    for part in text.split("+"):
        match = _TERM.match(part)
        if not match:
            raise ValueError(f"Invalid endpoint term '{part}' in '{endpoint_str}'")
        times = int(match.group(1) or 1)
        k = int(match.group(2))
        if not 1 <= k <= n - 1:
            raise ValueError(f"Fundamental weight w{k} does not exist for SL({n})")
        terms.extend([fundamental(n, k)] * times)
    return weight_sum(n, terms)


def validate_boundary(n: int, boundary: list[int]) -> None:
    if n < 2:
        raise ValueError(f"Invalid rank n={n}, must be >= 2")
    for k in boundary:
        if not 1 <= k <= n - 1:
            raise ValueError(f"Boundary label {k} outside [1, {n - 1}] for SL({n})")


def apply_environment(config: RunConfig) -> RunConfig:
    """
    Apply environment overrides.

    ``WEBBASIS_EVAL_BUDGET`` replaces the evaluation budget.

    Raises:
        ValueError: If the override is not a positive integer
    """
    raw = os.environ.get(BUDGET_ENV)
    if raw is not None:
        try:
            budget = int(raw)
        except ValueError as e:
            raise ValueError(f"Invalid {BUDGET_ENV}='{raw}': {e}") from e
        if budget <= 0:
            raise ValueError(f"Invalid {BUDGET_ENV}='{raw}', must be > 0")
        logger.info(f"Evaluation budget overridden by environment: {budget}")
        config.pipeline.evaluation_budget = budget
    return config


def _parse_pipeline(data: Any) -> PipelineConfig:
    if not isinstance(data, dict):
        raise ValueError("pipeline must be a dictionary")
    workers = int(data.get("workers", 4))
    if workers < 1:
        raise ValueError(f"Invalid workers '{workers}', must be >= 1")
    budget = int(data.get("evaluation_budget", 1_000_000))
    if budget <= 0:
        raise ValueError(f"Invalid evaluation_budget '{budget}', must be > 0")
    render_format = str(data.get("render_format", "json")).lower()
    if render_format not in get_args(RenderFormat):
        raise ValueError(
            f"Invalid render_format '{render_format}', must be one of: "
            f"{', '.join(get_args(RenderFormat))}"
        )
    return PipelineConfig(
        workers=workers,
        evaluation_budget=budget,
        output_dir=Path(data.get("output_dir", "output")),
        render_format=render_format,  # type: ignore[arg-type]
    )


def load_config(config_path: str | Path) -> RunConfig:
    """
    Load and validate a run configuration from a YAML file.

    Args:
        config_path: Path to configuration file

    Returns:
        Parsed configuration

    Raises:
        FileNotFoundError: If config file doesn't exist
        ValueError: If configuration is invalid
    """
    config_path = Path(config_path)

    if not config_path.exists():
        raise FileNotFoundError(f"Configuration file not found: {config_path}")

    logger.info(f"Loading configuration from {config_path}")

    with open(config_path, encoding="utf-8") as f:
        raw_config = yaml.safe_load(f)

    if not isinstance(raw_config, dict):
        raise ValueError("Configuration must be a mapping")

    try:
        if "n" not in raw_config:
            raise ValueError("Configuration must have 'n' field")
        if "boundary" not in raw_config:
            raise ValueError("Configuration must have 'boundary' field")
        n = int(raw_config["n"])

        raw_boundary = raw_config["boundary"]
        if isinstance(raw_boundary, str):
            boundary = parse_boundary(raw_boundary)
        elif isinstance(raw_boundary, list):
            boundary = [int(str(b).lower().lstrip("w")) for b in raw_boundary]
        else:
            raise ValueError("boundary must be a list or a comma separated string")
        validate_boundary(n, boundary)

        endpoint: list[int] | None = None
        if raw_config.get("endpoint") is not None:
            endpoint = list(parse_endpoint(str(raw_config["endpoint"]), n).coords)

        policy = str(raw_config.get("variant_policy", "default")).lower()
        if policy not in get_args(VariantPolicy):
            raise ValueError(
                f"Invalid variant_policy '{policy}', must be one of: "
                f"{', '.join(get_args(VariantPolicy))}"
            )

        sample: int | None = None
        if raw_config.get("sample") is not None:
            sample = int(raw_config["sample"])
            if sample < 1:
                raise ValueError(f"Invalid sample '{sample}', must be >= 1")

        pipeline = _parse_pipeline(raw_config.get("pipeline", {}))
        config = RunConfig(
            n=n,
            boundary=boundary,
            endpoint=endpoint,
            variant_policy=policy,  # type: ignore[arg-type]
            seed=int(raw_config.get("seed", 0)),
            sample=sample,
            pipeline=pipeline,
        )
    except (KeyError, ValueError, TypeError) as e:
        raise ValueError(f"Invalid configuration in {config_path}: {e}") from e

    logger.info(
        f"Loaded SL({config.n}) run: boundary {config.boundary} "
        f"({config.variant_policy} variants, {config.pipeline.workers} workers)"
    )
    return apply_environment(config)
