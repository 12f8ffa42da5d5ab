"""Configuration models."""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

VariantPolicy = Literal["default", "sl4-minimal", "all"]
RenderFormat = Literal["json", "dot", "tikz"]


@dataclass
class PipelineConfig:
    """Execution settings for the basis pipeline."""

    workers: int = 4  # Worker threads building webs (default: 4)
    evaluation_budget: int = 1_000_000  # Maximum tensor terms during evaluation
    output_dir: Path = field(default_factory=lambda: Path("output"))  # Where webs are written
    render_format: RenderFormat = "json"  # Format of written webs


@dataclass
class RunConfig:
    """Root configuration: one invariant space and how to process it."""

    n: int
    boundary: list[int]  # Orbit classes λ_1..λ_k, clockwise from the marked point
    endpoint: list[int] | None = None  # Final weight coordinates (None: closed paths)
    variant_policy: VariantPolicy = "default"  # SL(4) spine choice policy
    seed: int = 0  # Seed for the path sampler
    sample: int | None = None  # Build this many seeded random paths instead of all (None: all)
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
