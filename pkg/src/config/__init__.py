"""Configuration package."""

from src.config.loader import (
    apply_environment,
    load_config,
    parse_boundary,
    parse_endpoint,
    validate_boundary,
)
from src.config.models import PipelineConfig, RenderFormat, RunConfig, VariantPolicy

__all__ = [
    "PipelineConfig",
    "RenderFormat",
    "RunConfig",
    "VariantPolicy",
    "apply_environment",
    "load_config",
    "parse_boundary",
    "parse_endpoint",
    "validate_boundary",
]
