"""Command line front end for web basis generation and certification."""

import argparse
import asyncio
import logging
import sys
from pathlib import Path

try:
    import uvloop

    asyncio.set_event_loop_policy(uvloop.EventLoopPolicy())
    UVLOOP_AVAILABLE = True
except ImportError:
    UVLOOP_AVAILABLE = False

from src import __version__
from src.app.emitters import diagram_tikz, render
from src.app.pipeline import BasisPipeline, certify_directory, load_web
from src.config.loader import (
    apply_environment,
    load_config,
    parse_boundary,
    parse_endpoint,
    validate_boundary,
)
from src.config.models import PipelineConfig, RunConfig
from src.core.coherence import IncoherentWebError, is_coherent
from src.core.evaluation import EvaluationBudgetError, default_budget, evaluate
from src.core.triangles import from_path
from src.core.webs import WebCorruptionError, validate

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def setup_logging(log_level: str = "WARNING") -> None:
    """
    Configure logging for the application.

    Logs go to stderr; stdout carries command output only.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
    """
    level = getattr(logging, log_level.upper(), logging.WARNING)

    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        handlers=[logging.StreamHandler(sys.stderr)],
    )

    # Set asyncio log level to WARNING to reduce noise
    logging.getLogger("asyncio").setLevel(logging.WARNING)

    logger = logging.getLogger(__name__)
    if UVLOOP_AVAILABLE:
        logger.debug("uvloop enabled")
    else:
        logger.debug("uvloop not available, using default event loop")


def _add_space_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-c", "--config", type=str, help="Path to a run configuration (YAML)")
    parser.add_argument("--n", type=int, help="Rank n of SL(n)")
    parser.add_argument("--boundary", type=str, help="Boundary classes, e.g. w1,w3,w1,w3")
    parser.add_argument("--endpoint", type=str, help="Final weight, e.g. w1+w3 (default: 0)")


def _add_sample_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sample", type=int, help="Draw this many random paths instead of all")
    parser.add_argument("--seed", type=int, help="Seed for --sample (default: 0)")


def parse_arguments(argv: list[str] | None = None) -> argparse.Namespace:
    """
    Parse command line arguments.

    Returns:
        Parsed arguments
    """
    parser = argparse.ArgumentParser(
        prog="webbasis",
        description="Basis webs for invariant spaces of minuscule SL(n) representations",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s paths --n 4 --boundary w1,w3,w1,w3
  %(prog)s paths --n 3 --boundary 1,1,1,1,1,1,2,2,2 --sample 5 --seed 7
  %(prog)s basis --n 3 --boundary w1,w1,w1,w2,w2,w2 --output-dir out
  %(prog)s basis -c config/config.yaml --variants sl4-minimal
  %(prog)s check out/web_0000.json
  %(prog)s eval out/web_0000.json
  %(prog)s rank --basis-dir out
  %(prog)s render out/web_0000.json --format dot
        """,
    )
    parser.add_argument(
        "--log-level",
        type=str,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default="WARNING",
        help="Logging level (default: WARNING)",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    paths = sub.add_parser("paths", help="List dominant minuscule paths")
    _add_space_options(paths)
    _add_sample_options(paths)

    basis = sub.add_parser("basis", help="Write one basis web per path")
    _add_space_options(basis)
    _add_sample_options(basis)
    basis.add_argument("--variants", choices=["default", "sl4-minimal", "all"])
    basis.add_argument("--output-dir", type=str)
    basis.add_argument("--format", dest="render_format", choices=["json", "dot", "tikz"])
    basis.add_argument("--workers", type=int)

    check = sub.add_parser("check", help="Coherence report for a web")
    check.add_argument("web", type=str)

    ev = sub.add_parser("eval", help="Invariant vector of a web")
    ev.add_argument("web", type=str)
    ev.add_argument("--budget", type=int, help="Maximum tensor terms")

    rk = sub.add_parser("rank", help="Certify a basis by exact rank")
    _add_space_options(rk)
    rk.add_argument("--basis-dir", type=str, help="Directory of JSON webs to certify")
    rk.add_argument("--budget", type=int, help="Maximum tensor terms")
    rk.add_argument("--workers", type=int)

    rd = sub.add_parser("render", help="Render a web or a triangular diagram")
    rd.add_argument("web", type=str, nargs="?", help="JSON web file")
    _add_space_options(rd)
    rd.add_argument("--index", type=int, default=0, help="Path index when rendering a diagram")
    rd.add_argument(
        "--format", dest="render_format", choices=["json", "dot", "tikz"], default="dot"
    )

    return parser.parse_args(argv)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """
    Build the run configuration from a YAML file and/or flags; flags win.

    Raises:
        FileNotFoundError: If the configuration file doesn't exist
        ValueError: If the space is not specified or invalid
    """
    if getattr(args, "config", None):
        config = load_config(args.config)
    else:
        if args.n is None or args.boundary is None:
            raise ValueError("Either --config or both --n and --boundary are required")
        config = RunConfig(n=args.n, boundary=parse_boundary(args.boundary))
        validate_boundary(config.n, config.boundary)
        config = apply_environment(config)
    if args.n is not None and args.config:
        config.n = args.n
    if args.boundary is not None and args.config:
        config.boundary = parse_boundary(args.boundary)
        validate_boundary(config.n, config.boundary)
    if args.endpoint is not None:
        config.endpoint = list(parse_endpoint(args.endpoint, config.n).coords)

    pipeline: PipelineConfig = config.pipeline
    if getattr(args, "variants", None):
        config.variant_policy = args.variants
    if getattr(args, "output_dir", None):
        pipeline.output_dir = Path(args.output_dir)
    if getattr(args, "render_format", None):
        pipeline.render_format = args.render_format
    if getattr(args, "workers", None):
        if args.workers < 1:
            raise ValueError(f"Invalid workers '{args.workers}', must be >= 1")
        pipeline.workers = args.workers
    if getattr(args, "budget", None):
        pipeline.evaluation_budget = args.budget
    if getattr(args, "seed", None) is not None:
        config.seed = args.seed
    if getattr(args, "sample", None) is not None:
        if args.sample < 1:
            raise ValueError(f"Invalid sample '{args.sample}', must be >= 1")
        config.sample = args.sample
    return config


async def _run_command(args: argparse.Namespace) -> int:
    logger = logging.getLogger(__name__)

    if args.command == "check":
        web = load_web(Path(args.web))
        problems = validate(web).violations
        for p in problems:
            print(f"invalid: {p}")
        if problems:
            return EXIT_FAIL
        report = is_coherent(web)
        print(report.describe())
        return EXIT_OK if report.coherent else EXIT_FAIL

    if args.command == "eval":
        web = load_web(Path(args.web))
        problems = validate(web).violations
        for p in problems:
            print(f"invalid: {p}")
        if problems:
            return EXIT_FAIL
        vec = evaluate(web, budget=args.budget)
        print(vec.format())
        return EXIT_OK

    if args.command == "rank" and args.basis_dir:
        report = await certify_directory(
            Path(args.basis_dir), args.budget or default_budget(), args.workers or 4
        )
        print(report.summary())
        return EXIT_OK if report.status == "PASS" else EXIT_FAIL

    if args.command == "render" and args.web:
        print(render(load_web(Path(args.web)), args.render_format), end="")
        return EXIT_OK

    config = resolve_config(args)
    pipeline = BasisPipeline(config)

    if args.command == "paths":
        for _, path in pipeline.selected_paths():
            print(path.format())
        return EXIT_OK

    if args.command == "basis":
        entries = await pipeline.build_basis()
        for target in await pipeline.write_basis(entries):
            print(target)
        return EXIT_OK

    if args.command == "rank":
        report = await pipeline.certify()
        print(report.summary())
        return EXIT_OK if report.status == "PASS" else EXIT_FAIL

    if args.command == "render":
        paths = pipeline.paths()
        if not 0 <= args.index < len(paths):
            raise ValueError(f"Path index {args.index} out of range (0..{len(paths) - 1})")
        diagram = from_path(paths[args.index])
        if args.render_format == "tikz":
            print(diagram_tikz(diagram), end="")
        else:
            print(render(diagram.web, args.render_format), end="")
        return EXIT_OK

    logger.error(f"Unknown command {args.command}")
    return EXIT_USAGE


async def main(argv: list[str] | None = None) -> int:
    """
    Main application entry point.

    Returns:
        Exit code (0 for success or PASS, 1 for FAIL, 2 for usage errors)
    """
    args = parse_arguments(argv)
    setup_logging(args.log_level)

    logger = logging.getLogger(__name__)

    try:
        return await _run_command(args)

    except FileNotFoundError as e:
        logger.error(f"File not found: {e}")
        return EXIT_USAGE

    except EvaluationBudgetError as e:
        logger.error(f"Evaluation budget exceeded: {e}")
        return EXIT_FAIL

    except (IncoherentWebError, WebCorruptionError) as e:
        logger.error(f"Web error: {e}")
        return EXIT_FAIL

    except ValueError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_USAGE

    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_FAIL

    except Exception as e:
        logger.error(f"Unexpected error: {e}", exc_info=True)
        return EXIT_FAIL


def run() -> None:
    """
    Entry point wrapper for running the application.

    This function is used as the console script entry point.
    """
    try:
        exit_code = asyncio.run(main())
        sys.exit(exit_code)
    except KeyboardInterrupt:
        sys.exit(EXIT_FAIL)


if __name__ == "__main__":
    run()
