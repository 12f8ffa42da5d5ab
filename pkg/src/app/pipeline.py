"""Basis pipeline: build, write and certify the webs of one invariant space."""

import asyncio
import itertools
import json
import logging
import random
import re
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

from src.app.emitters import extension, render
from src.config.models import RunConfig
from src.core.evaluation import InvariantVector, evaluate, proportionality, rank
from src.core.littelmann import MinusculePath, enumerate_paths, pieri_dimension, sample_paths
from src.core.triangles import Variant, from_path, to_web
from src.core.variants import ambiguous_steps, sl4_select_variants
from src.core.webs import Web, boundary, web_from_dict
from src.core.weights import Weight, canonicalize, zero

logger = logging.getLogger(__name__)


@dataclass
class BasisEntry:
    """One generated web and the path it was grown from."""

    index: int  # Position of the path in sorted enumeration order
    path: MinusculePath
    choices: tuple[Variant, ...]
    web: Web
    written_to: Path | None = None

    @property
    def tag(self) -> str:
        return "".join("r" if c is Variant.REVERSED else "s" for c in self.choices)


@dataclass
class RankReport:
    """Outcome of certifying that the generated webs form a basis."""

    boundary: tuple[int, ...]
    path_count: int
    pieri: int
    rank: int
    status: Literal["PASS", "FAIL"]
    alternates: int = 0  # Extra variant webs checked against their path's first web

    def summary(self) -> str:
        return f"rank={self.rank} |P|={self.path_count} pieri={self.pieri} {self.status}"


def certify_vectors(
    labels: tuple[int, ...], vectors: Sequence[InvariantVector], path_count: int, n: int
) -> RankReport:
    r = rank(vectors)
    pieri = pieri_dimension(n, labels)
    status: Literal["PASS", "FAIL"] = (
        "PASS" if r == path_count == pieri == len(vectors) else "FAIL"
    )
    return RankReport(labels, path_count, pieri, r, status)


class BasisPipeline:
    """
    Builds the basis webs for a run configuration.

    Per-path construction and evaluation run on a worker pool; file writes
    are serialized so that output is identical from run to run.
    """

    def __init__(self, config: RunConfig):
        """
        Initialize the pipeline.

        Args:
            config: Run configuration
        """
        self.config = config
        self._write_lock = asyncio.Lock()
        logger.info(f"Basis pipeline initialized for SL({config.n}) boundary {config.boundary}")

    @property
    def endpoint(self) -> Weight:
        if self.config.endpoint is None:
            return zero(self.config.n)
        return canonicalize(self.config.endpoint, self.config.n)

    def paths(self) -> list[MinusculePath]:
        return enumerate_paths(self.config.n, self.config.boundary, self.endpoint)

    def selected_paths(self) -> list[tuple[int, MinusculePath]]:
        """Indexed paths to build: all of them, or a seeded sample when ``sample`` is set."""
        if self.config.sample is None:
            return list(enumerate(self.paths()))
        rng = random.Random(self.config.seed)
        picked = sample_paths(self.paths(), self.config.sample, rng)
        logger.info(f"Sampled paths {[i for i, _ in picked]} with seed {self.config.seed}")
        return picked

    def assignments(self, path: MinusculePath) -> list[tuple[Variant, ...]]:
        """Variant choices to build for ``path`` under the configured policy."""
        standard = tuple([Variant.STANDARD] * len(path))
        policy = self.config.variant_policy
        if path.n != 4 or policy == "default":
            return [standard]
        if policy == "sl4-minimal":
            return sl4_select_variants(path)
        amb = ambiguous_steps(path)
        result = []
        for combo in itertools.product(list(Variant), repeat=len(amb)):
            trial = list(standard)
            for idx, v in zip(amb, combo):
                trial[idx] = v
            result.append(tuple(trial))
        return result

    @staticmethod
    def _build(index: int, path: MinusculePath, choices: tuple[Variant, ...]) -> BasisEntry:
        return BasisEntry(index, path, choices, to_web(from_path(path, choices)))

    async def build_basis(
        self, indexed: Sequence[tuple[int, MinusculePath]] | None = None
    ) -> list[BasisEntry]:
        """Grow one web per (path, variant assignment), in path order."""
        if indexed is None:
            indexed = self.selected_paths()
        jobs = [(i, p, c) for i, p in indexed for c in self.assignments(p)]
        logger.info(f"Building {len(jobs)} webs with {self.config.pipeline.workers} workers")
        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=self.config.pipeline.workers) as pool:
            entries = await asyncio.gather(
                *(loop.run_in_executor(pool, self._build, *job) for job in jobs)
            )
        return list(entries)

    async def _write(self, entry: BasisEntry, several: bool) -> Path:
        fmt = self.config.pipeline.render_format
        name = f"web_{entry.index:04d}"
        if several:
            name += f"_{entry.tag}"
        target = self.config.pipeline.output_dir / f"{name}{extension(fmt)}"
        async with self._write_lock:
            target.write_text(render(entry.web, fmt), encoding="utf-8")
        entry.written_to = target
        logger.debug(f"Wrote {target}")
        return target

    async def write_basis(self, entries: Sequence[BasisEntry]) -> list[Path]:
        self.config.pipeline.output_dir.mkdir(parents=True, exist_ok=True)
        per_path: dict[int, int] = {}
        for e in entries:
            per_path[e.index] = per_path.get(e.index, 0) + 1
        written = await asyncio.gather(*(self._write(e, per_path[e.index] > 1) for e in entries))
        logger.info(f"Wrote {len(written)} webs to {self.config.pipeline.output_dir}")
        return list(written)

    async def evaluate_all(self, webs: Sequence[Web]) -> list[InvariantVector]:
        budget = self.config.pipeline.evaluation_budget
        loop = asyncio.get_running_loop()
        with ThreadPoolExecutor(max_workers=self.config.pipeline.workers) as pool:
            vectors = await asyncio.gather(
                *(loop.run_in_executor(pool, evaluate, w, budget) for w in webs)
            )
        return list(vectors)

    async def certify(self) -> RankReport:
        """
        Evaluate one web per path and compare the rank with |P| and the Pieri count.

        Raises:
            ValueError: If the run has a nonzero endpoint
        """
        if not self.endpoint.is_zero:
            raise ValueError("Basis certification needs closed paths (endpoint 0)")
        entries = await self.build_basis(list(enumerate(self.paths())))
        first: dict[int, BasisEntry] = {}
        for e in entries:
            first.setdefault(e.index, e)
        vectors = await self.evaluate_all([e.web for e in first.values()])
        report = certify_vectors(tuple(self.config.boundary), vectors, len(first), self.config.n)
        logger.info(f"Certificate for boundary {self.config.boundary}: {report.summary()}")
        return report


def load_web(path: Path) -> Web:
    """
    Read a web written in the JSON format.

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: If the document is not a valid web
    """
    if not path.exists():
        raise FileNotFoundError(f"Web file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"Invalid JSON in {path}: {e}") from e
    return web_from_dict(data)


_WEB_FILE = re.compile(r"^(web_\d+)(?:_[sr]+)?$")


def group_web_files(files: Sequence[Path]) -> dict[str, list[Path]]:
    """
    Group web files by the path they were grown from.

    Files written as ``web_NNNN_<variants>`` share the group ``web_NNNN``;
    any other name is a group of its own.
    """
    groups: dict[str, list[Path]] = {}
    for f in sorted(files):
        match = _WEB_FILE.match(f.stem)
        groups.setdefault(match.group(1) if match else f.stem, []).append(f)
    return groups


async def certify_directory(directory: Path, budget: int, workers: int = 4) -> RankReport:
    """
    Certify the JSON webs found in a directory as a basis.

    One web per path enters the rank. The remaining variant webs of a path
    must evaluate to nonzero vectors.

    Raises:
        FileNotFoundError: If the directory does not exist
        ValueError: If it holds no webs or webs with different boundaries
    """
    if not directory.is_dir():
        raise FileNotFoundError(f"Basis directory not found: {directory}")
    groups = group_web_files(list(directory.glob("*.json")))
    if not groups:
        raise ValueError(f"No web files in {directory}")
    files = [f for members in groups.values() for f in members]
    webs = {f: load_web(f) for f in files}
    labels = {boundary(w) for w in webs.values()}
    ranks = {w.n for w in webs.values()}
    if len(labels) != 1 or len(ranks) != 1:
        raise ValueError(f"Webs in {directory} do not share one boundary")
    n, lam = ranks.pop(), labels.pop()
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        evaluated = await asyncio.gather(
            *(loop.run_in_executor(pool, evaluate, webs[f], budget) for f in files)
        )
    vectors = dict(zip(files, evaluated))

    leads = [members[0] for members in groups.values()]
    report = certify_vectors(lam, [vectors[f] for f in leads], len(enumerate_paths(n, lam)), n)
    for members in groups.values():
        for f in members[1:]:
            report.alternates += 1
            if vectors[f].is_zero:
                logger.warning(f"{f.name} evaluates to zero")
                report.status = "FAIL"
                continue
            ratio = proportionality(vectors[f], vectors[members[0]])
            logger.debug(f"{f.name} over {members[0].name}: ratio {ratio}")
    if report.alternates:
        logger.info(f"Checked {report.alternates} variant webs")
    return report
