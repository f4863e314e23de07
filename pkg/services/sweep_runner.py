"""
Sweeps over a size parameter: one row per instance, computed concurrently in
a process pool and reassembled in input order.
"""

import asyncio
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from config.settings import Settings
from constructions.families import family_with_path, sweep_lines_for, thm8_family
from constructions.lift import lift_with_certificate
from constructions.monotone_path import path_to_cpa
from cpa.expression import leaf_components
from cpa.serialization import cpa_from_json
from processors.bounds import ExponentFit, check_bounds, fit_exponent, thm2_facet_bound
from processors.piece_counter import PieceCounter
from utils.exceptions import ConstructionError
from utils.helpers import gather_with_concurrency
from utils.logger import get_run_logger

logger = logging.getLogger(__name__)

SWEEP_KINDS = ('lift', 'thm8-family', 'paths')


@dataclass(frozen=True)
class SweepTask:
    kind: str
    value: int
    d: int
    seed: int
    family_kind: str
    base_json: Optional[str]
    witness_points: int
    timing: bool


@dataclass(frozen=True)
class SweepRow:
    n: int
    d: int
    pieces: int
    cells: int
    lemma1: int
    thm2: int
    ok: bool
    ms: int
    path_length: Optional[int] = None

    def as_csv(self) -> List[str]:
        return [str(self.n), str(self.d), str(self.pieces), str(self.cells),
                str(self.lemma1), str(self.thm2), str(self.ok).lower(), str(self.ms)]


@dataclass
class SweepResult:
    kind: str
    rows: List[SweepRow] = field(default_factory=list)
    skipped: List[int] = field(default_factory=list)
    fit: Optional[ExponentFit] = None

    @property
    def samples(self) -> List[Tuple[int, int]]:
        return [(row.n, row.pieces) for row in self.rows]

    @property
    def path_lengths(self) -> List[Optional[int]]:
        """Longest monotone path length behind each row, None for lift rows"""
        return [row.path_length for row in self.rows]


def predicted_cells(task: SweepTask) -> int:
    """Facet bound at the component budget of the instance"""
    if task.kind == 'paths':
        return thm2_facet_bound(max(task.value, 1), 1)
    if task.kind == 'lift':
        base_leaves = len(leaf_components(cpa_from_json(task.base_json)))
        return thm2_facet_bound(base_leaves + 2 + 2 * task.value, task.d)
    budget = sweep_lines_for(task.value) + (task.d - 1) * (2 + 2 * task.value)
    return thm2_facet_bound(budget, task.d)


def compute_row(task: SweepTask) -> SweepRow:
    """Build and decompose one instance; runs in a worker process"""
    started = time.perf_counter()
    counter = PieceCounter(task.witness_points)

    path_length = None
    if task.kind == 'lift':
        base = cpa_from_json(task.base_json)
        expression = lift_with_certificate(base, task.value, counter).expression
    elif task.kind == 'thm8-family':
        instance = thm8_family(task.d, sweep_lines_for(task.value), task.value,
                               task.family_kind, task.seed, counter)
        expression = instance.expression
        path_length = instance.path.length
    else:
        family, path, _ = family_with_path(task.family_kind, task.value, task.seed)
        dec = counter.count(path_to_cpa(path, family))
        report = check_bounds(dec)
        ms = int((time.perf_counter() - started) * 1000) if task.timing else 0
        return SweepRow(task.value, 1, path.length, report.cells, report.lemma1_bound,
                        report.thm2_facet_bound, report.satisfied and dec.maximal_piece_count == path.length, ms,
                        path.length)

    report = check_bounds(counter.count(expression))
    ms = int((time.perf_counter() - started) * 1000) if task.timing else 0
    return SweepRow(report.n, report.d, report.measured_pieces, report.cells,
                    report.lemma1_bound, report.thm2_facet_bound, report.satisfied, ms, path_length)


class SweepRunner:
    """Runs a sweep kind over a range of sizes under the configured guard"""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.logger = logging.getLogger(__name__)

    def build_tasks(self, kind: str, values: Sequence[int], d: int, seed: int = 0,
                    family_kind: str = 'longest-path', base_json: Optional[str] = None,
                    timing: bool = False) -> List[SweepTask]:
        if kind not in SWEEP_KINDS:
            raise ConstructionError(f"unknown sweep kind {kind!r}; expected one of {', '.join(SWEEP_KINDS)}")
        if kind == 'lift' and base_json is None:
            raise ConstructionError("lift sweep needs a base function")
        if kind == 'thm8-family' and d < 2:
            raise ConstructionError("thm8-family sweep needs d >= 2")
        if kind == 'paths':
            d = 1
        if any(v < 1 for v in values):
            raise ConstructionError("sweep values must be positive")
        return [SweepTask(kind, v, d, seed, family_kind, base_json, self.settings.WITNESS_POINTS, timing)
                for v in values]

    def guard(self, tasks: Sequence[SweepTask]) -> Tuple[List[SweepTask], List[int]]:
        kept, skipped = [], []
        for task in tasks:
            predicted = predicted_cells(task)
            if predicted > self.settings.SWEEP_MAX_PREDICTED_CELLS:
                self.logger.warning(f"skipping {task.kind}={task.value}: predicted {predicted} cells "
                                    f"exceeds guard {self.settings.SWEEP_MAX_PREDICTED_CELLS}")
                skipped.append(task.value)
            else:
                kept.append(task)
        return kept, skipped

    async def run_async(self, tasks: Sequence[SweepTask]) -> List[SweepRow]:
        workers = self.settings.SWEEP_WORKERS
        if workers <= 1:
            return [compute_row(task) for task in tasks]

        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            async def run_one(task: SweepTask) -> SweepRow:
                return await loop.run_in_executor(pool, compute_row, task)

            return await gather_with_concurrency([run_one(task) for task in tasks], workers)

    def run(self, tasks: Sequence[SweepTask]) -> SweepResult:
        kind = tasks[0].kind if tasks else 'empty'
        run_logger = get_run_logger(__name__, kind=kind)
        run_logger.start("sweep", instances=len(tasks))

        kept, skipped = self.guard(tasks)
        result = SweepResult(kind, skipped=skipped)
        try:
            result.rows = asyncio.run(self.run_async(kept))
        except Exception as exc:
            run_logger.fail("sweep", exc)
            raise

        if any(length is not None for length in result.path_lengths):
            run_logger.metric("path_lengths", result.path_lengths)

        if len(result.rows) >= 3 and all(a < b for (a, _), (b, _) in zip(result.samples, result.samples[1:])):
            result.fit = fit_exponent(result.samples)
            run_logger.metric("slope", round(result.fit.slope, 6))
        run_logger.complete("sweep", rows=len(result.rows), skipped=len(skipped))
        return result


__all__ = ['SWEEP_KINDS', 'SweepTask', 'SweepRow', 'SweepResult', 'SweepRunner', 'compute_row', 'predicted_cells']
