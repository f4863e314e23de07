"""
Cross-check suites behind `verify`. Every failure names the instance (seed,
parameters) needed to reproduce it.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List

from config.settings import Settings
from constructions.lift import clamp_for_lift, lift_clamped, reference_box
from constructions.line_families import line_family_generators
from constructions.monotone_path import longest_monotone_path, path_to_cpa
from cpa.expression import CpaExpr, leaf_components
from cpa.random_instances import random_expression
from geometry.arrangement import Hyperplane, enumerate_cells
from geometry.rational import format_rational
from oracles.paths import exhaustive_monotone_paths
from oracles.sampling import min_vertex_gap, sample_piece_lower_bound
from oracles.sign_scan import scan_coverage, sign_scan
from processors.bounds import check_bounds
from processors.piece_counter import PieceCounter
from services.reports import fixture_path, load_expression
from utils.exceptions import CpaError
from utils.logger import get_run_logger

logger = logging.getLogger(__name__)

# Largest 1-D grid the exact-resolution oracle check is allowed to use
MAX_1D_RESOLUTION = 4000


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)
    metrics: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def expect(self, condition: bool, message: str) -> None:
        self.checks += 1
        if not condition:
            self.failures.append(message)

    def to_dict(self) -> dict:
        data = {"suite": self.name, "passed": self.passed, "checks": self.checks, "failures": self.failures}
        if self.metrics:
            data["metrics"] = dict(self.metrics)
        return data


class VerifySuites:
    """Named verification suites sharing one settings object and piece counter"""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.counter = PieceCounter(settings.WITNESS_POINTS)
        self.logger = logging.getLogger(__name__)

    @property
    def suites(self) -> Dict[str, Callable[[], SuiteResult]]:
        return {
            'fig1': self.fig1,
            'bounds': self.bounds,
            'lemma6': self.lemma6,
            'oracles': self.oracles,
            'cor5': self.cor5,
            'paths': self.paths,
        }

    def run(self, name: str) -> SuiteResult:
        run_logger = get_run_logger(__name__, suite=name)
        run_logger.start("verify")
        try:
            result = self.suites[name]()
        except CpaError as exc:
            run_logger.fail("verify", exc)
            result = SuiteResult(name)
            result.expect(False, f"suite aborted: {type(exc).__name__}: {exc}")
        run_logger.complete("verify", checks=result.checks, failures=len(result.failures))
        return result

    def _bound_chain(self, result: SuiteResult, expression: CpaExpr, label: str) -> None:
        dec = self.counter.count(expression)
        report = check_bounds(dec, strict=False)
        result.expect(report.satisfied, f"{label}: bound chain violated {report.to_dict()}")

    def _rng(self, offset: int) -> random.Random:
        return random.Random(self.settings.VERIFY_SEED * 1_000_003 + offset)

    def fig1(self) -> SuiteResult:
        result = SuiteResult('fig1')
        expression = load_expression(fixture_path("fig1.json"))
        dec = self.counter.decompose(expression)
        result.expect(dec.n_active == 4, f"fig1: n_active={dec.n_active}, expected 4")
        result.expect(dec.maximal_piece_count == 5, f"fig1: pieces={dec.maximal_piece_count}, expected 5")

        minus_x = next((i for i, f in enumerate(dec.components)
                        if f.gradient == (Fraction(-1), Fraction(0)) and f.offset == 0), None)
        red = [p for p in dec.pieces if p.component == minus_x]
        result.expect(len(red) == 2, f"fig1: component -x has {len(red)} maximal pieces, expected 2")
        result.expect(check_bounds(dec, strict=False).satisfied, "fig1: bound chain violated")
        return result

    def bounds(self) -> SuiteResult:
        result = SuiteResult('bounds')
        bound = self.settings.RANDOM_COEFFICIENT_BOUND
        for k in range(50):
            rng = self._rng(k)
            self._bound_chain(result, random_expression(rng, 2, 5, bound), f"2-D seed offset {k}")
        for k in range(self.settings.ORACLE_INSTANCES):
            n = 2 + k % 5
            seed = self.settings.VERIFY_SEED + k
            family = line_family_generators('random-generic', n, seed, bound)
            planes = [Hyperplane((line.a, Fraction(-1)), -line.b) for line in family.lines]
            cells = len(enumerate_cells(planes, 2))
            expected = sum(math.comb(n, i) for i in range(3))
            result.expect(cells == expected, f"generic arrangement n={n} seed={seed}: {cells} cells, expected {expected}")
        return result

    def lemma6(self) -> SuiteResult:
        result = SuiteResult('lemma6')
        bound = self.settings.RANDOM_COEFFICIENT_BOUND
        found = 0
        attempt = 0
        while found < self.settings.LEMMA6_INSTANCES:
            offset = 10_000 + attempt
            attempt += 1
            clamped = clamp_for_lift(random_expression(self._rng(offset), 1, 6, bound), self.counter)
            if clamped.pieces > 10:
                continue
            found += 1
            for m in range(1, self.settings.LEMMA6_MAX_M + 1):
                lifted = lift_clamped(clamped, m)
                label = f"instance {attempt - 1} (seed offset {offset}), m={m}"
                dec = self.counter.decompose(lifted.expression)
                result.expect(dec.maximal_piece_count >= lifted.certified_pieces_lower_bound,
                              f"{label}: {dec.maximal_piece_count} pieces < certificate "
                              f"{lifted.certified_pieces_lower_bound}")
                leaves = len(leaf_components(lifted.expression))
                result.expect(leaves <= lifted.component_budget,
                              f"{label}: {leaves} leaf components > budget {lifted.component_budget}")
                result.expect(check_bounds(dec, strict=False).satisfied, f"{label}: bound chain violated")
        return result

    def oracles(self) -> SuiteResult:
        result = SuiteResult('oracles')
        bound = self.settings.RANDOM_COEFFICIENT_BOUND
        for k in range(self.settings.ORACLE_INSTANCES):
            label = f"1-D seed offset {20_000 + k}"
            e = random_expression(self._rng(20_000 + k), 1, 6, bound)
            by_arrangement = self.counter.decompose(e)
            by_intervals = self.counter.pieces_1d(e)
            result.expect(
                (by_arrangement.n_active, by_arrangement.cell_count, by_arrangement.maximal_piece_count)
                == (by_intervals.n_active, by_intervals.cell_count, by_intervals.maximal_piece_count),
                f"{label}: decompose and pieces_1d disagree",
            )
            self._exact_grid_check(result, e, by_arrangement.maximal_piece_count, label)

        coverages: List[Fraction] = []
        for k in range(self.settings.ORACLE_INSTANCES):
            label = f"2-D seed offset {30_000 + k}"
            e = random_expression(self._rng(30_000 + k), 2, 4, bound)
            dec = self.counter.decompose(e)
            low, high = reference_box(e)
            estimate = sample_piece_lower_bound(e, low, high, self.settings.ORACLE_RESOLUTION)
            if estimate.resolves_features:
                result.expect(estimate.count <= dec.maximal_piece_count,
                              f"{label}: grid oracle {estimate.count} > exact {dec.maximal_piece_count}")

            planes = [h for walls in dec.walls for h in walls]
            scanned = sign_scan(planes, low, high, self.settings.ORACLE_RESOLUTION)
            cells = enumerate_cells(planes, 2, self.settings.WITNESS_POINTS)
            result.expect(scanned <= {cell.signs for cell in cells},
                          f"{label}: scanned sign vector missing from enumeration")
            coverages.append(scan_coverage(scanned, cells))

        if coverages:
            result.metrics["min_scan_coverage"] = format_rational(min(coverages))
            result.metrics["mean_scan_coverage"] = format_rational(sum(coverages) / len(coverages))
            self.logger.info(f"sign scan coverage: min {result.metrics['min_scan_coverage']}, "
                             f"mean {result.metrics['mean_scan_coverage']}")
        return result

    def _exact_grid_check(self, result: SuiteResult, e: CpaExpr, exact: int, label: str) -> None:
        low, high = reference_box(e)
        gap = min_vertex_gap(e, low, high)
        if gap is None:
            resolution = 9
        else:
            resolution = math.floor(2 * (high[0] - low[0]) / gap) + 3
        if resolution > MAX_1D_RESOLUTION:
            self.logger.debug(f"{label}: skipping exact grid check at resolution {resolution}")
            return
        estimate = sample_piece_lower_bound(e, low, high, resolution)
        result.expect(estimate.count == exact, f"{label}: grid oracle {estimate.count} != exact {exact} "
                                               f"at resolution {resolution}")

    def cor5(self) -> SuiteResult:
        result = SuiteResult('cor5')
        for k in range(20):
            n = 3 + k % 6
            seed = self.settings.VERIFY_SEED + k
            family = line_family_generators('random-generic', n, seed, self.settings.RANDOM_COEFFICIENT_BOUND)
            path = longest_monotone_path(family)
            dec = self.counter.count(path_to_cpa(path, family))
            result.expect(dec.maximal_piece_count == path.length,
                          f"random-generic n={n} seed={seed}: {dec.maximal_piece_count} pieces, "
                          f"path length {path.length}")
        return result

    def paths(self) -> SuiteResult:
        result = SuiteResult('paths')
        limit = self.settings.MAX_EXHAUSTIVE_LINES
        for k in range(max(30, self.settings.ORACLE_INSTANCES)):
            n = 3 + k % (limit - 2) if limit > 3 else 3
            seed = self.settings.VERIFY_SEED + k
            family = line_family_generators('random-generic', n, seed, self.settings.RANDOM_COEFFICIENT_BOUND)
            dp = longest_monotone_path(family).length
            brute = exhaustive_monotone_paths(family, limit)
            result.expect(dp == brute, f"random-generic n={n} seed={seed}: DP {dp} != exhaustive {brute}")
        return result


__all__ = ['SuiteResult', 'VerifySuites']
