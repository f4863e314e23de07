"""
End-to-end extremal family: line family -> longest monotone path -> path
function -> iterated lift.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from constructions.lift import LiftResult, iterate_lift
from constructions.line_families import KINDS, LineFamily, convex_tangent, line_family_generators, random_generic
from constructions.monotone_path import MonotonePath, longest_monotone_path, path_to_cpa
from cpa.expression import CpaExpr
from processors.piece_counter import PieceCounter
from utils.exceptions import ConstructionError, NoPathError

logger = logging.getLogger(__name__)

FAMILY_KINDS = KINDS + ('longest-path',)
# random-generic draws tried per line count by the longest-path kind
SEARCH_SEEDS = 8


@dataclass(frozen=True)
class FamilyInstance:
    kind: str
    seed: int
    source: str
    lines: LineFamily
    path: MonotonePath
    path_function: CpaExpr
    lifted: LiftResult

    @property
    def expression(self) -> CpaExpr:
        return self.lifted.expression

    @property
    def path_pieces_lower_bound(self) -> int:
        """m^(d-1) times the path length, before the clamp adds its two constant ends"""
        return self.lifted.m ** (self.lifted.d - 1) * self.path.length

    def certificate(self) -> dict:
        return {
            "family": self.kind,
            "seed": self.seed,
            "source": self.source,
            "n_lines": len(self.lines),
            "path_length": self.path.length,
            "path_pieces_lower_bound": self.path_pieces_lower_bound,
            "lines": self.lines.to_dict(),
            "path": self.path.to_dict(),
            **self.lifted.certificate(),
        }


def longest_path_family(n: int, seed: int = 0, coefficient_bound: int = 10,
                        tries: int = SEARCH_SEEDS) -> Tuple[LineFamily, MonotonePath, str]:
    """
    The family with the longest monotone path among the convex-tangent family
    and random-generic draws with seeds seed .. seed + tries - 1. Ties keep the
    earlier candidate, convex-tangent first.
    """
    candidates: List[Tuple[str, LineFamily]] = [('convex-tangent', convex_tangent(n))]
    candidates += [(f'random-generic seed {s}', random_generic(n, s, coefficient_bound))
                   for s in range(seed, seed + tries)]

    best: Optional[Tuple[LineFamily, MonotonePath, str]] = None
    for source, family in candidates:
        try:
            path = longest_monotone_path(family)
        except NoPathError:
            continue
        if best is None or path.length > best[1].length:
            best = (family, path, source)
    if best is None:
        raise NoPathError(f"no {n}-line candidate family has a monotone path")
    logger.info(f"longest-path family for {n} lines: {best[2]}, length {best[1].length}")
    return best


def family_with_path(kind: str, n: int, seed: int = 0,
                     coefficient_bound: int = 10) -> Tuple[LineFamily, MonotonePath, str]:
    """Line family of the given kind with its longest monotone path and a label for where it came from"""
    if kind == 'longest-path':
        return longest_path_family(n, seed, coefficient_bound)
    if kind not in KINDS:
        raise ConstructionError(f"unknown line family kind {kind!r}; expected one of {', '.join(FAMILY_KINDS)}")
    lines = line_family_generators(kind, n, seed, coefficient_bound)
    source = f'{kind} seed {seed}' if kind == 'random-generic' else kind
    return lines, longest_monotone_path(lines), source


def lift_line_family(d: int, lines: LineFamily, m: Optional[int] = None, kind: str = 'file', seed: int = 0,
                     counter: Optional[PieceCounter] = None, path: Optional[MonotonePath] = None,
                     source: Optional[str] = None) -> FamilyInstance:
    """Lift the longest-path function of a given line family to R^d; m defaults to the line count"""
    if d < 1:
        raise ConstructionError(f"dimension must be >= 1, got {d}")
    m = len(lines) if m is None else m
    path = path or longest_monotone_path(lines)
    path_function = path_to_cpa(path, lines)
    lifted = iterate_lift(path_function, d, m, counter)
    logger.info(f"{kind} family: {len(lines)} lines, path length {path.length}, d={d}, m={m}, "
                f"certificate {lifted.certified_pieces_lower_bound}")
    return FamilyInstance(kind, seed, source or kind, lines, path, path_function, lifted)


def thm8_family(d: int, n_lines: int, m: Optional[int] = None, kind: str = 'longest-path',
                seed: int = 0, counter: Optional[PieceCounter] = None) -> FamilyInstance:
    """Generate an n-line family of the given kind and lift its longest-path function to R^d"""
    if d < 1:
        raise ConstructionError(f"dimension must be >= 1, got {d}")
    if n_lines < 2:
        raise ConstructionError(f"need at least 2 lines, got {n_lines}")
    lines, path, source = family_with_path(kind, n_lines, seed)
    return lift_line_family(d, lines, m, kind, seed, counter, path, source)


def sweep_lines_for(m: int) -> int:
    """Line count paired with m in the growth sweep"""
    return m + 2


__all__ = [
    'FAMILY_KINDS',
    'FamilyInstance',
    'longest_path_family',
    'family_with_path',
    'lift_line_family',
    'thm8_family',
    'sweep_lines_for',
]
