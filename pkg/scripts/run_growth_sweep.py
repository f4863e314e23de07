#!/usr/bin/env python3
"""
Growth sweep of the end-to-end extremal family at d=2: writes the CSV, the
longest path length behind every row and a log-log plot, and checks that
every pairwise slope lies in (2, 3].
"""

import argparse
import logging
import sys
from pathlib import Path

from config.settings import Settings
from constructions.families import FAMILY_KINDS, sweep_lines_for
from services.plot_writer import write_loglog_svg
from services.reports import render_csv, write_text
from services.sweep_runner import SweepResult, SweepRunner
from utils.logger import setup_logger

PATHS_HEADER = ('m', 'lines', 'path_length')


def growth_sweep(m_max: int = 6, workers: int = 1, family: str = 'longest-path', seed: int = 0) -> SweepResult:
    settings = Settings(SWEEP_WORKERS=workers)
    runner = SweepRunner(settings)
    return runner.run(runner.build_tasks('thm8-family', list(range(2, m_max + 1)), 2, seed, family))


def slopes_in_window(result: SweepResult) -> bool:
    return result.fit is not None and all(2.0 < s <= 3.0 for s in result.fit.pairwise)


def run_growth_sweep(out_dir: Path, m_max: int = 6, workers: int = 1, family: str = 'longest-path') -> bool:
    setup_logger('INFO')
    logger = logging.getLogger(__name__)

    result = growth_sweep(m_max, workers, family)
    ms = [m for m in range(2, m_max + 1) if m not in result.skipped]
    write_text(out_dir / "growth.csv", render_csv(row.as_csv() for row in result.rows))
    write_text(out_dir / "growth_paths.csv",
               render_csv(([m, sweep_lines_for(m), length] for m, length in zip(ms, result.path_lengths)),
                          PATHS_HEADER))
    write_loglog_svg(result.samples, out_dir / "growth.svg", result.fit, title=f"thm8-family ({family}), d=2")

    if result.fit is None:
        logger.error("Not enough rows with increasing n to fit a slope")
        return False
    logger.info(f"Fitted slope {result.fit.slope:.4f}")
    for (n, p), slope in zip(result.samples[1:], result.fit.pairwise):
        logger.info(f"n={n} p={p} pairwise slope {slope:.4f}")
    ok = slopes_in_window(result)
    if not ok:
        logger.error("Pairwise slope outside (2, 3]")
    return ok


def main():
    parser = argparse.ArgumentParser(description="Growth sweep of the extremal family")
    parser.add_argument('--out', type=Path, default=Path("out"))
    parser.add_argument('--m-max', type=int, default=6)
    parser.add_argument('--workers', type=int, default=1)
    parser.add_argument('--family', choices=FAMILY_KINDS, default='longest-path')
    args = parser.parse_args()
    sys.exit(0 if run_growth_sweep(args.out, args.m_max, args.workers, args.family) else 3)


if __name__ == "__main__":
    main()
