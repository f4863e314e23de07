"""
Log-log SVG plots of sweep results.

Rendered with matplotlib's Agg backend; the SVG hash salt is fixed and no date
metadata is written, so identical inputs give identical files.
"""

from pathlib import Path
from typing import Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from processors.bounds import ExponentFit  # noqa: E402


def write_loglog_svg(samples: Sequence[Tuple[int, int]], path: Path, fit: Optional[ExponentFit] = None,
                     title: str = "pieces against components") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    ns = np.array([n for n, _ in samples], dtype=float)
    ps = np.array([p for _, p in samples], dtype=float)

    with matplotlib.rc_context({"svg.hashsalt": "cpa-sweep", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(5, 4))
        ax.set_xscale("log")
        ax.set_yscale("log")
        if len(samples):
            ax.plot(ns, ps, "o", color="tab:blue", label="measured")
        if fit is not None:
            grid = np.linspace(ns.min(), ns.max(), 50)
            ax.plot(grid, np.exp(fit.intercept) * grid ** fit.slope, "-", color="tab:red",
                    label=f"slope {fit.slope:.3f}")
            ax.annotate(f"p ~ n^{fit.slope:.3f}", xy=(0.05, 0.9), xycoords="axes fraction")
        ax.set_xlabel("active components n")
        ax.set_ylabel("maximal pieces p")
        ax.set_title(title)
        if len(samples):
            ax.legend(loc="lower right")
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return path


__all__ = ['write_loglog_svg']
