"""
Loading inputs and rendering command reports (human text, JSON and CSV)
"""

import csv
import io
import json
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from constructions.line_families import LineFamily, line_family_from_dict
from cpa.expression import CpaExpr
from cpa.serialization import cpa_from_json
from processors.bounds import BoundReport
from processors.piece_counter import PieceDecomposition
from utils.exceptions import CpaParseError
from utils.helpers import canonical_json

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"
SWEEP_HEADER = ('n', 'd', 'pieces', 'cells', 'lemma1', 'thm2', 'ok', 'ms')


def read_text(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CpaParseError(f"cannot read input: {exc.strerror}", str(path)) from exc


def load_expression(path: Path) -> CpaExpr:
    return cpa_from_json(read_text(path))


def load_line_family(path: Path) -> LineFamily:
    """Line family document {"lines": [{"a": "p/q", "b": "p/q"}, ...]}"""
    text = read_text(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CpaParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    return line_family_from_dict(data)


def fixture_path(name: str) -> Path:
    return FIXTURES_DIR / name


def count_summary(dec: PieceDecomposition, bounds: BoundReport, arrangement_cells: Optional[int] = None) -> str:
    text = f"n={dec.n_active} pieces={dec.maximal_piece_count} cells={dec.cell_count}"
    if arrangement_cells is not None:
        text += f" arrangement_cells={arrangement_cells}"
    text += f" lemma1={bounds.lemma1_bound} thm2={bounds.thm2_facet_bound}"
    return text + (" bounds ok" if bounds.satisfied else " bounds VIOLATED")


def count_document(dec: PieceDecomposition, bounds: BoundReport, arrangement_cells: Optional[int] = None) -> dict:
    document = {"decomposition": dec.to_dict(), "bounds": bounds.to_dict()}
    if arrangement_cells is not None:
        document["decomposition"]["arrangement_cells"] = arrangement_cells
    return document


def cells_lines(dec: PieceDecomposition) -> str:
    """One canonical JSON object per convex piece"""
    return "".join(canonical_json(entry, indent=None) for entry in dec.cells_dump())


def render_csv(rows: Iterable[Sequence], header: Sequence[str] = SWEEP_HEADER) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def write_text(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def render_failures(failures: List[str]) -> str:
    return "".join(f"  - {failure}\n" for failure in failures)


__all__ = [
    'FIXTURES_DIR',
    'SWEEP_HEADER',
    'read_text',
    'load_expression',
    'fixture_path',
    'count_summary',
    'count_document',
    'cells_lines',
    'render_csv',
    'write_text',
    'render_failures',
]
