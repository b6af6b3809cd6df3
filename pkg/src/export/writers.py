"""
CSV and JSON writers for scan, trace and figure results.

CSV files have a fixed header and 17-significant-digit numbers, so
identical runs produce identical bytes. JSON output is an object with
``config``, ``summary`` and ``rows``, whose row objects use the CSV
column names.
"""

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from export.utils import prepare_output_path
from scan.boundary import BoundaryTrace
from scan.figures import FigureCurves
from scan.grid import ClassifiedGrid
from utils.formatting import format_value, json_value

logger = logging.getLogger(__name__)

SCAN_COLUMNS = ("a", "c", "f", "A", "C", "verdict", "slack", "oracle_class", "agree")
TRACE_COLUMNS = ("ray_angle", "a", "c", "slack")
FIGURE_COLUMNS = ("x", "curve_left", "curve_right")
FORMATS = ("csv", "json")


class ExportError(OSError):
    """Raised when a result file cannot be written."""
    pass


class TableExporter:
    """Renders a table of row dicts as CSV or JSON and writes it."""

    def __init__(
        self,
        columns: Sequence[str],
        rows: Iterable[Dict[str, Any]],
        config: Optional[Dict[str, Any]] = None,
        summary: Optional[Dict[str, Any]] = None,
    ):
        self.columns = tuple(columns)
        self.rows: List[Dict[str, Any]] = list(rows)
        self.config = dict(config or {})
        self.summary = dict(summary or {})

    def render_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(row[name]) for name in self.columns])
        return buffer.getvalue()

    def render_json(self) -> str:
        document = {
            "config": {k: json_value(v) for k, v in self.config.items()},
            "summary": {k: json_value(v) for k, v in self.summary.items()},
            "rows": [{name: json_value(row[name]) for name in self.columns} for row in self.rows],
        }
        return json.dumps(document, indent=2) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.render_csv()
        if fmt == "json":
            return self.render_json()
        raise ValueError(f"Invalid format: {fmt}. Must be one of {list(FORMATS)}")

    def export(self, fmt: str, output_path: Path) -> Path:
        """Write the rendered table to output_path.

        Raises:
            ExportError: If the file cannot be written.
        """
        content = self.render(fmt)
        try:
            path = prepare_output_path(Path(output_path))
            path.write_text(content, encoding="utf-8")
        except OSError as e:
            raise ExportError(f"Failed to write {fmt.upper()} output to {output_path}: {e}")
        logger.info("%s export saved: %s (%d rows)", fmt.upper(), path, len(self.rows))
        return path


def scan_table(grid: ClassifiedGrid, config: Optional[Dict[str, Any]] = None) -> TableExporter:
    return TableExporter(
        SCAN_COLUMNS,
        (cell.as_row() for cell in grid.cells),
        config=config,
        summary=grid.summary.to_dict(),
    )


def trace_table(trace: BoundaryTrace, config: Optional[Dict[str, Any]] = None) -> TableExporter:
    """Trace rows ordered by ray angle."""
    points = sorted(trace.points, key=lambda p: p.ray_angle)
    summary = {
        "fixed_f": trace.fixed_f,
        "points": len(points),
        "method_tol": trace.method_tol,
        "seed_a": trace.seed[0],
        "seed_c": trace.seed[1],
        "max_abs_slack": trace.max_abs_slack,
    }
    return TableExporter(TRACE_COLUMNS, (p.as_row() for p in points), config=config, summary=summary)


def figure_table(curves: FigureCurves, config: Optional[Dict[str, Any]] = None) -> TableExporter:
    summary = {"curve": curves.label, "samples": int(curves.x.size), "sign_changes": curves.sign_changes}
    return TableExporter(FIGURE_COLUMNS, curves.rows(), config=config, summary=summary)


def read_trace_csv(path: Path) -> List[Dict[str, float]]:
    """Read a trace CSV back into float rows."""
    try:
        with open(path, newline="", encoding="utf-8") as handle:
            reader = csv.DictReader(handle)
            if tuple(reader.fieldnames or ()) != TRACE_COLUMNS:
                raise ValueError(f"Not a trace file: {path} has columns {reader.fieldnames}")
            return [{k: float(v) for k, v in row.items()} for row in reader]
    except OSError as e:
        raise ExportError(f"Failed to read trace file {path}: {e}")
