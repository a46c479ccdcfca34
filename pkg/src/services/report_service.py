"""Report Service - jinja2 text tables and deterministic JSON."""

import logging
from pathlib import Path
from typing import List, Sequence

from jinja2 import Environment, FileSystemLoader

from ..models.state import JobReport, ReportTable

logger = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).resolve().parent.parent / "templates"
TEMPLATE_NAME = "report.txt.j2"


def format_row(cells: Sequence[str], widths: Sequence[int]) -> str:
    return "  ".join(str(c).ljust(w) for c, w in zip(cells, widths)).rstrip()


def rule(widths: Sequence[int]) -> str:
    return "  ".join("-" * w for w in widths)


def column_widths(table: ReportTable) -> List[int]:
    widths = [len(c) for c in table.columns]
    for row in table.rows:
        for k, cell in enumerate(row[: len(widths)]):
            widths[k] = max(widths[k], len(cell))
    return widths


def create_jinja_env(template_dir: Path = TEMPLATE_DIR) -> Environment:
    """Environment for plain-text reports; nothing is escaped."""
    env = Environment(
        loader=FileSystemLoader(template_dir),
        autoescape=False,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.filters["format_row"] = format_row
    env.filters["rule"] = rule
    return env


def render_text(report: JobReport, template_dir: Path = TEMPLATE_DIR) -> str:
    template = create_jinja_env(template_dir).get_template(TEMPLATE_NAME)
    widths = [column_widths(t) for t in report.tables]
    text = template.render(report=report, widths=widths)
    logger.debug(f"Rendered {len(report.tables)} tables for {report.command}")
    return text


def render_json(report: JobReport) -> str:
    return report.model_dump_json(indent=2) + "\n"


def render(report: JobReport, as_json: bool = False) -> str:
    return render_json(report) if as_json else render_text(report)
