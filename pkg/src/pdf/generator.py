"""PDF export of markdown reports."""

import logging
import re

from markdown_pdf import MarkdownPdf, Section

from ..report.generator import ReportFormat, render

logger = logging.getLogger(__name__)

_HEADING = re.compile(r"^(#+)(\s.*)$")
_FENCE = "```"


def _normalize_headings(md):
    """Make the outline of a report acceptable to markdown-pdf.

    A heading may sit at most one level below the one before it, and the first is level 1.
    Lines inside fenced blocks are left alone: serialized graphs there carry ``#`` comments.
    """
    lines = []
    depth = 0
    fenced = False
    for line in md.split("\n"):
        if line.startswith(_FENCE):
            fenced = not fenced
        elif not fenced and (m := _HEADING.match(line)):
            depth = min(len(m.group(1)), depth + 1)
            line = "#" * depth + m.group(2)
        lines.append(line)
    return "\n".join(lines)


def convert_to_pdf(markdown_content, output_path, title=None):
    """Convert markdown content to PDF.

    Args:
        markdown_content (str): markdown text
        output_path (str | Path): where to save the PDF file
        title (str | None): document title stored in the PDF metadata
    """
    pdf = MarkdownPdf(toc_level=2)
    if title:
        pdf.meta["title"] = title
    pdf.add_section(Section(_normalize_headings(markdown_content)))
    pdf.save(str(output_path))
    logger.info("wrote %s", output_path)


def export_report_pdf(data, output_path):
    """Render a structured report as markdown and save it as PDF."""
    convert_to_pdf(render(data, ReportFormat.MARKDOWN), output_path, title=data.get("title"))
