"""Document loading and report rendering."""

from .document_service import DocumentService, read_document
from .report_service import render, render_json, render_text

__all__ = [
    "DocumentService",
    "read_document",
    "render",
    "render_json",
    "render_text",
]
