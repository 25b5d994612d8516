"""Batch figure renderer for the experiment harness's CSV outputs."""

from .render import FigureJob, JobError, PanelSpec, parse_manifest, render, render_panel

__version__ = "0.1.0"
