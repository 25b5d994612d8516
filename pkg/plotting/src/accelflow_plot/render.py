"""Figure rendering from an experiment manifest and its CSVs.

The renderer knows nothing about models or methods: panels are declared in
the manifest as ``panel=EXPERIMENT:file`` lines, one line per contributing
CSV, and the panel name's suffix selects the layout:

* ``-traj`` -- phase plot of the first two coordinates, one line per CSV;
* ``-zoom`` -- the same, with axis limits framed on the tail of the first
  (reference) series;
* ``-ferr`` -- objective error f - f* against the iteration index,
  logarithmic vertical axis;
* ``-xerr`` / ``-herr`` -- a deviation series (``err`` column) against the
  iteration index, logarithmic vertical axis.

Rendering is read-only over its inputs and deterministic: fixed figure
geometry, fixed style cycle, no timestamps in the payload we control.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

KINDS = ("traj", "zoom", "ferr", "xerr", "herr")

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_STYLES = ("-", "--", "-.", ":", "-", "--")


class JobError(Exception):
    """A panel could not be rendered; the message names the offending file."""


@dataclass(frozen=True)
class FigureJob:
    """What to render: a manifest, an optional panel selection, and the target."""

    manifest: str
    out_dir: str
    panels: Optional[tuple] = None      # None renders every panel
    image_format: str = "png"


@dataclass
class PanelSpec:
    name: str
    experiment: str
    files: list = field(default_factory=list)


def parse_manifest(path: str) -> list[PanelSpec]:
    """Read ``panel=EXPERIMENT:file`` lines, grouping files per panel in order."""
    if not os.path.exists(path):
        raise JobError(f"manifest not found: {path}")
    base = os.path.dirname(os.path.abspath(path))
    panels: dict[str, PanelSpec] = {}
    order = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                panel, rest = line.split("=", 1)
                experiment, rel = rest.split(":", 1)
            except ValueError as e:
                raise JobError(f"{path}:{lineno}: malformed manifest line {line!r}") from e
            if panel not in panels:
                panels[panel] = PanelSpec(name=panel, experiment=experiment)
                order.append(panel)
            panels[panel].files.append(os.path.join(base, rel))
    return [panels[name] for name in order]


def read_csv_columns(path: str) -> dict[str, np.ndarray]:
    """Read one CSV into float columns; missing or empty files are job errors."""
    if not os.path.exists(path):
        raise JobError(f"missing CSV: {path}")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise JobError(f"empty CSV: {path}") from None
        rows = [row for row in reader if row]
    if not rows:
        raise JobError(f"empty CSV: {path}")
    data = np.array(rows, dtype=float)
    return {name: data[:, i] for i, name in enumerate(header)}


def _series_label(path: str) -> str:
    stem = os.path.splitext(os.path.basename(path))[0]
    for prefix in ("traj_", "err_"):
        if stem.startswith(prefix):
            stem = stem[len(prefix):]
    return stem.replace("_vs_", " vs ")


def _positive_masked(values: np.ndarray) -> np.ndarray:
    out = values.copy()
    out[out <= 0.0] = np.nan
    return out


def _panel_kind(name: str) -> str:
    kind = name.rsplit("-", 1)[-1]
    if kind not in KINDS:
        raise JobError(f"panel {name!r} has no recognized layout suffix")
    return kind


def render_panel(panel: PanelSpec, out_dir: str, image_format: str = "png") -> str:
    """Render one panel; returns the written image path."""
    kind = _panel_kind(panel.name)
    columns = [(path, read_csv_columns(path)) for path in panel.files]
    fig, ax = plt.subplots(figsize=(6.0, 4.5), dpi=120)
    for i, (path, cols) in enumerate(columns):
        label = _series_label(path)
        color = _COLORS[i % len(_COLORS)]
        style = _STYLES[i % len(_STYLES)]
        if kind in ("traj", "zoom"):
            if "x_0" not in cols or "x_1" not in cols:
                raise JobError(f"{path}: phase panels need x_0 and x_1 columns")
            ax.plot(cols["x_0"], cols["x_1"], style, color=color, lw=1.2, label=label)
        elif kind == "ferr":
            if "f" not in cols:
                raise JobError(f"{path}: objective panels need an f column")
            ax.plot(cols["k"], _positive_masked(cols["f"]), style, color=color,
                    lw=1.2, label=label)
        else:  # xerr / herr deviation series
            if "err" not in cols:
                raise JobError(f"{path}: deviation panels need an err column")
            ax.plot(cols["k"], _positive_masked(cols["err"]), style, color=color,
                    lw=1.2, label=label)
    if kind in ("traj", "zoom"):
        ax.set_xlabel("x_0")
        ax.set_ylabel("x_1")
        if kind == "zoom":
            ref = columns[0][1]
            half = len(ref["x_0"]) // 2
            xs, ys = ref["x_0"][half:], ref["x_1"][half:]
            pad_x = 0.1 * (xs.max() - xs.min() + 1e-12)
            pad_y = 0.1 * (ys.max() - ys.min() + 1e-12)
            ax.set_xlim(xs.min() - pad_x, xs.max() + pad_x)
            ax.set_ylim(ys.min() - pad_y, ys.max() + pad_y)
    else:
        ax.set_yscale("log")
        ax.set_xlabel("k")
        ax.set_ylabel("f - f*" if kind == "ferr" else "deviation")
    ax.legend(loc="best", fontsize=8)
    ax.set_title(f"{panel.name} [{panel.experiment}]", fontsize=10)
    fig.tight_layout()
    os.makedirs(out_dir, exist_ok=True)
    out_path = os.path.join(out_dir, f"{panel.name}.{image_format}")
    fig.savefig(out_path)
    plt.close(fig)
    return out_path


def render(job: FigureJob) -> list[str]:
    """Render the selected panels (all by default); returns the written paths.

    An empty selection renders nothing and succeeds.
    """
    panels = parse_manifest(job.manifest)
    if job.panels is not None:
        wanted = list(job.panels)
        if not wanted:
            return []
        by_name = {p.name: p for p in panels}
        missing = [name for name in wanted if name not in by_name]
        if missing:
            raise JobError(f"panels not in manifest: {missing}")
        panels = [by_name[name] for name in wanted]
    return [render_panel(panel, job.out_dir, job.image_format) for panel in panels]
