"""CSV emission for trajectories, deviation series and summary metrics.

All files use LF line endings, UTF-8, and 17 significant digits so that
re-running a configuration reproduces byte-identical output.
"""

from __future__ import annotations

import os

import numpy as np

from .trajectory import Trajectory

FMT = "%.17g"


def _fnum(v) -> str:
    return FMT % float(v)


def _open(path):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    return open(path, "w", encoding="utf-8", newline="\n")


def write_trajectory_csv(path: str, traj: Trajectory) -> None:
    """Header: k,t,x_0,...,x_{n-1},f[,energy][,restart]."""
    dim = traj.dim
    cols = ["k", "t"] + [f"x_{i}" for i in range(dim)] + ["f"]
    energy = traj.channels.get("energy")
    restart = traj.channels.get("restart")
    if energy is not None:
        cols.append("energy")
    if restart is not None:
        cols.append("restart")
    with _open(path) as fh:
        fh.write(",".join(cols) + "\n")
        for k in range(len(traj)):
            row = [str(k), _fnum(traj.times[k])]
            row += [_fnum(v) for v in traj.points[k]]
            row.append(_fnum(traj.f_values[k]))
            if energy is not None:
                row.append(_fnum(energy[k]))
            if restart is not None:
                row.append(str(int(restart[k])))
            fh.write(",".join(row) + "\n")


def write_error_csv(path: str, ks, ts, errors) -> None:
    """Header: k,t,err -- one deviation series."""
    with _open(path) as fh:
        fh.write("k,t,err\n")
        for k, t, e in zip(ks, ts, errors):
            fh.write(f"{int(k)},{_fnum(t)},{_fnum(e)}\n")


def write_metrics_csv(path: str, rows) -> None:
    """Header: pair,window_lo,window_hi,mean_err_ref,mean_err_cand,reduction_pct."""
    with _open(path) as fh:
        fh.write("pair,window_lo,window_hi,mean_err_ref,mean_err_cand,reduction_pct\n")
        for pair, lo, hi, ref, cand, red in rows:
            fh.write(f"{pair},{int(lo)},{int(hi)},{_fnum(ref)},{_fnum(cand)},{_fnum(red)}\n")


def write_sweep_csv(path: str, rows) -> None:
    """Header: problem,mode,model,h,mean_err,max_err -- step-size sweep summary."""
    with _open(path) as fh:
        fh.write("problem,mode,model,h,mean_err,max_err\n")
        for problem, mode, model, h, mean_err, max_err in rows:
            fh.write(f"{problem},{mode},{model},{_fnum(h)},{_fnum(mean_err)},{_fnum(max_err)}\n")


def write_table_csv(path: str, header: list[str], rows) -> None:
    """Generic small table; values are written as given (strings pass through)."""
    with _open(path) as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            out = []
            for v in row:
                out.append(v if isinstance(v, str) else _fnum(v) if isinstance(v, float) else str(v))
            fh.write(",".join(out) + "\n")


def write_manifest(path: str, lines) -> None:
    """One ``figure_panel=experiment_id:file`` line per output."""
    with _open(path) as fh:
        for line in lines:
            fh.write(line + "\n")


def read_series_csv(path: str) -> dict:
    """Read one of our CSVs back as a dict of float columns (k as int)."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        data = [line.strip().split(",") for line in fh if line.strip()]
    cols = {name: np.array([row[i] for row in data], dtype=float)
            for i, name in enumerate(header)}
    return cols
