"""Renderer unit tests on synthetic manifests and CSVs."""

import os

import numpy as np
import pytest

from accelflow_plot import FigureJob, JobError, parse_manifest, render


def write(path, text):
    os.makedirs(os.path.dirname(str(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def make_traj_csv(path, n=20, offset=0.0):
    lines = ["k,t,x_0,x_1,f"]
    for k in range(n):
        x0 = np.cos(0.3 * k) / (k + 1) + offset
        x1 = np.sin(0.3 * k) / (k + 1)
        f = 1.0 / (k + 1) ** 2
        lines.append(f"{k},{k},{x0},{x1},{f}")
    write(path, "\n".join(lines) + "\n")


def make_err_csv(path, n=20):
    lines = ["k,t,err"]
    for k in range(n):
        lines.append(f"{k},{k},{2.0 / (k + 1)}")
    write(path, "\n".join(lines) + "\n")


@pytest.fixture
def workspace(tmp_path):
    make_traj_csv(tmp_path / "traj_A.csv")
    make_traj_csv(tmp_path / "traj_B.csv", offset=0.05)
    make_err_csv(tmp_path / "err_A_vs_B.csv")
    write(tmp_path / "manifest.txt", "\n".join([
        "fig1a-traj=EXPX:traj_A.csv",
        "fig1a-traj=EXPX:traj_B.csv",
        "fig1b-zoom=EXPX:traj_A.csv",
        "fig1c-ferr=EXPX:traj_A.csv",
        "fig1d-xerr=EXPX:err_A_vs_B.csv",
    ]) + "\n")
    return tmp_path


class TestManifest:
    def test_groups_files_per_panel_in_order(self, workspace):
        panels = parse_manifest(str(workspace / "manifest.txt"))
        assert [p.name for p in panels] == ["fig1a-traj", "fig1b-zoom", "fig1c-ferr",
                                            "fig1d-xerr"]
        assert len(panels[0].files) == 2
        assert panels[0].experiment == "EXPX"

    def test_malformed_line_rejected(self, tmp_path):
        write(tmp_path / "manifest.txt", "not a manifest line\n")
        with pytest.raises(JobError):
            parse_manifest(str(tmp_path / "manifest.txt"))

    def test_missing_manifest(self, tmp_path):
        with pytest.raises(JobError):
            parse_manifest(str(tmp_path / "nope.txt"))


class TestRender:
    def test_renders_all_panels(self, workspace, tmp_path):
        out = tmp_path / "img"
        written = render(FigureJob(manifest=str(workspace / "manifest.txt"),
                                   out_dir=str(out)))
        assert len(written) == 4
        for path in written:
            assert os.path.getsize(path) > 0

    def test_empty_selection_is_a_no_op(self, workspace, tmp_path):
        written = render(FigureJob(manifest=str(workspace / "manifest.txt"),
                                   out_dir=str(tmp_path / "img"), panels=()))
        assert written == []

    def test_unknown_panel_selection_rejected(self, workspace, tmp_path):
        job = FigureJob(manifest=str(workspace / "manifest.txt"),
                        out_dir=str(tmp_path / "img"), panels=("fig9z-traj",))
        with pytest.raises(JobError):
            render(job)

    def test_missing_csv_is_named(self, workspace, tmp_path):
        write(workspace / "manifest.txt", "fig1a-traj=EXPX:gone.csv\n")
        with pytest.raises(JobError) as exc:
            render(FigureJob(manifest=str(workspace / "manifest.txt"),
                             out_dir=str(tmp_path / "img")))
        assert "gone.csv" in str(exc.value)

    def test_empty_csv_rejected(self, workspace, tmp_path):
        write(workspace / "traj_A.csv", "k,t,x_0,x_1,f\n")
        with pytest.raises(JobError) as exc:
            render(FigureJob(manifest=str(workspace / "manifest.txt"),
                             out_dir=str(tmp_path / "img")))
        assert "empty CSV" in str(exc.value)

    def test_rerender_identical_dimensions(self, workspace, tmp_path):
        job_a = FigureJob(manifest=str(workspace / "manifest.txt"),
                          out_dir=str(tmp_path / "a"), panels=("fig1c-ferr",))
        job_b = FigureJob(manifest=str(workspace / "manifest.txt"),
                          out_dir=str(tmp_path / "b"), panels=("fig1c-ferr",))
        (path_a,), (path_b,) = render(job_a), render(job_b)
        import struct

        def png_size(path):
            with open(path, "rb") as fh:
                fh.seek(16)
                return struct.unpack(">II", fh.read(8))
        assert png_size(path_a) == png_size(path_b)


class TestCli:
    def test_cli_round_trip(self, workspace, tmp_path):
        from accelflow_plot.cli import main

        out = tmp_path / "img"
        code = main(["--manifest", str(workspace / "manifest.txt"),
                     "--out", str(out), "--panels", "fig1a-traj,fig1d-xerr"])
        assert code == 0
        assert sorted(os.listdir(out)) == ["fig1a-traj.png", "fig1d-xerr.png"]

    def test_cli_error_exit(self, tmp_path):
        from accelflow_plot.cli import main

        code = main(["--manifest", str(tmp_path / "missing.txt"), "--out", str(tmp_path)])
        assert code == 1
