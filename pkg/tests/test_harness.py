"""Configuration loading, experiment outputs, manifests, and the CLI."""

import json
import os

import numpy as np
import pytest

from accelflow import (ConfigFileNotFoundError, ConfigParseError, ConfigSchemaError)
from accelflow.cli import main as cli_main
from accelflow.csvio import read_series_csv
from accelflow.harness import ExperimentSpec, canonical_spec, load_config, run_experiment


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


class TestConfig:
    def test_minimal_config_defaults(self, tmp_path):
        spec = load_config(write_config(tmp_path, {"experiment": "EXP1"}))
        assert spec.h == 1.0
        assert spec.k_max == 300
        assert spec.eps == 1.0
        assert spec.problem == "paper2d"

    def test_unknown_keys_rejected(self, tmp_path):
        with pytest.raises(ConfigSchemaError):
            load_config(write_config(tmp_path, {"experiment": "EXP1", "clown": 3}))

    def test_sc_model_needs_positive_mu(self, tmp_path):
        with pytest.raises(ConfigSchemaError):
            load_config(write_config(tmp_path, {"experiment": "EXP1",
                                                "models": ["WILSON"], "mu": 0.0}))
        spec = load_config(write_config(tmp_path, {"experiment": "EXP2",
                                                   "models": ["WILSON"], "mu": 0.001},
                                        name="ok.json"))
        assert spec.models == ("WILSON",)

    def test_empty_model_list_rejected(self, tmp_path):
        with pytest.raises(ConfigSchemaError):
            load_config(write_config(tmp_path, {"experiment": "EXP1", "models": []}))

    def test_parse_error_names_line(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n  "experiment": "EXP1",\n  oops\n}', encoding="utf-8")
        with pytest.raises(ConfigParseError) as exc:
            load_config(str(path))
        assert "line 3" in str(exc.value)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigFileNotFoundError):
            load_config(str(tmp_path / "nope.json"))

    def test_invalid_values(self):
        with pytest.raises(ConfigSchemaError):
            ExperimentSpec(experiment="EXP1", h=-1.0)
        with pytest.raises(ConfigSchemaError):
            ExperimentSpec(experiment="EXP1", k_max=0)
        with pytest.raises(ConfigSchemaError):
            ExperimentSpec(experiment="EXP7")
        with pytest.raises(ConfigSchemaError):
            ExperimentSpec(experiment="EXP1", problem="mystery")


class TestFidelityOutputs:
    def test_exp1_metrics_and_files(self, exp1_result):
        res = exp1_result
        rows = {r[0]: r for r in res.summary["metrics"]}
        assert rows["ODE-C_vs_SU@NAG-C-C"][5] >= 50.0
        assert rows["NAG-C_vs_NAG-C-C@ODE-C"][5] >= 40.0
        for rel in res.files:
            assert os.path.exists(os.path.join(res.out_dir, rel))

    def test_exp1_trajectory_csv_format(self, exp1_result):
        cols = read_series_csv(os.path.join(exp1_result.out_dir, "traj_NAG-C-C.csv"))
        assert set(cols) == {"k", "t", "x_0", "x_1", "f"}
        assert cols["k"][0] == 0 and cols["t"][1] == 1.0
        assert cols["f"][0] == pytest.approx(0.025)

    def test_exp2_metrics(self, exp2_result):
        rows = {r[0]: r for r in exp2_result.summary["metrics"]}
        assert rows["ODE-SC_vs_WILSON@NAG-SC-C"][5] >= 60.0
        assert rows["ODE-SC_vs_WILSON@NAG-SC"][5] >= 80.0
        assert rows["NAG-SC_vs_NAG-SC-C@ODE-SC"][5] >= 40.0

    def test_metrics_csv_schema(self, exp1_result):
        path = os.path.join(exp1_result.out_dir, "metrics.csv")
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().strip()
        assert header == "pair,window_lo,window_hi,mean_err_ref,mean_err_cand,reduction_pct"


class TestSweepOutputs:
    def test_max_deviation_decreases_with_h(self, exp3_result):
        rows = exp3_result.summary["sweep"]
        by_setting = {}
        for pname, mode, model, h, mean_err, max_err in rows:
            by_setting.setdefault((pname, mode, model), []).append((h, max_err))
        assert by_setting
        for key, vals in by_setting.items():
            vals.sort(reverse=True)  # h = 1, 0.1, 0.01
            maxes = [v for _, v in vals]
            assert maxes[0] > maxes[1] > maxes[2], (key, maxes)

    def test_gradient_correction_always_wins(self, exp3_result):
        for row in exp3_result.summary["metrics"]:
            assert row[4] < row[3], row


class TestRestartOutputs:
    def test_summary_fields(self, exp4_result):
        s = exp4_result.summary
        assert s["monotone[ours]"] is True
        assert s["monotone[su]"] is False
        assert 2.3 <= s["f9_over_f8[su]"] <= 3.3
        path = os.path.join(exp4_result.out_dir, "restart_summary.csv")
        assert os.path.exists(path)

    def test_restart_channel_in_csv(self, exp4_result):
        cols = read_series_csv(os.path.join(exp4_result.out_dir, "traj_RESTART-OURS.csv"))
        assert "restart" in cols
        assert set(np.unique(cols["restart"])) <= {0.0, 1.0}


class TestReparamOutputs:
    def test_summary(self, exp5_result):
        assert exp5_result.summary["f_monotone"] is True
        assert exp5_result.summary["max_qr_gap"] < 0.05


class TestCertificationOutputs:
    def test_all_cases_certified(self, exp6_result):
        flags = [v for k, v in exp6_result.summary.items() if k.startswith("certified")]
        assert len(flags) == 10
        assert all(flags)


class TestManifest:
    def test_every_figure_panel_mapped_once(self, exp1_result, exp2_result, exp3_result,
                                            exp4_result, exp5_result):
        panel_owner = {}
        for res in (exp1_result, exp2_result, exp3_result, exp4_result, exp5_result):
            for line in res.manifest_lines:
                panel, rest = line.split("=", 1)
                exp_id = rest.split(":", 1)[0]
                prev = panel_owner.setdefault(panel, exp_id)
                assert prev == exp_id, f"panel {panel} claimed by two experiments"
        expected = set()
        for fig in (2, 3, 4, 5):
            expected |= {f"fig{fig}{p}-{kind}" for p, kind in
                         zip("abcd", ("traj", "zoom", "ferr", "xerr"))}
        for fig in (6, 7, 8, 9):
            expected |= {f"fig{fig}{p}-herr" for p in "abc"}
        expected |= {"fig10a-ferr", "fig10b-ferr", "counter-ferr",
                     "fig11a-ferr", "fig11b-xerr"}
        assert set(panel_owner) == expected

    def test_manifest_paths_exist(self, exp1_result):
        for line in exp1_result.manifest_lines:
            rel = line.split(":", 1)[1]
            assert os.path.exists(os.path.join(exp1_result.out_dir, rel))


class TestReproducibility:
    def test_byte_identical_reruns(self, tmp_path):
        spec_a = canonical_spec("EXP4", out_dir=str(tmp_path / "a"))
        spec_b = canonical_spec("EXP4", out_dir=str(tmp_path / "b"))
        res_a = run_experiment(spec_a)
        res_b = run_experiment(spec_b)
        assert sorted(res_a.files) == sorted(res_b.files)
        for rel in res_a.files:
            a = open(os.path.join(res_a.out_dir, rel), "rb").read()
            b = open(os.path.join(res_b.out_dir, rel), "rb").read()
            assert a == b, f"{rel} differs between reruns"


class TestCli:
    def test_simulate_and_exit_codes(self, tmp_path):
        out = str(tmp_path / "sim")
        code = cli_main(["simulate", "--model", "GF", "--steps", "5", "--out", out])
        assert code == 0
        assert os.path.exists(os.path.join(out, "traj_GF.csv"))

    def test_nag_subcommand(self, tmp_path):
        out = str(tmp_path / "nag")
        code = cli_main(["nag", "--model", "NAG-C-C", "--steps", "5", "--out", out])
        assert code == 0

    def test_config_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{", encoding="utf-8")
        assert cli_main(["compare", "--config", str(bad)]) == 2
        assert cli_main(["compare", "--config", str(tmp_path / "missing.json")]) == 2

    def test_unknown_method_variant(self, tmp_path):
        code = cli_main(["nag", "--model", "NAG-WRONG", "--out", str(tmp_path)])
        assert code == 2
