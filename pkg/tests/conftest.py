"""Shared fixtures: the canonical experiments are expensive, so run each once."""

import numpy as np
import pytest

from accelflow.harness import canonical_spec, run_experiment


@pytest.fixture(scope="session")
def exp1_result(tmp_path_factory):
    out = tmp_path_factory.mktemp("exp1")
    return run_experiment(canonical_spec("EXP1", out_dir=str(out)))


@pytest.fixture(scope="session")
def exp2_result(tmp_path_factory):
    out = tmp_path_factory.mktemp("exp2")
    return run_experiment(canonical_spec("EXP2", out_dir=str(out)))


@pytest.fixture(scope="session")
def exp3_result(tmp_path_factory):
    out = tmp_path_factory.mktemp("exp3")
    return run_experiment(canonical_spec("EXP3", out_dir=str(out)))


@pytest.fixture(scope="session")
def exp4_result(tmp_path_factory):
    out = tmp_path_factory.mktemp("exp4")
    return run_experiment(canonical_spec("EXP4", out_dir=str(out)))


@pytest.fixture(scope="session")
def exp5_result(tmp_path_factory):
    out = tmp_path_factory.mktemp("exp5")
    return run_experiment(canonical_spec("EXP5", out_dir=str(out)))


@pytest.fixture(scope="session")
def exp6_result(tmp_path_factory):
    out = tmp_path_factory.mktemp("exp6")
    return run_experiment(canonical_spec("EXP6", out_dir=str(out)))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
