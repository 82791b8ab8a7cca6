"""Smoke tests for the python bindings."""

import math
import os

import pytest

import qpipe


def test_version_present():
    assert qpipe.__version__


def test_hadamard_and_marginals():
    s = qpipe.QuantumState.zero(1)
    s.h(0)
    m = s.marginals([0])
    assert m["0"] == pytest.approx(0.5)
    assert m["1"] == pytest.approx(0.5)


def test_swap_test_probability():
    # |psi> = |0>, |phi> = |+> : P(0) = (1 + 0.5) / 2
    s = qpipe.QuantumState.zero(3)
    s.initialize_register(1, 1, [1.0, 0.0])
    r = 1.0 / math.sqrt(2.0)
    s.initialize_register(2, 1, [r, r])
    s.h(0)
    s.fredkin(0, 1, 2)
    s.h(0)
    assert s.marginals([0])["0"] == pytest.approx(0.75)


def test_fidelity_and_unit_norm():
    assert qpipe.fidelity([1.0, 0.0], [0.0, 1.0]) == pytest.approx(0.0)
    u = qpipe.unit_norm([3.0, 4.0])
    assert u == pytest.approx([0.6, 0.8])


def test_qknn_scores_two_instances():
    scores = qpipe.qknn_scores([[1.0, 0.0], [0.0, 1.0]], [1.0, 0.0], modality="statevector")
    assert scores[0] == pytest.approx(2.0 / 3.0)
    assert scores[1] == pytest.approx(-2.0 / 3.0)


def test_pipeline_modalities_agree():
    train = [[0.1, 0.2], [0.15, 0.25], [0.2, 0.15], [0.9, 0.8], [0.85, 0.9], [0.8, 0.85]]
    labels = [1, 1, 1, -1, -1, -1]
    test = [0.12, 0.22]
    cc = qpipe.run_pipeline(train, labels, test, 3, "classical", "classical")
    sv = qpipe.run_pipeline(train, labels, test, 3, "statevector", "statevector")
    assert cc["label"] == 1
    assert sv["label"] == 1
    assert cc["neighbors"] == sv["neighbors"]
    assert "p1" in sv


def test_simulation_is_seed_deterministic():
    train = [[0.1, 0.2], [0.3, 0.4], [0.8, 0.9], [0.7, 0.6]]
    labels = [1, 1, -1, -1]
    a = qpipe.run_pipeline(train, labels, [0.2, 0.3], 2, "simulation", "classical", 512, 42)
    b = qpipe.run_pipeline(train, labels, [0.2, 0.3], 2, "simulation", "classical", 512, 42)
    assert a == b


def test_wilcoxon_smallest_p():
    r = qpipe.wilcoxon_signed_rank([2.0, 3.0, 4.0, 5.0, 6.0], [1.0, 2.0, 3.0, 4.0, 5.0])
    assert r["p_value"] == pytest.approx(0.0625)
    assert r["exact"]


def test_stratified_kfold_sizes():
    labels = [1] * 22 + [-1] * 49
    folds = qpipe.stratified_kfold(labels, 5, seed=7)
    sizes = sorted((folds.count(f) for f in range(5)), reverse=True)
    assert sizes == [15, 14, 14, 14, 14]


def test_load_packaged_dataset():
    data_dir = os.environ.get("QPIPE_DATA_DIR")
    if not data_dir:
        pytest.skip("QPIPE_DATA_DIR not set")
    ds = qpipe.load_dataset(os.path.join(data_dir, "15_qubits", "01_iris_setosa_versicolor.csv"))
    assert len(ds["features"]) == 100
    assert len(ds["features"][0]) == 4
    assert sorted(set(ds["labels"])) == [-1, 1]
