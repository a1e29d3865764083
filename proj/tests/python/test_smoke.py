"""Smoke tests for the Python bindings."""

import json
import math

import exclusionlab as xl


def test_version_and_bound():
    assert xl.NONCONTEXTUAL_BOUND == 15 / 4
    assert isinstance(xl.__version__, str) and xl.__version__


def test_quantum_ce_is_maximal():
    report = xl.ce_total()
    assert abs(report["total"] - 4.0) <= 1e-12
    for row in report["per_event"].values():
        assert all(abs(p) <= 1e-12 for p in row)


def test_noisy_ce_curves():
    assert abs(xl.ce_total("global", 0.5)["total"] - 3.5) < 1e-12
    assert abs(xl.ce_total("per_qubit", 0.5)["total"] - 3.25) < 1e-12


def test_thresholds():
    assert abs(xl.find_threshold("global") - 0.75) < 1e-6
    assert abs(xl.find_threshold("per_qubit") - math.sqrt(3) / 2) < 1e-6


def test_toy_model_saturates_bound():
    report = xl.toy_model_ce()
    assert abs(report["total"] - 3.75) < 1e-12
    assert all(abs(v - 15 / 16) < 1e-12 for v in report["per_task"].values())


def test_model_search_respects_bound():
    result = xl.maximize_ce(n=4, restarts=8, seed=3)
    assert result["bound_respected"]
    assert 3.75 - 1e-6 <= result["best_found"] <= 3.75 + 1e-9
    model = json.loads(result["model_json"])
    assert model["n"] == 4


def test_network_quantum_behavior():
    report = xl.quantum_behavior_ce()
    assert abs(report["total"] - 4.0) <= 1e-12
    assert report["no_signaling_error"] <= 1e-10


def test_classical_search_capped():
    result = xl.best_classical_ce(card=4, restarts=8, seed=5)
    assert abs(result["best_total"] - 3.75) <= 1e-9
    assert result["bound_respected"]


def test_possibilistic_verdict():
    verdict = xl.possibilistic_verdict()
    assert verdict["infeasible"]
    assert verdict["witness_task"] == "0+"
    assert list(verdict["witness_f_a"]) == [0, 0]


def test_tasks_and_identity():
    tasks = [json.loads(t) for t in xl.tasks_json()]
    assert [t["label"] for t in tasks] == ["0+", "0-", "1+", "1-"]
    passed, deviation = xl.verify_operational_identity()
    assert passed and deviation <= 1e-12
    passed, deviation = xl.verify_operational_identity(0.01)
    assert not passed
