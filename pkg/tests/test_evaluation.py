"""Accuracy reports and McNemar significance testing."""

import json

import numpy as np
import pytest

from satkit.errors import ArgumentError
from satkit.evaluation import (
    CHI2_CRITICAL_05,
    accuracy,
    comparison_table,
    mcnemar,
    report_json,
)


def test_accuracy_confusion_counts():
    gold = [1, 1, 1, -1, -1, -1]
    pred = [1, 1, -1, -1, -1, 1]
    rep = accuracy(pred, gold, ids=[f"d{i}" for i in range(6)])
    assert rep.accuracy == pytest.approx(4 / 6)
    assert (rep.tp, rep.fn, rep.tn, rep.fp) == (2, 1, 2, 1)
    assert rep.total == 6
    assert rep.predictions[2] == ("d2", 1, -1)


def test_accuracy_rejects_bad_input():
    with pytest.raises(ArgumentError):
        accuracy([], [])
    with pytest.raises(ArgumentError):
        accuracy([1, -1], [1])
    with pytest.raises(ArgumentError):
        accuracy([1, 0], [1, -1])


def mk_preds(n01, n10, n_same_correct=5):
    """Build prediction vectors with the requested discordant counts."""
    gold, a, b = [], [], []
    for _ in range(n_same_correct):
        gold.append(1), a.append(1), b.append(1)
    for _ in range(n01):  # a wrong, b right
        gold.append(1), a.append(-1), b.append(1)
    for _ in range(n10):  # a right, b wrong
        gold.append(1), a.append(1), b.append(-1)
    return a, b, gold


def test_mcnemar_worked_example_significant():
    a, b, gold = mk_preds(10, 30)
    res = mcnemar(a, b, gold)
    assert (res.n01, res.n10) == (10, 30)
    assert res.statistic == pytest.approx(9.025, abs=0)
    assert res.significant


def test_mcnemar_worked_example_not_significant():
    a, b, gold = mk_preds(5, 5)
    res = mcnemar(a, b, gold)
    assert res.statistic == pytest.approx(0.1, abs=0)
    assert not res.significant


def test_mcnemar_degenerate_identical():
    a, b, gold = mk_preds(0, 0)
    res = mcnemar(a, b, gold)
    assert res.statistic == 0.0
    assert not res.significant


def test_mcnemar_without_continuity_correction():
    a, b, gold = mk_preds(10, 30)
    res = mcnemar(a, b, gold, correction=False)
    assert res.statistic == pytest.approx(400 / 40, abs=0)


def test_mcnemar_swap_symmetry(rng):
    for _ in range(30):
        m = int(rng.integers(1, 60))
        gold = np.where(rng.random(m) < 0.5, 1, -1)
        a = np.where(rng.random(m) < 0.5, 1, -1)
        b = np.where(rng.random(m) < 0.5, 1, -1)
        r1, r2 = mcnemar(a, b, gold), mcnemar(b, a, gold)
        assert r1.statistic == r2.statistic
        assert (r1.n01, r1.n10) == (r2.n10, r2.n01)
        assert r1.significant == r2.significant


def test_mcnemar_permutation_invariance(rng):
    m = 40
    gold = np.where(rng.random(m) < 0.5, 1, -1)
    a = np.where(rng.random(m) < 0.5, 1, -1)
    b = np.where(rng.random(m) < 0.5, 1, -1)
    perm = rng.permutation(m)
    r1 = mcnemar(a, b, gold)
    r2 = mcnemar(a[perm], b[perm], gold[perm])
    assert r1.statistic == r2.statistic


def test_critical_value():
    assert CHI2_CRITICAL_05 == 3.841459


def test_report_json_round_trips():
    rep = accuracy([1, -1], [1, 1], ids=["a", "b"])
    blob = json.loads(report_json(rep, mcnemar([1, 1], [1, -1], [1, 1])))
    assert blob["accuracy"] == 0.5
    assert blob["mcnemar"]["n01"] + blob["mcnemar"]["n10"] == 1


def test_comparison_table_daggers_significant_winner():
    a, b, gold = mk_preds(40, 2)  # b wins clearly
    res = mcnemar(a, b, gold)
    racc = accuracy(a, gold).accuracy
    bacc = accuracy(b, gold).accuracy
    table = comparison_table("left", "right", None, None, racc, bacc, res)
    assert res.significant
    lines = table.splitlines()
    right_line = next(l for l in lines if l.startswith("right"))
    left_line = next(l for l in lines if l.startswith("left"))
    assert "†" in right_line and "†" not in left_line
