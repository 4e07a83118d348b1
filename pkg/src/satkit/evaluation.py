"""Accuracy and paired McNemar significance between two classifiers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ArgumentError

# Chi-squared critical value, 1 degree of freedom, level 0.05.
CHI2_CRITICAL_05 = 3.841459


@dataclass
class EvalReport:
    """Accuracy with confusion counts relative to the +1 class."""

    accuracy: float
    tp: int
    fp: int
    tn: int
    fn: int
    predictions: list = field(default_factory=list)  # (id, gold, predicted)

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def to_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "confusion": {"tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn},
            "predictions": [
                {"id": i, "gold": int(g), "predicted": int(p)}
                for i, g, p in self.predictions
            ],
        }


@dataclass
class McNemarResult:
    """Discordant counts and the continuity-corrected chi-squared decision."""

    n01: int  # A wrong, B right
    n10: int  # A right, B wrong
    statistic: float
    significant: bool

    def to_dict(self) -> dict:
        return {
            "n01": self.n01,
            "n10": self.n10,
            "statistic": self.statistic,
            "significant": self.significant,
        }


def _as_sign_array(v: Sequence[int], name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=np.int64)
    if arr.ndim != 1:
        raise ArgumentError(f"{name} must be 1-dimensional")
    if not np.all(np.isin(arr, (-1, 1))):
        raise ArgumentError(f"{name} must contain only -1/+1")
    return arr


def accuracy(
    pred: Sequence[int], gold: Sequence[int], ids: Sequence[str] | None = None
) -> EvalReport:
    """Accuracy and confusion counts; TP means predicted +1 and gold +1."""
    p = _as_sign_array(pred, "pred")
    g = _as_sign_array(gold, "gold")
    if p.size == 0:
        raise ArgumentError("cannot score an empty prediction vector")
    if p.size != g.size:
        raise ArgumentError(f"length mismatch: {p.size} predictions, {g.size} golds")
    if ids is None:
        ids = [str(i) for i in range(p.size)]
    elif len(ids) != p.size:
        raise ArgumentError(f"{len(ids)} ids for {p.size} predictions")
    tp = int(np.sum((p == 1) & (g == 1)))
    fp = int(np.sum((p == 1) & (g == -1)))
    tn = int(np.sum((p == -1) & (g == -1)))
    fn = int(np.sum((p == -1) & (g == 1)))
    return EvalReport(
        accuracy=(tp + tn) / p.size,
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        predictions=[(i, int(gv), int(pv)) for i, gv, pv in zip(ids, g, p)],
    )


def mcnemar(
    pred_a: Sequence[int],
    pred_b: Sequence[int],
    gold: Sequence[int],
    correction: bool = True,
) -> McNemarResult:
    """Paired McNemar test on the two classifiers' discordant errors.

    statistic = (|n01 - n10| - 1)^2 / (n01 + n10) with the continuity
    correction (default); the degenerate n01 + n10 = 0 case is defined as
    statistic 0, not significant.
    """
    a = _as_sign_array(pred_a, "pred_a")
    b = _as_sign_array(pred_b, "pred_b")
    g = _as_sign_array(gold, "gold")
    if not (a.size == b.size == g.size):
        raise ArgumentError("prediction and gold vectors must share one length")
    a_right = a == g
    b_right = b == g
    n01 = int(np.sum(~a_right & b_right))
    n10 = int(np.sum(a_right & ~b_right))
    discordant = n01 + n10
    if discordant == 0:
        return McNemarResult(0, 0, 0.0, False)
    diff = abs(n01 - n10)
    if correction:
        diff = abs(diff - 1)
    statistic = diff * diff / discordant
    return McNemarResult(n01, n10, statistic, statistic > CHI2_CRITICAL_05)


def report_json(report: EvalReport, test: McNemarResult | None = None) -> str:
    """JSON rendering of an evaluation (optionally with a McNemar block)."""
    payload = report.to_dict()
    if test is not None:
        payload["mcnemar"] = test.to_dict()
    return json.dumps(payload, indent=2, sort_keys=True)


def comparison_table(
    name_a: str,
    name_b: str,
    valid_a: float | None,
    valid_b: float | None,
    test_a: float,
    test_b: float,
    test_result: McNemarResult,
    valid_result: McNemarResult | None = None,
) -> str:
    """Side-by-side accuracy table; daggers mark the significantly better
    run within a column."""

    def cell(acc: float | None, mine: float | None, other: float | None, res) -> str:
        if acc is None:
            return "-"
        mark = ""
        if res is not None and res.significant and mine is not None and other is not None:
            if mine > other:
                mark = "†"
        return f"{100.0 * acc:.2f}%{mark}"

    rows = [
        f"{'Run':<28} {'Validation':>12} {'Test':>12}",
        f"{name_a:<28} {cell(valid_a, valid_a, valid_b, valid_result):>12} "
        f"{cell(test_a, test_a, test_b, test_result):>12}",
        f"{name_b:<28} {cell(valid_b, valid_b, valid_a, valid_result):>12} "
        f"{cell(test_b, test_b, test_a, test_result):>12}",
    ]
    marker = "significant" if test_result.significant else "not significant"
    rows.append(
        f"McNemar on test: n01={test_result.n01} n10={test_result.n10} "
        f"statistic={test_result.statistic:.4f} ({marker} at 0.05)"
    )
    return "\n".join(rows)
