"""Binary classification metrics with SUPPORTED as the positive class.

Both binary F1 (positive class only) and macro F1 (mean of the two per-class
F1s) are reported; published tables are ambiguous about which one they show,
so the harness carries both. All division-by-zero cases resolve to 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core import BINARY_LABELS, REFUTED, SUPPORTED


@dataclass(frozen=True)
class Confusion:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def to_dict(self) -> dict:
        return {"TP": self.tp, "FP": self.fp, "FN": self.fn, "TN": self.tn}


@dataclass(frozen=True)
class Metrics:
    precision: float
    recall: float
    f1_binary: float
    f1_macro: float
    confusion: Confusion


def _safe_div(num: float, den: float) -> float:
    return num / den if den else 0.0


def _f1(precision: float, recall: float) -> float:
    return _safe_div(2 * precision * recall, precision + recall)


def compute_metrics(preds: list[str], golds: list[str]) -> Metrics:
    """Precision/recall/F1 of predictions against gold labels.

    Labels must be SUPPORTED or REFUTED and the two lists equally long.
    """
    if len(preds) != len(golds):
        raise ValueError(f"length mismatch: {len(preds)} predictions, {len(golds)} golds")
    if len(preds) == 0:
        raise ValueError("cannot compute metrics over zero claims")
    for label in (*preds, *golds):
        if label not in BINARY_LABELS:
            raise ValueError(f"non-binary label {label!r}")

    tp = fp = fn = tn = 0
    for pred, gold in zip(preds, golds):
        if pred == SUPPORTED and gold == SUPPORTED:
            tp += 1
        elif pred == SUPPORTED and gold == REFUTED:
            fp += 1
        elif pred == REFUTED and gold == SUPPORTED:
            fn += 1
        else:
            tn += 1

    precision = _safe_div(tp, tp + fp)
    recall = _safe_div(tp, tp + fn)
    f1_pos = _f1(precision, recall)
    # REFUTED viewed as the positive class, for the macro average.
    neg_precision = _safe_div(tn, tn + fn)
    neg_recall = _safe_div(tn, tn + fp)
    f1_neg = _f1(neg_precision, neg_recall)

    return Metrics(
        precision=precision,
        recall=recall,
        f1_binary=f1_pos,
        f1_macro=(f1_pos + f1_neg) / 2.0,
        confusion=Confusion(tp=tp, fp=fp, fn=fn, tn=tn),
    )
