import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from claimlens.core import REFUTED, SUPPORTED
from claimlens.evaluation import compute_metrics

from oracles import confusion_metrics


def test_perfect_predictions():
    labels = [SUPPORTED, REFUTED, SUPPORTED]
    m = compute_metrics(labels, labels)
    assert m.precision == m.recall == m.f1_binary == m.f1_macro == 1.0


def test_hand_computed_confusion_case():
    # TP=2, FP=1, FN=1, TN=1 -> P = R = F1 = 2/3.
    preds = [SUPPORTED, SUPPORTED, SUPPORTED, REFUTED, REFUTED]
    golds = [SUPPORTED, SUPPORTED, REFUTED, SUPPORTED, REFUTED]
    m = compute_metrics(preds, golds)
    assert m.confusion.tp == 2
    assert m.confusion.fp == 1
    assert m.confusion.fn == 1
    assert m.confusion.tn == 1
    assert m.precision == pytest.approx(2 / 3)
    assert m.recall == pytest.approx(2 / 3)
    assert m.f1_binary == pytest.approx(2 / 3)
    # Macro side: REFUTED F1 = 1/2, so macro = (2/3 + 1/2) / 2 = 7/12.
    assert m.f1_macro == pytest.approx(7 / 12)


def test_all_refuted_predictions_zero_by_convention():
    preds = [REFUTED, REFUTED, REFUTED]
    golds = [SUPPORTED, SUPPORTED, REFUTED]
    m = compute_metrics(preds, golds)
    assert m.precision == 0.0
    assert m.recall == 0.0
    assert m.f1_binary == 0.0


def test_length_mismatch_raises():
    with pytest.raises(ValueError, match="length mismatch"):
        compute_metrics([SUPPORTED], [SUPPORTED, REFUTED])


def test_empty_input_raises():
    with pytest.raises(ValueError):
        compute_metrics([], [])


def test_non_binary_label_rejected():
    with pytest.raises(ValueError):
        compute_metrics(["NEI"], [SUPPORTED])


def test_counts_sum_to_n():
    rng = random.Random(4)
    labels = [SUPPORTED, REFUTED]
    preds = [rng.choice(labels) for _ in range(57)]
    golds = [rng.choice(labels) for _ in range(57)]
    m = compute_metrics(preds, golds)
    assert m.confusion.total == 57


def test_matches_rational_oracle_on_1000_random_vectors():
    rng = random.Random(99)
    labels = [SUPPORTED, REFUTED]
    for _ in range(1000):
        n = rng.randint(1, 40)
        preds = [rng.choice(labels) for _ in range(n)]
        golds = [rng.choice(labels) for _ in range(n)]
        m = compute_metrics(preds, golds)
        expected = confusion_metrics(preds, golds)
        assert (m.confusion.tp, m.confusion.fp, m.confusion.fn, m.confusion.tn) == expected["confusion"]
        assert abs(m.precision - float(expected["precision"])) < 1e-12
        assert abs(m.recall - float(expected["recall"])) < 1e-12
        assert abs(m.f1_binary - float(expected["f1_binary"])) < 1e-12
        assert abs(m.f1_macro - float(expected["f1_macro"])) < 1e-12


@given(
    st.lists(
        st.tuples(
            st.sampled_from([SUPPORTED, REFUTED]), st.sampled_from([SUPPORTED, REFUTED])
        ),
        min_size=1,
        max_size=60,
    )
)
def test_oracle_equivalence_property(pairs):
    preds = [p for p, _ in pairs]
    golds = [g for _, g in pairs]
    m = compute_metrics(preds, golds)
    expected = confusion_metrics(preds, golds)
    assert (m.confusion.tp, m.confusion.fp, m.confusion.fn, m.confusion.tn) == expected["confusion"]
    assert abs(m.f1_macro - float(expected["f1_macro"])) < 1e-12
    assert 0.0 <= m.precision <= 1.0
    assert 0.0 <= m.f1_macro <= 1.0
