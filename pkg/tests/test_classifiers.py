import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nimeq.similarity import (
    PairedSample,
    accuracy_to_similarity,
    knn_predict,
    ml_similarity,
    rf_predict,
    rf_train,
    svm_predict,
    svm_train,
)


def blobs(n=20, dim=5, separation=10.0, spread=1.0, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.normal(0.0, spread, (n, dim))
    b = rng.normal(0.0, spread, (n, dim))
    b[:, 0] += separation * spread
    return a, b


def test_knn_examples():
    X = np.array([[0.0, 0.0], [5.0, 5.0], [1.0, 0.0]])
    y = np.array([0, 1, 0])
    assert knn_predict(X, y, [5.0, 5.0], k=1) == 1
    assert knn_predict(X, np.zeros(3, int), [9.0, 9.0], k=3) == 0
    a, b = blobs()
    X = np.vstack([a, b])
    y = np.repeat([0, 1], len(a))
    assert knn_predict(X, y, a.mean(axis=0)) == 0
    np.testing.assert_array_equal(knn_predict(X, y, b[:3] + 0.1), [1, 1, 1])


def test_knn_vote_tie_goes_to_nearest():
    X = np.array([[0.0], [1.0], [-2.0], [3.0]])
    y = np.array([1, 0, 0, 1])
    assert knn_predict(X, y, [0.1], k=4) == 1
    assert knn_predict(X, y, [0.9], k=4) == 0


def test_knn_errors():
    with pytest.raises(ValueError):
        knn_predict(np.empty((0, 2)), [], [0.0, 0.0])
    with pytest.raises(ValueError):
        knn_predict(np.ones((2, 2)), [0, 1], [0.0, 0.0], k=3)


def test_svm_separates_xor():
    X = np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]])
    y = np.array([0, 0, 1, 1])
    model = svm_train(X, y)
    np.testing.assert_array_equal(svm_predict(model, X), y)


def test_svm_single_class_warns():
    with pytest.warns(UserWarning):
        model = svm_train(np.ones((3, 2)), [1, 1, 1])
    assert svm_predict(model, [0.0, 0.0]) == 1


def test_rf_deterministic_per_seed():
    a, b = blobs(separation=1.0)
    X = np.vstack([a, b])
    y = np.repeat([0, 1], len(a))
    q = np.random.default_rng(3).normal(0.5, 1.0, (30, 5))
    p1 = rf_predict(rf_train(X, y, seed=4), q)
    p2 = rf_predict(rf_train(X, y, seed=4), q)
    np.testing.assert_array_equal(p1, p2)
    assert rf_predict(rf_train(X, y, seed=0), a[0]) == 0


@pytest.mark.parametrize("acc, sim", [(0.5, 1.0), (0.0, 0.0), (1.0, 0.0), (0.75, 0.5), (0.25, 0.5)])
def test_accuracy_to_similarity(acc, sim):
    assert accuracy_to_similarity(acc) == pytest.approx(sim)


@given(st.floats(0, 1))
def test_similarity_symmetric_in_accuracy(acc):
    s = accuracy_to_similarity(acc)
    assert 0.0 <= s <= 1.0
    assert s == pytest.approx(accuracy_to_similarity(1.0 - acc), abs=1e-12)


@pytest.mark.parametrize("method", ["kNN", "SVM", "RF"])
def test_ml_similarity_identical_vectors(method):
    X = np.random.default_rng(0).uniform(size=(10, 8))
    res = ml_similarity(PairedSample(X, X.copy(), np.arange(10)), method)
    assert res.accuracy == 0.5
    assert res.similarity == 1.0
    assert res.one_minus_accuracy == 0.5
    assert len(res.fold_accuracy) == 10


@pytest.mark.parametrize("method", ["kNN", "SVM", "RF"])
def test_ml_similarity_separable(method):
    a, b = blobs(n=20)
    res = ml_similarity(PairedSample(a, b, np.arange(20)), method)
    assert res.accuracy >= 0.95
    assert res.similarity <= 0.1


def test_ml_similarity_deterministic_and_validated():
    a, b = blobs(n=12, separation=0.5)
    s = PairedSample(a, b, np.arange(12))
    r1 = ml_similarity(s, "RF", model_seed=5)
    r2 = ml_similarity(s, "RF", model_seed=5)
    assert r1.fold_accuracy == r2.fold_accuracy
    with pytest.raises(ValueError):
        ml_similarity(s, "LDA")
    with pytest.raises(ValueError):
        ml_similarity(PairedSample(a[:5], b[:5], np.arange(5)), "kNN")


def test_single_class_folds_do_not_leak_warnings():
    a, b = blobs(n=10)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ml_similarity(PairedSample(a, b, np.arange(10)), "SVM")
