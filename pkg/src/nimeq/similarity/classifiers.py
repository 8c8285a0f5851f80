"""
Classifier-based similarity.

Control and controlled feature vectors are labelled 0 and 1 and a classifier
tries to tell them apart under 10-fold cross-validation. Chance accuracy
means the two algorithms are indistinguishable, so the similarity is
``1 - 2 |0.5 - accuracy|``.

kNN is implemented here directly; the SVM (libsvm's SMO solver) and the
random forest come from scikit-learn, configured to the fixed settings below.
"""

import math
import warnings
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from sklearn.ensemble import RandomForestClassifier
from sklearn.svm import SVC

from ..optimizers.base import make_rng

__all__ = [
    "PairedSample",
    "knn_predict",
    "svm_train",
    "svm_predict",
    "rf_train",
    "rf_predict",
    "accuracy_to_similarity",
    "ml_similarity",
    "MLResult",
]

KNN_K = 5
SVM_C = 1.0
RF_TREES = 100
RF_DEPTH = 5


@dataclass
class PairedSample:
    """Control/controlled feature vectors paired by the seed that produced them."""

    control: np.ndarray
    controlled: np.ndarray
    seeds: np.ndarray

    def __post_init__(self):
        self.control = np.atleast_2d(np.asarray([getattr(v, "values", v) for v in self.control], dtype=float))
        self.controlled = np.atleast_2d(np.asarray([getattr(v, "values", v) for v in self.controlled], dtype=float))
        self.seeds = np.asarray(self.seeds)
        if self.control.shape != self.controlled.shape:
            raise ValueError("control and controlled vectors must share one shape")
        if self.seeds.shape != (self.control.shape[0],):
            raise ValueError("need exactly one seed per pair")
        if np.unique(self.seeds).size != self.seeds.size:
            raise ValueError("seeds must be unique within a sample")

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[object, object, int]]) -> "PairedSample":
        control, controlled, seeds = zip(*pairs)
        return cls(list(control), list(controlled), list(seeds))

    def __len__(self):
        return self.seeds.size


# -- kNN -------------------------------------------------------------------

def knn_predict(train_X, train_y, query, k: int = KNN_K):
    """
    Majority label among the ``k`` nearest training points (Euclidean).

    Ties in the vote go to the label of the nearest neighbour. Accepts a
    single query vector or a 2-D array of queries.
    """
    X = np.asarray(train_X, dtype=float)
    y = np.asarray(train_y)
    if X.shape[0] == 0:
        raise ValueError("knn_predict needs a non-empty training set")
    if not 1 <= k <= X.shape[0]:
        raise ValueError("k must lie in [1, %d], got %d" % (X.shape[0], k))
    q = np.asarray(query, dtype=float)
    single = q.ndim == 1
    Q = np.atleast_2d(q)
    labels = []
    for row in Q:
        d2 = np.sum((X - row) ** 2, axis=1)
        order = np.argsort(d2, kind="stable")[:k]
        votes = y[order]
        values, counts = np.unique(votes, return_counts=True)
        winners = values[counts == counts.max()]
        labels.append(votes[0] if len(winners) > 1 else winners[0])
    labels = np.asarray(labels)
    return labels[0] if single else labels


# -- SVM -------------------------------------------------------------------

class _ConstantModel:
    def __init__(self, label):
        self.label = label

    def predict(self, X):
        return np.full(np.atleast_2d(X).shape[0], self.label)


def svm_train(X, y, C: float = SVM_C):
    """
    Soft-margin RBF SVM with ``gamma = 1 / (F * var(X))``.

    A single-class training set yields a constant predictor and a warning.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    classes = np.unique(y)
    if classes.size < 2:
        warnings.warn("single-class training set, SVM falls back to a constant predictor")
        return _ConstantModel(classes[0])
    model = SVC(C=C, kernel="rbf", gamma="scale")
    return model.fit(X, y)


def svm_predict(model, query):
    q = np.asarray(query, dtype=float)
    out = model.predict(np.atleast_2d(q))
    return out[0] if q.ndim == 1 else out


# -- random forest ---------------------------------------------------------

def rf_train(X, y, n_trees: int = RF_TREES, max_depth: int = RF_DEPTH, seed: int = 0):
    """Bagged Gini trees, ceil(sqrt(F)) candidate features per split."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    classes = np.unique(y)
    if classes.size < 2:
        return _ConstantModel(classes[0])
    n_features = max(1, math.ceil(math.sqrt(X.shape[1])))
    model = RandomForestClassifier(
        n_estimators=n_trees,
        max_depth=max_depth,
        criterion="gini",
        max_features=n_features,
        bootstrap=True,
        random_state=int(seed),
    )
    return model.fit(X, y)


def rf_predict(model, query):
    q = np.asarray(query, dtype=float)
    out = model.predict(np.atleast_2d(q))
    return out[0] if q.ndim == 1 else out


# -- cross-validated similarity --------------------------------------------

def accuracy_to_similarity(accuracy):
    return 1.0 - 2.0 * np.abs(0.5 - np.asarray(accuracy, dtype=float))


@dataclass
class MLResult:
    method: str
    similarity: float
    similarity_std: float
    accuracy: float
    one_minus_accuracy: float
    fold_accuracy: List[float] = field(default_factory=list)
    model_seed: int = 0


def _fold_assignment(n_pairs: int, folds: int, seed: int) -> List[np.ndarray]:
    rng = make_rng(seed, "folds")
    order = rng.permutation(n_pairs)
    return np.array_split(order, folds)


def ml_similarity(sample: PairedSample, method: str = "kNN", folds: int = 10,
                  model_seed: int = 0) -> MLResult:
    """
    Cross-validated separability of control vs controlled vectors.

    Pairs are dealt to folds as units, so each test fold holds both vectors
    of a seed and the folds are balanced by construction. The fold split and
    the forest are seeded by ``model_seed``.
    """
    method_key = method.lower()
    if method_key not in ("knn", "svm", "rf"):
        raise ValueError("method must be one of kNN, SVM, RF, got %r" % method)
    n = len(sample)
    if n < folds:
        raise ValueError("need at least %d pairs for %d-fold CV, got %d" % (folds, folds, n))

    fold_acc = []
    for test_pairs in _fold_assignment(n, folds, model_seed):
        mask = np.zeros(n, dtype=bool)
        mask[test_pairs] = True
        X_train = np.vstack([sample.control[~mask], sample.controlled[~mask]])
        y_train = np.concatenate([np.zeros((~mask).sum(), int), np.ones((~mask).sum(), int)])
        X_test = np.vstack([sample.control[mask], sample.controlled[mask]])
        y_test = np.concatenate([np.zeros(mask.sum(), int), np.ones(mask.sum(), int)])
        if method_key == "knn":
            pred = knn_predict(X_train, y_train, X_test, k=min(KNN_K, X_train.shape[0]))
        elif method_key == "svm":
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                pred = svm_predict(svm_train(X_train, y_train), X_test)
        else:
            pred = rf_predict(rf_train(X_train, y_train, seed=model_seed), X_test)
        fold_acc.append(float(np.mean(pred == y_test)))

    acc = float(np.mean(fold_acc))
    sims = accuracy_to_similarity(fold_acc)
    name = {"knn": "kNN", "svm": "SVM", "rf": "RF"}[method_key]
    return MLResult(
        method=name,
        similarity=float(accuracy_to_similarity(acc)),
        similarity_std=float(np.std(sims)),
        accuracy=acc,
        one_minus_accuracy=1.0 - acc,
        fold_accuracy=fold_acc,
        model_seed=int(model_seed),
    )
