"""Similarity metrics between feature vectors and equivalence verdicts."""

from .classifiers import (
    MLResult,
    PairedSample,
    accuracy_to_similarity,
    knn_predict,
    ml_similarity,
    rf_predict,
    rf_train,
    svm_predict,
    svm_train,
)
from .metrics import (
    STRICT_TOL,
    THEOREM_THRESHOLD,
    SummaryStats,
    cosine_similarity,
    equivalence_verdict,
    interpret_correlation,
    smape_similarity,
    spearman_rho,
    summarize,
)
from .report import SimilarityReport, build_report

__all__ = [
    "MLResult",
    "PairedSample",
    "STRICT_TOL",
    "SimilarityReport",
    "SummaryStats",
    "THEOREM_THRESHOLD",
    "accuracy_to_similarity",
    "build_report",
    "cosine_similarity",
    "equivalence_verdict",
    "interpret_correlation",
    "knn_predict",
    "ml_similarity",
    "rf_predict",
    "rf_train",
    "smape_similarity",
    "spearman_rho",
    "summarize",
    "svm_predict",
    "svm_train",
]
