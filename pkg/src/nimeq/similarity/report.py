"""Per-algorithm similarity report shaped like Min/Max/Mean/StDev/Median tables."""

from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from .classifiers import MLResult, PairedSample, ml_similarity
from .metrics import (
    THEOREM_THRESHOLD,
    SummaryStats,
    cosine_similarity,
    equivalence_verdict,
    interpret_correlation,
    smape_similarity,
    spearman_rho,
    summarize,
)

__all__ = ["SimilarityReport", "build_report", "METRIC_COLUMNS", "STAT_ROWS"]

STATISTICAL = ("Sim_cos", "Sim_SMAPE", "rho")
ML_METHODS = ("kNN", "SVM", "RF")
METRIC_COLUMNS = STATISTICAL + tuple("Sim_" + m for m in ML_METHODS)
STAT_ROWS = ("Min", "Max", "Mean", "StDev", "Median")


@dataclass
class SimilarityReport:
    algorithm: str
    seeds: List[int]
    per_seed: Dict[str, List[float]]
    summaries: Dict[str, SummaryStats]
    ml: Dict[str, MLResult]
    labels: Dict[str, str]
    theorem_verdicts: List[bool]
    strict_verdicts: List[bool]
    degenerate_rho: List[bool] = field(default_factory=list)

    def table(self) -> Dict[str, Dict[str, float]]:
        """``table[row][column]``; classifier columns only have Mean and StDev."""
        out = {row: {} for row in STAT_ROWS}
        for col in STATISTICAL:
            for row, value in self.summaries[col].as_dict().items():
                out[row][col] = value
        for m in ML_METHODS:
            col = "Sim_" + m
            res = self.ml.get(m)
            for row in STAT_ROWS:
                out[row][col] = float("nan")
            if res is not None:
                out["Mean"][col] = res.similarity
                out["StDev"][col] = res.similarity_std
        return out

    @property
    def theorem_fraction(self) -> float:
        return float(np.mean(self.theorem_verdicts)) if self.theorem_verdicts else float("nan")


def build_report(algorithm: str, sample: PairedSample, model_seed: int = 0,
                 folds: int = 10) -> SimilarityReport:
    """
    All six similarity metrics for one controlled algorithm.

    Classifier metrics need at least ``folds`` pairs; with fewer they are
    left out of the report.
    """
    cos, smape, rho, degenerate = [], [], [], []
    theorem, strict = [], []
    for a, b in zip(sample.control, sample.controlled):
        cos.append(cosine_similarity(a, b))
        smape.append(smape_similarity(a, b))
        r, flag = spearman_rho(a, b, full=True)
        rho.append(r)
        degenerate.append(flag)
        verdict = equivalence_verdict(a, b)
        theorem.append(verdict["theorem"])
        strict.append(verdict["strict"])
    per_seed = {"Sim_cos": cos, "Sim_SMAPE": smape, "rho": rho}
    summaries = {k: summarize(v) for k, v in per_seed.items()}
    ml = {}
    if len(sample) >= folds:
        for m in ML_METHODS:
            ml[m] = ml_similarity(sample, m, folds=folds, model_seed=model_seed)
    labels = {k: interpret_correlation(s.mean) for k, s in summaries.items()}
    return SimilarityReport(
        algorithm=algorithm,
        seeds=[int(s) for s in sample.seeds],
        per_seed=per_seed,
        summaries=summaries,
        ml=ml,
        labels=labels,
        theorem_verdicts=theorem,
        strict_verdicts=strict,
        degenerate_rho=degenerate,
    )
