"""Statistical similarity between feature vectors, summaries and verdicts."""

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

__all__ = [
    "THEOREM_THRESHOLD",
    "STRICT_TOL",
    "SummaryStats",
    "cosine_similarity",
    "smape_similarity",
    "spearman_rho",
    "interpret_correlation",
    "equivalence_verdict",
    "summarize",
]

THEOREM_THRESHOLD = 0.99
STRICT_TOL = 1e-9

_CORRELATION_LABELS = (
    (0.20, "very weak"),
    (0.40, "weak"),
    (0.60, "moderate"),
    (0.80, "strong"),
)


def _values(v):
    return np.asarray(getattr(v, "values", v), dtype=float)


def _pair(a, b):
    if hasattr(a, "check_compatible") and hasattr(b, "check_compatible"):
        a.check_compatible(b)
    x, y = _values(a), _values(b)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("vectors must be 1-D with equal length, got %s and %s" % (x.shape, y.shape))
    return x, y


def cosine_similarity(a, b) -> float:
    """``|a . b| / (|a| |b|)``; always in [0, 1]."""
    x, y = _pair(a, b)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0.0 or ny == 0.0:
        raise ValueError("cosine similarity is undefined for zero vectors")
    if np.array_equal(x, y):
        return 1.0
    return float(min(1.0, abs(x @ y) / (nx * ny)))


def smape_similarity(a, b) -> float:
    """
    ``1 - mean(|a_i - b_i| / |a_i + b_i|)``.

    A term with ``a_i + b_i == 0`` counts 0 when both entries are zero and 1
    otherwise.
    """
    x, y = _pair(a, b)
    num = np.abs(x - y)
    den = np.abs(x + y)
    terms = np.where(den > 0, num / np.where(den > 0, den, 1.0), np.where(num > 0, 1.0, 0.0))
    return float(1.0 - terms.mean())


def spearman_rho(a, b, full=False):
    """
    Pearson correlation of average ranks.

    A constant input has no rank spread; the result is then 0 and, with
    ``full=True``, flagged as degenerate in the returned ``(rho, degenerate)``.
    """
    x, y = _pair(a, b)
    if x.size < 2:
        raise ValueError("spearman_rho needs at least 2 values")
    rx = rankdata(x) - (x.size + 1) / 2.0
    ry = rankdata(y) - (y.size + 1) / 2.0
    sx, sy = np.sqrt(rx @ rx), np.sqrt(ry @ ry)
    if sx == 0.0 or sy == 0.0:
        return (0.0, True) if full else 0.0
    rho = float(np.clip((rx @ ry) / (sx * sy), -1.0, 1.0))
    return (rho, False) if full else rho


def interpret_correlation(v: float) -> str:
    """Verbal strength of a correlation-like coefficient, judged on ``|v|``."""
    if not -1.0 <= v <= 1.0 or np.isnan(v):
        raise ValueError("coefficient must lie in [-1, 1], got %s" % v)
    # coefficients are reported to two decimals, so 0.195 already counts as weak
    a = round(abs(v), 2)
    for upper, label in _CORRELATION_LABELS:
        if a < upper:
            return label
    return "very strong"


def equivalence_verdict(a, b):
    """
    Strong equivalence of two feature vectors.

    Returns ``{"theorem": cos >= 0.99, "strict": all |a_i - b_i| <= 1e-9,
    "cosine": cos, "tolerance": 1e-9}``.
    """
    x, y = _pair(a, b)
    cos = cosine_similarity(a, b)
    return {
        "theorem": bool(cos >= THEOREM_THRESHOLD),
        "strict": bool(np.all(np.abs(x - y) <= STRICT_TOL)),
        "cosine": cos,
        "tolerance": STRICT_TOL,
    }


@dataclass(frozen=True)
class SummaryStats:
    min: float
    max: float
    mean: float
    std: float
    median: float

    def as_dict(self):
        return {"Min": self.min, "Max": self.max, "Mean": self.mean,
                "StDev": self.std, "Median": self.median}


def summarize(values) -> SummaryStats:
    """Min/max/mean/population std/median of a non-empty sample."""
    v = np.asarray(list(values), dtype=float)
    if v.size == 0:
        raise ValueError("cannot summarize an empty sample")
    return SummaryStats(float(v.min()), float(v.max()), float(v.mean()),
                        float(v.std()), float(np.median(v)))
