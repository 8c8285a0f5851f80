"""
Behavioral descriptors of a run and the feature vector built from them.

Four population metrics are computed for every generation snapshot (fitness
distance correlation, diversity, fitness mean, fitness std) and four
individual metrics for every individual over the whole run (distance
traveled, fitness IQR, fitness mean, sinuosity). The feature vector is the
generation-major population block followed by the individual-major block,
``4 * (T + Np)`` values in total.
"""

from dataclasses import dataclass, field

import numpy as np

from .benchmarks import ProblemSpec, distance_to_optimum, search_space_diagonal
from .optimizers.base import TrajectoryLog

__all__ = [
    "LAYOUT_TAG",
    "ISI_EPS",
    "FeatureVector",
    "fdc",
    "population_diversity",
    "population_fitness_mean",
    "population_fitness_std",
    "idt",
    "ifiqr",
    "ifm",
    "isi",
    "assemble_feature_vector",
    "population_metrics",
    "individual_metrics",
]

LAYOUT_TAG = "gen-major+ind-major"
ISI_EPS = 1e-12

POPULATION_METRICS = ("fdc", "diversity", "fitness_mean", "fitness_std")
INDIVIDUAL_METRICS = ("idt", "ifiqr", "ifm", "isi")


@dataclass
class FeatureVector:
    values: np.ndarray
    n_generations: int
    pop_size: int
    dimension: int = 0
    layout: str = LAYOUT_TAG
    degenerate_fdc: np.ndarray = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        expected = 4 * (self.n_generations + self.pop_size)
        if self.values.shape != (expected,):
            raise ValueError(
                "feature vector must hold 4*(T+Np) = %d values, got %d" % (expected, self.values.size)
            )

    def __len__(self):
        return self.values.size

    @property
    def population_block(self) -> np.ndarray:
        """Shape (T, 4): fdc, diversity, fitness mean, fitness std."""
        return self.values[: 4 * self.n_generations].reshape(self.n_generations, 4)

    @property
    def individual_block(self) -> np.ndarray:
        """Shape (Np, 4): IDT, IFIQR, IFM, ISI."""
        return self.values[4 * self.n_generations:].reshape(self.pop_size, 4)

    def check_compatible(self, other: "FeatureVector") -> None:
        if self.layout != other.layout:
            raise ValueError("layout mismatch: %r vs %r" % (self.layout, other.layout))
        if (self.n_generations, self.pop_size) != (other.n_generations, other.pop_size):
            raise ValueError(
                "shape mismatch: (T=%d, Np=%d) vs (T=%d, Np=%d)"
                % (self.n_generations, self.pop_size, other.n_generations, other.pop_size)
            )


def fdc(fitness, distances, full=False):
    """
    Fitness distance correlation with population (1/Np) normalization.

    Returns 0 when either input has zero spread; with ``full=True`` the
    result is ``(r, degenerate)``.
    """
    f = np.asarray(fitness, dtype=float)
    d = np.asarray(distances, dtype=float)
    if f.shape != d.shape or f.ndim != 1 or f.size < 2:
        raise ValueError("fdc needs two equal-length vectors with at least 2 entries")
    fc = f - f.mean()
    dc = d - d.mean()
    s_f = np.sqrt(np.mean(fc * fc))
    s_d = np.sqrt(np.mean(dc * dc))
    if s_f == 0.0 or s_d == 0.0:
        return (0.0, True) if full else 0.0
    r = float(np.mean(fc * dc) / (s_f * s_d))
    r = min(1.0, max(-1.0, r))
    return (r, False) if full else r


def population_diversity(positions, spec: ProblemSpec) -> float:
    """Mean Euclidean distance to the centroid, divided by the box diagonal."""
    x = np.asarray(positions, dtype=float)
    centroid = x.mean(axis=0)
    dist = np.sqrt(np.sum((x - centroid) ** 2, axis=1))
    return float(dist.sum() / (search_space_diagonal(spec) * x.shape[0]))


def population_fitness_mean(fitness) -> float:
    return float(np.mean(fitness))


def population_fitness_std(fitness) -> float:
    f = np.asarray(fitness, dtype=float)
    return float(np.sqrt(np.sum((f - f.mean()) ** 2) / f.size))


def _step_lengths(path):
    path = np.asarray(path, dtype=float)
    if path.ndim == 1:
        path = path[:, None]
    return np.linalg.norm(np.diff(path, axis=0), axis=1)


def idt(positions_over_time) -> float:
    """Distance traveled: sum of Euclidean step lengths between snapshots."""
    return float(np.sum(_step_lengths(positions_over_time)))


def ifiqr(fitness_over_time) -> float:
    # linear interpolation between order statistics, rank p*(n-1) zero-based
    q1, q3 = np.percentile(np.asarray(fitness_over_time, dtype=float), [25.0, 75.0])
    return float(q3 - q1)


def ifm(fitness_over_time) -> float:
    return float(np.mean(fitness_over_time))


def isi(positions_over_time) -> float:
    """
    Sinuosity: distance traveled over net displacement.

    Returns 0 for a path that never moves; displacements below ``ISI_EPS``
    are floored at ``ISI_EPS`` so closed loops give a large finite value.
    """
    path = np.asarray(positions_over_time, dtype=float)
    if path.ndim == 1:
        path = path[:, None]
    travelled = float(np.sum(_step_lengths(path)))
    if travelled == 0.0:
        return 0.0
    displacement = float(np.linalg.norm(path[0] - path[-1]))
    return travelled / max(displacement, ISI_EPS)


def population_metrics(log: TrajectoryLog, spec: ProblemSpec):
    """Array (T, 4) of per-generation metrics and the (T,) fdc degeneracy flags."""
    T = log.n_generations
    out = np.empty((T, 4))
    flags = np.zeros(T, dtype=bool)
    for t in range(T):
        x, f = log.positions[t], log.fitness[t]
        out[t, 0], flags[t] = fdc(f, distance_to_optimum(x, spec), full=True)
        out[t, 1] = population_diversity(x, spec)
        out[t, 2] = population_fitness_mean(f)
        out[t, 3] = population_fitness_std(f)
    return out, flags


def individual_metrics(log: TrajectoryLog) -> np.ndarray:
    """Array (Np, 4): IDT, IFIQR, IFM, ISI per individual."""
    n = log.pop_size
    out = np.empty((n, 4))
    for i in range(n):
        path = log.positions[:, i, :]
        series = log.fitness[:, i]
        out[i] = idt(path), ifiqr(series), ifm(series), isi(path)
    return out


def assemble_feature_vector(log: TrajectoryLog, spec: ProblemSpec) -> FeatureVector:
    T, n = log.fitness.shape if log.fitness.ndim == 2 else (0, 0)
    if log.positions.shape[:2] != (T, n) or T < 1:
        raise ValueError("incomplete trajectory log: positions %s, fitness %s"
                         % (log.positions.shape, log.fitness.shape))
    if log.config is not None and T != log.config.max_gen:
        raise ValueError("trajectory log holds %d of %d generations" % (T, log.config.max_gen))
    pop, flags = population_metrics(log, spec)
    ind = individual_metrics(log)
    values = np.concatenate([pop.ravel(), ind.ravel()])
    if not np.all(np.isfinite(values)):
        raise ValueError("feature vector contains non-finite values")
    return FeatureVector(values, n_generations=T, pop_size=n, dimension=log.dimension,
                         degenerate_fdc=flags)
