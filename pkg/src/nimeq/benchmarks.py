"""
Optimization problems used as test beds.

All problems are maximized: "better" always means numerically greater
fitness. Sphere is therefore negated, with its maximum 0 at the origin.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict

import numpy as np

__all__ = [
    "ProblemSpec",
    "sphere_eval",
    "distance_to_optimum",
    "search_space_diagonal",
    "make_problem",
    "register_problem",
]


@dataclass(frozen=True)
class ProblemSpec:
    """
    Box-bounded continuous maximization problem.

    Parameters
    ----------
    name : str
        Registry name of the problem (e.g. ``"sphere"``).
    dimension : int
        Number of decision variables D.
    lower_bound, upper_bound : float
        Uniform box bounds applied to every coordinate.
    func : callable
        Vectorized objective. Accepts an array of shape (..., D) and returns
        fitness values of shape (...).
    optimum_position : ndarray
        Location of the known global maximum.
    optimum_fitness : float
        Fitness at ``optimum_position``.
    """

    name: str
    dimension: int
    lower_bound: float
    upper_bound: float
    func: Callable = field(repr=False, compare=False)
    optimum_position: np.ndarray = field(repr=False, compare=False)
    optimum_fitness: float = 0.0
    maximize: bool = True

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be a positive integer, got %s" % self.dimension)
        if not self.lower_bound < self.upper_bound:
            raise ValueError("lower_bound must be smaller than upper_bound")
        opt = np.asarray(self.optimum_position, dtype=float)
        if opt.shape != (self.dimension,):
            raise ValueError("optimum_position must have length %d" % self.dimension)
        if np.any(opt < self.lower_bound) or np.any(opt > self.upper_bound):
            raise ValueError("optimum_position lies outside the search box")
        object.__setattr__(self, "optimum_position", opt)

    @property
    def lower(self) -> np.ndarray:
        return np.full(self.dimension, float(self.lower_bound))

    @property
    def upper(self) -> np.ndarray:
        return np.full(self.dimension, float(self.upper_bound))

    def evaluate(self, x) -> np.ndarray:
        return self.func(x)

    def clip(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower_bound, self.upper_bound)


def sphere_eval(x) -> float:
    """Negated Sphere function, ``-sum(x_i ** 2)``; vectorized over leading axes."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("sphere_eval requires finite input")
    return -np.sum(x * x, axis=-1)


def distance_to_optimum(x, spec: ProblemSpec):
    """Euclidean distance from ``x`` (shape (..., D)) to the problem optimum."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != spec.dimension:
        raise ValueError(
            "expected vectors of length %d, got %d" % (spec.dimension, x.shape[-1])
        )
    return np.linalg.norm(x - spec.optimum_position, axis=-1)


def search_space_diagonal(spec: ProblemSpec) -> float:
    return float(np.sqrt(np.sum((spec.upper - spec.lower) ** 2)))


def _sphere(dimension, lower=-10.0, upper=10.0):
    return ProblemSpec(
        name="sphere",
        dimension=dimension,
        lower_bound=lower,
        upper_bound=upper,
        func=sphere_eval,
        optimum_position=np.zeros(dimension),
        optimum_fitness=0.0,
    )


_PROBLEMS: Dict[str, Callable[..., ProblemSpec]] = {"sphere": _sphere}


def register_problem(name: str, factory: Callable[..., ProblemSpec]) -> None:
    """Register a factory ``factory(dimension, lower, upper) -> ProblemSpec``."""
    _PROBLEMS[name.lower()] = factory


def make_problem(name: str = "sphere", dimension: int = 10,
                 lower: float = -10.0, upper: float = 10.0) -> ProblemSpec:
    try:
        factory = _PROBLEMS[name.lower()]
    except KeyError:
        raise ValueError(
            "unknown problem %r, expected one of %s" % (name, sorted(_PROBLEMS))
        ) from None
    return factory(dimension, lower, upper)
