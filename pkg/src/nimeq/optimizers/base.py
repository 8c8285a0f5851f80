"""
Shared machinery for the population-based optimizers.

Every optimizer follows the same contract so that runs started from the same
seed are comparable:

1. ``initialize_population`` draws the Np x D starting positions uniformly
   from the problem box, row-major, as the very first draws of the run
   stream. Algorithm-specific state is set up afterwards without consuming
   any randomness.
2. ``run_algorithm`` then calls the algorithm's step function exactly T
   times. Each step moves the population, evaluates it, and the resulting
   positions/fitness are recorded as one generation snapshot.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Tuple

import numpy as np

from ..benchmarks import ProblemSpec

__all__ = [
    "ALGORITHMS",
    "PARAM_NAMES",
    "RunConfig",
    "PopulationState",
    "TrajectoryLog",
    "make_rng",
    "initialize_population",
    "run_algorithm",
]

ALGORITHMS = ("accPSO", "accFA", "PSO", "FA", "FAv2", "BA")

PARAM_NAMES: Dict[str, Tuple[str, ...]] = {
    "accPSO": ("alpha", "beta"),
    "accFA": ("alpha", "beta"),
    "PSO": ("w", "c1", "c2"),
    "FA": ("alpha", "beta0", "gamma"),
    "FAv2": ("alpha", "beta0", "gamma"),
    "BA": ("A0", "gamma"),
}

# Stream identifiers mixed into the seed so that independent consumers
# (optimizer runs, Meta-DE, classifiers) never share a generator.
_ROLES = {"run": 0, "metade": 1, "model": 2, "folds": 3}


def make_rng(seed: int, role: str = "run") -> np.random.Generator:
    """
    Deterministic PCG64 generator for ``(seed, role)``.

    The stream depends only on the two inputs, never on the algorithm, which
    is what makes the initial populations of different algorithms identical.
    """
    if int(seed) < 0:
        raise ValueError("seed must be a non-negative integer, got %s" % seed)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), _ROLES[role]])))


def canonical_algorithm(name: str) -> str:
    for alg in ALGORITHMS:
        if alg.lower() == str(name).lower():
            return alg
    raise ValueError("unknown algorithm %r, expected one of %s" % (name, ALGORITHMS))


@dataclass
class RunConfig:
    """
    Everything that determines one optimizer run.

    ``params`` maps the algorithm's parameter names (see ``PARAM_NAMES``) to
    values. The remaining fields are fixed settings with conventional
    defaults (frequencies, decay constants); they live in the config so that
    a run stays a pure function of it.
    """

    problem: ProblemSpec
    algorithm: str
    params: Mapping[str, float]
    pop_size: int = 20
    max_gen: int = 500
    seed: int = 1
    q_min: float = 0.0
    q_max: float = 2.0
    ba_loudness_decay: float = 0.98
    ba_zero_init: bool = False
    fa_alpha_decay: float = 0.98
    acc_alpha_decay: Optional[float] = None

    def __post_init__(self):
        self.algorithm = canonical_algorithm(self.algorithm)
        names = PARAM_NAMES[self.algorithm]
        params = dict(self.params)
        if set(params) != set(names):
            raise ValueError(
                "%s expects parameters %s, got %s" % (self.algorithm, names, sorted(params))
            )
        for k, v in params.items():
            if not np.isfinite(v):
                raise ValueError("parameter %s must be finite, got %s" % (k, v))
        self.params = {k: float(params[k]) for k in names}
        if self.pop_size < 2:
            raise ValueError("pop_size must be >= 2, got %s" % self.pop_size)
        if self.max_gen < 1:
            raise ValueError("max_gen must be >= 1, got %s" % self.max_gen)
        if int(self.seed) < 0:
            raise ValueError("seed must be non-negative, got %s" % self.seed)

    def param_vector(self) -> Tuple[float, ...]:
        return tuple(self.params[k] for k in PARAM_NAMES[self.algorithm])

    def replace(self, **changes) -> "RunConfig":
        fields = dict(self.__dict__)
        fields.update(changes)
        return RunConfig(**fields)


@dataclass
class PopulationState:
    problem: ProblemSpec
    positions: np.ndarray
    fitness: np.ndarray
    best_position: np.ndarray
    best_fitness: float
    velocities: Optional[np.ndarray] = None
    generation: int = 0
    # PSO
    pbest_positions: Optional[np.ndarray] = None
    pbest_fitness: Optional[np.ndarray] = None
    # FA / FAv2 / accelerated variants: current (possibly decayed) alpha
    alpha: Optional[float] = None
    # FAv2
    mating_pool: Optional[np.ndarray] = None
    # BA
    loudness: Optional[np.ndarray] = None
    pulse_rate: Optional[np.ndarray] = None
    frequency: Optional[np.ndarray] = None
    accepted_fitness: Optional[np.ndarray] = None

    @property
    def pop_size(self) -> int:
        return self.positions.shape[0]

    def update_best(self) -> None:
        i = int(np.argmax(self.fitness))
        if self.fitness[i] > self.best_fitness:
            self.best_fitness = float(self.fitness[i])
            self.best_position = self.positions[i].copy()


@dataclass
class TrajectoryLog:
    """
    Positions and fitness of every individual at every generation.

    Attributes
    ----------
    positions : ndarray, shape (T, Np, D)
    fitness : ndarray, shape (T, Np)
    best_fitness : ndarray, shape (T,)
        Best fitness observed up to and including each snapshot. The bat
        algorithm refreshes its own best lazily during the next sweep, so
        the log takes the running maximum itself.
    config : RunConfig
    """

    positions: np.ndarray
    fitness: np.ndarray
    best_fitness: np.ndarray
    config: Optional[RunConfig] = field(default=None, compare=False)

    @property
    def n_generations(self) -> int:
        return self.positions.shape[0]

    @property
    def pop_size(self) -> int:
        return self.positions.shape[1]

    @property
    def dimension(self) -> int:
        return self.positions.shape[2]

    def equals(self, other: "TrajectoryLog") -> bool:
        return (
            np.array_equal(self.positions, other.positions)
            and np.array_equal(self.fitness, other.fitness)
            and np.array_equal(self.best_fitness, other.best_fitness)
        )


def initialize_population(config: RunConfig, rng: Optional[np.random.Generator] = None) -> PopulationState:
    if rng is None:
        rng = make_rng(config.seed)
    problem = config.problem
    n, d = config.pop_size, problem.dimension
    u = rng.random((n, d))
    positions = problem.lower_bound + (problem.upper_bound - problem.lower_bound) * u
    fitness = np.asarray(problem.evaluate(positions), dtype=float)
    best = int(np.argmax(fitness))
    state = PopulationState(
        problem=problem,
        positions=positions,
        fitness=fitness,
        best_position=positions[best].copy(),
        best_fitness=float(fitness[best]),
        velocities=np.zeros((n, d)),
    )
    alg = config.algorithm
    if alg == "PSO":
        state.pbest_positions = positions.copy()
        state.pbest_fitness = fitness.copy()
    elif alg in ("accPSO", "accFA", "FA", "FAv2"):
        state.alpha = config.params["alpha"]
        if alg == "FAv2":
            state.mating_pool = positions.copy()
    elif alg == "BA":
        state.loudness = np.full(n, config.params["A0"])
        # pulse rate starts at gamma (r_i = gamma in the BA initialization)
        state.pulse_rate = np.full(n, config.params["gamma"])
        state.frequency = np.zeros(n)
        state.accepted_fitness = np.zeros(n) if config.ba_zero_init else fitness.copy()
    return state


def _step_function(algorithm: str) -> Callable:
    from . import bat, firefly, swarm

    return {
        "accPSO": swarm.step_acc_pso,
        "accFA": swarm.step_acc_fa,
        "PSO": swarm.step_pso,
        "FA": firefly.step_fa,
        "FAv2": firefly.step_fav2,
        "BA": bat.step_ba,
    }[algorithm]


def step_settings(config: RunConfig) -> Dict[str, float]:
    """Parameters handed to the step function: tunables plus fixed settings."""
    p = dict(config.params)
    alg = config.algorithm
    if alg == "BA":
        p.update(q_min=config.q_min, q_max=config.q_max, loudness_decay=config.ba_loudness_decay)
    elif alg in ("FA", "FAv2"):
        p["alpha_decay"] = config.fa_alpha_decay
    elif alg in ("accPSO", "accFA") and config.acc_alpha_decay is not None:
        p["alpha_decay"] = config.acc_alpha_decay
    return p


def run_algorithm(config: RunConfig) -> TrajectoryLog:
    """Run ``config`` for exactly ``max_gen`` generations and log every one."""
    rng = make_rng(config.seed)
    state = initialize_population(config, rng)
    step = _step_function(config.algorithm)
    params = step_settings(config)
    T, n, d = config.max_gen, config.pop_size, config.problem.dimension
    positions = np.empty((T, n, d))
    fitness = np.empty((T, n))
    best = np.empty(T)
    observed = state.best_fitness
    for t in range(T):
        state = step(state, params, rng)
        state.generation += 1
        positions[t] = state.positions
        fitness[t] = state.fitness
        observed = max(observed, state.best_fitness, float(state.fitness.max()))
        best[t] = observed
    return TrajectoryLog(positions=positions, fitness=fitness, best_fitness=best, config=config)
