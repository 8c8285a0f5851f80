"""Population-based optimizers sharing one seeded initialization and run loop."""

from .base import (
    ALGORITHMS,
    PARAM_NAMES,
    PopulationState,
    RunConfig,
    TrajectoryLog,
    canonical_algorithm,
    initialize_population,
    make_rng,
    run_algorithm,
)
from .bat import step_ba
from .firefly import step_fa, step_fav2
from .swarm import step_acc_fa, step_acc_pso, step_pso

__all__ = [
    "ALGORITHMS",
    "PARAM_NAMES",
    "PopulationState",
    "RunConfig",
    "TrajectoryLog",
    "canonical_algorithm",
    "initialize_population",
    "make_rng",
    "run_algorithm",
    "step_acc_fa",
    "step_acc_pso",
    "step_ba",
    "step_fa",
    "step_fav2",
    "step_pso",
]
