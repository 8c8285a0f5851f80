"""Particle swarm optimization and the accelerated PSO/FA pair."""

import numpy as np

from .base import PopulationState

__all__ = ["step_pso", "step_acc_pso", "step_acc_fa"]


def step_pso(state: PopulationState, params, rng: np.random.Generator) -> PopulationState:
    """
    One generation of canonical PSO.

    ``c1`` scales the pull towards the global best and ``c2`` the pull towards
    the particle's own best, exactly as in the velocity equation
    ``v' = w v + c1 e1 (g - x) + c2 e2 (p - x)``.
    Random draws: e1 (Np x D) then e2 (Np x D).
    """
    w, c1, c2 = params["w"], params["c1"], params["c2"]
    x = state.positions
    shape = x.shape
    e1 = rng.random(shape)
    e2 = rng.random(shape)
    v = w * state.velocities + c1 * e1 * (state.best_position - x) + c2 * e2 * (state.pbest_positions - x)
    state.velocities = v
    state.positions = state.problem.clip(x + v)
    state.fitness = np.asarray(state.problem.evaluate(state.positions), dtype=float)

    improved = state.fitness >= state.pbest_fitness
    state.pbest_positions[improved] = state.positions[improved]
    state.pbest_fitness[improved] = state.fitness[improved]
    state.update_best()
    return state


def _accelerated_move(state: PopulationState, params, rng: np.random.Generator) -> PopulationState:
    # Shared kernel: both accelerated variants must produce bit-identical
    # trajectories, so they share one evaluation order and one draw order.
    alpha = state.alpha
    decay = params.get("alpha_decay")
    if decay is not None:
        alpha = params["alpha"] * decay ** state.generation
    beta = params["beta"]
    x = state.positions
    eps = rng.random(x.shape)
    x_new = x + beta * (state.best_position - x) + alpha * (eps - 0.5)
    state.positions = state.problem.clip(x_new)
    state.fitness = np.asarray(state.problem.evaluate(state.positions), dtype=float)
    state.update_best()
    return state


def step_acc_pso(state: PopulationState, params, rng: np.random.Generator) -> PopulationState:
    """
    Accelerated PSO in single-equation position form,
    ``x' = (1 - beta) x + beta g + alpha (eps - 0.5)``.

    Evaluated as ``x + beta (g - x) + alpha (eps - 0.5)`` so that it shares
    its floating point evaluation order with ``step_acc_fa``. With
    ``alpha_decay`` set in ``params`` the randomization follows
    ``alpha_0 * decay ** t``.
    """
    return _accelerated_move(state, params, rng)


def step_acc_fa(state: PopulationState, params, rng: np.random.Generator) -> PopulationState:
    """
    Accelerated firefly algorithm, ``x' = x + beta (x* - x) + alpha (rand - 0.5)``
    with x* the global best. Algebraically the same operator as accelerated PSO.
    """
    return _accelerated_move(state, params, rng)
