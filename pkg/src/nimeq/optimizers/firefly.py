"""Original firefly algorithm and the two-population FAv2 variant."""

import math

import numpy as np

from .base import PopulationState

__all__ = ["step_fa", "step_fav2"]


def _attract(xi, xj, alpha, beta0, gamma, rng, lower, upper):
    diff = xj - xi
    r2 = float(diff @ diff)
    beta = beta0 * math.exp(-gamma * r2)
    moved = xi + beta * diff + alpha * (rng.random(xi.shape[0]) - 0.5)
    return np.clip(moved, lower, upper)


def step_fa(state: PopulationState, params, rng: np.random.Generator) -> PopulationState:
    """
    One generation of the original firefly algorithm.

    For every ordered pair (i, j) with ``f_j > f_i`` firefly i moves towards j.
    Moves are applied in place, so later comparisons in the sweep use the
    already moved positions, while brightness comes from the last full
    evaluation. A random vector of length D is drawn for each move only.
    alpha decays multiplicatively once per generation.
    """
    beta0, gamma = params["beta0"], params["gamma"]
    alpha = state.alpha
    lo, hi = state.problem.lower_bound, state.problem.upper_bound
    x = state.positions.copy()
    f = state.fitness
    n = x.shape[0]
    for i in range(n):
        for j in range(n):
            if f[j] > f[i]:
                x[i] = _attract(x[i], x[j], alpha, beta0, gamma, rng, lo, hi)
    state.alpha = alpha * params.get("alpha_decay", 0.98)
    state.positions = x
    state.fitness = np.asarray(state.problem.evaluate(x), dtype=float)
    state.update_best()
    return state


def step_fav2(state: PopulationState, params, rng: np.random.Generator) -> PopulationState:
    """
    One generation of FAv2.

    The mating pool is evaluated first; each candidate replaces its parent
    in the elitist population only when strictly better. The pool is then
    rebuilt from the elitist population: for every brighter j the candidate
    for i is ``Move(x_i, x_j)``, so the last brighter neighbour determines it.
    Fireflies without a brighter neighbour propose themselves unchanged.
    """
    beta0, gamma = params["beta0"], params["gamma"]
    alpha = state.alpha
    problem = state.problem
    lo, hi = problem.lower_bound, problem.upper_bound

    f_pool = np.asarray(problem.evaluate(state.mating_pool), dtype=float)
    better = f_pool > state.fitness
    state.positions = np.where(better[:, None], state.mating_pool, state.positions)
    state.fitness = np.where(better, f_pool, state.fitness)
    state.update_best()

    x, f = state.positions, state.fitness
    n = x.shape[0]
    pool = x.copy()
    for i in range(n):
        for j in range(n):
            if f[j] > f[i]:
                pool[i] = _attract(x[i], x[j], alpha, beta0, gamma, rng, lo, hi)
    state.mating_pool = pool
    state.alpha = alpha * params.get("alpha_decay", 0.98)
    return state
