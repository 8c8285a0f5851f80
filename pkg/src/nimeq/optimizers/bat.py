"""Bat algorithm with its simulated-annealing and Gaussian random walk parts."""

import math

import numpy as np

from .base import PopulationState

__all__ = ["step_ba"]


def step_ba(state: PopulationState, params, rng: np.random.Generator) -> PopulationState:
    """
    One generation of the bat algorithm, processing bats sequentially.

    Per bat, in this order:

    * accept its current fitness if it beats the last accepted one and
      ``U(0,1) < A_i``; on acceptance the loudness decays and the pulse rate
      becomes ``r_i (1 - exp(-gamma (t + 1)))``;
    * refresh the global best;
    * move: ``Q_i = Q_min + (Q_max - Q_min) beta``, ``v += (x_i - x_best) Q_i``,
      ``x_i += v``;
    * if ``U(0,1) > r_i`` replace x_i by ``x_best + N(0,1) * mean(r)``.

    Draws per bat: acceptance uniform, beta, walk uniform, D normals. All four
    are drawn unconditionally so the stream does not depend on the branches.
    The velocity term moves away from the best, as the update is written.
    """
    gamma = params["gamma"]
    q_min, q_max = params.get("q_min", 0.0), params.get("q_max", 2.0)
    decay = params.get("loudness_decay", 0.98)
    problem = state.problem
    lo, hi = problem.lower_bound, problem.upper_bound
    t = state.generation

    x = state.positions.copy()
    v = state.velocities
    loud, pulse, acc = state.loudness, state.pulse_rate, state.accepted_fitness
    d = x.shape[1]
    pulse_factor = 1.0 - math.exp(-gamma * (t + 1))

    for i in range(x.shape[0]):
        f_trial = state.fitness[i]
        u_accept = rng.random()
        if f_trial > acc[i] and u_accept < loud[i]:
            acc[i] = f_trial
            loud[i] *= decay
            pulse[i] *= pulse_factor
        if f_trial > state.best_fitness:
            state.best_fitness = float(f_trial)
            state.best_position = x[i].copy()

        q = q_min + (q_max - q_min) * rng.random()
        state.frequency[i] = q
        v[i] = v[i] + (x[i] - state.best_position) * q
        xi = x[i] + v[i]

        u_walk = rng.random()
        z = rng.standard_normal(d)
        if u_walk > pulse[i]:
            xi = state.best_position + z * pulse.mean()
        x[i] = np.clip(xi, lo, hi)

    state.positions = x
    state.fitness = np.asarray(problem.evaluate(x), dtype=float)
    return state
