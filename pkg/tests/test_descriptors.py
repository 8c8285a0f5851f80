import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from nimeq.benchmarks import make_problem
from nimeq.descriptors import (
    ISI_EPS,
    LAYOUT_TAG,
    FeatureVector,
    assemble_feature_vector,
    fdc,
    idt,
    ifiqr,
    ifm,
    isi,
    population_diversity,
    population_fitness_mean,
    population_fitness_std,
)
from nimeq.optimizers import TrajectoryLog, run_algorithm

finite = st.floats(-1e3, 1e3, allow_nan=False)


def frozen_log(T=4, Np=3, D=2, seed=0):
    x = np.random.default_rng(seed).uniform(-5, 5, (Np, D))
    positions = np.repeat(x[None], T, axis=0)
    fitness = -np.sum(positions ** 2, axis=2)
    return TrajectoryLog(positions, fitness, fitness.max(axis=1))


# -- fdc -------------------------------------------------------------------

def test_fdc_examples():
    f = np.array([1.0, 2.0, 3.0])
    assert fdc(f, f) == pytest.approx(1.0, abs=1e-15)
    assert fdc(f, -f) == pytest.approx(-1.0, abs=1e-15)
    assert fdc(f, [3.0, 2.0, 2.0]) == pytest.approx(-math.sqrt(3) / 2, abs=1e-12)
    assert fdc(f, [3.0, 2.0, 2.0]) == pytest.approx(oracles.fdc([1, 2, 3], [3, 2, 2]), abs=1e-15)


def test_fdc_degenerate_is_flagged_zero():
    assert fdc([1.0, 1.0, 1.0], [1.0, 2.0, 3.0], full=True) == (0.0, True)
    assert fdc([1.0, 2.0], [5.0, 5.0]) == 0.0
    with pytest.raises(ValueError):
        fdc([1.0], [1.0])
    with pytest.raises(ValueError):
        fdc([1.0, 2.0], [1.0, 2.0, 3.0])


@given(arrays(float, st.integers(2, 10), elements=finite), st.data())
def test_fdc_bounded_and_matches_oracle(f, data):
    d = data.draw(arrays(float, f.size, elements=st.floats(0, 1e3)))
    r = fdc(f, d)
    assert -1.0 <= r <= 1.0
    assert r == pytest.approx(oracles.fdc(list(f), list(d)), abs=1e-9)


# -- population metrics ----------------------------------------------------

def test_diversity_examples():
    box = make_problem("sphere", dimension=1, lower=0.0, upper=1.0)
    assert population_diversity([[0.0], [1.0]], box) == 0.5
    assert population_diversity([[0.3], [0.3], [0.3]], box) == 0.0


def test_diversity_matches_oracle(rng):
    spec = make_problem("sphere", dimension=3)
    x = rng.uniform(-10, 10, (5, 3))
    expected = oracles.diversity(x.tolist(), 20.0 * math.sqrt(3))
    assert population_diversity(x, spec) == pytest.approx(expected, abs=1e-12)


@given(arrays(float, (6, 3), elements=st.floats(-10, 10)),
       arrays(float, 3, elements=st.floats(-10, 10)),
       st.floats(0.1, 10))
def test_diversity_translation_and_scale(x, shift, scale):
    spec = make_problem("sphere", dimension=3)
    wide = make_problem("sphere", dimension=3, lower=-10 * scale, upper=10 * scale)
    base = population_diversity(x, spec)
    assert population_diversity(x + shift, spec) == pytest.approx(base, abs=1e-12)
    assert population_diversity(x * scale, wide) == pytest.approx(base, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("f, mean, std", [
    ([4.0, 4.0, 4.0], 4.0, 0.0),
    ([-1.0, 1.0], 0.0, 1.0),
    ([1.0, 2.0, 3.0, 4.0], 2.5, math.sqrt(1.25)),
])
def test_fitness_mean_std(f, mean, std):
    assert population_fitness_mean(f) == mean
    assert population_fitness_std(f) == pytest.approx(std, abs=1e-15)


# -- individual metrics ----------------------------------------------------

def test_idt_examples():
    assert idt(np.zeros((5, 2))) == 0.0
    assert idt(np.column_stack([np.arange(5.0), np.zeros(5)])) == 4.0
    assert idt([[0, 0], [1, 0], [1, 1]]) == 2.0
    assert idt([[3.0, 1.0]]) == 0.0


def test_ifiqr_examples():
    assert ifiqr([7.0] * 6) == 0.0
    assert ifiqr([1, 2, 3, 4, 5]) == 2.0
    assert ifiqr([5, 1, 4, 2, 3]) == 2.0


def test_ifm_examples():
    assert ifm([3.5] * 4) == 3.5
    assert ifm([0.0, 10.0]) == 5.0


def test_isi_examples():
    assert isi([[0, 0], [1, 0], [2, 0]]) == 1.0
    assert isi([[0.0], [1.0], [0.0]]) == 2.0 / ISI_EPS
    assert isi(np.ones((4, 3))) == 0.0


@given(arrays(float, st.integers(2, 12), elements=finite), st.randoms(use_true_random=False))
def test_series_metrics_ignore_order(series, random):
    shuffled = list(series)
    random.shuffle(shuffled)
    assert ifiqr(shuffled) == pytest.approx(ifiqr(series), abs=1e-9)
    assert ifm(shuffled) == pytest.approx(ifm(series), rel=1e-12, abs=1e-9)


def test_path_metrics_depend_on_order():
    path = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]])
    shuffled = path[[0, 2, 1, 3]]
    assert idt(shuffled) != idt(path)
    assert isi(shuffled) != isi(path)


@given(arrays(float, st.tuples(st.integers(2, 8), st.just(2)), elements=st.floats(-10, 10)))
def test_isi_at_least_one(path):
    if np.linalg.norm(path[0] - path[-1]) >= ISI_EPS:
        assert isi(path) >= 1.0 - 1e-12


@settings(max_examples=50)
@given(arrays(float, (6, 3), elements=finite))
def test_individual_metrics_match_oracles(path):
    pts = path.tolist()
    assert idt(path) == pytest.approx(oracles.idt(pts), abs=1e-9)
    assert isi(path) == pytest.approx(oracles.isi(pts), rel=1e-12, abs=1e-9)
    assert ifiqr(path[:, 0]) == pytest.approx(oracles.ifiqr(list(path[:, 0])), abs=1e-9)


# -- feature vector --------------------------------------------------------

@pytest.mark.parametrize("T, Np", [(1, 2), (3, 4), (10, 5), (50, 10), (500, 20)])
def test_feature_vector_length(T, Np):
    log = frozen_log(T, Np)
    fv = assemble_feature_vector(log, make_problem("sphere", dimension=2))
    assert len(fv) == 4 * (T + Np)
    assert fv.layout == LAYOUT_TAG


def test_feature_vector_full_run_length():
    assert len(assemble_feature_vector(frozen_log(500, 20), make_problem("sphere", 2))) == 2080


def test_feature_vector_layout(small_config):
    cfg = small_config("PSO", pop_size=4, max_gen=5)
    log = run_algorithm(cfg)
    fv = assemble_feature_vector(log, cfg.problem)
    pop = fv.population_block
    t = 2
    assert pop[t, 2] == pytest.approx(log.fitness[t].mean())
    assert pop[t, 3] == pytest.approx(oracles.population_std(list(log.fitness[t])))
    ind = fv.individual_block
    assert ind[1, 0] == pytest.approx(oracles.idt(log.positions[:, 1].tolist()))
    assert ind[1, 2] == pytest.approx(log.fitness[:, 1].mean())
    assert np.all(np.isfinite(fv.values))


def test_frozen_population_descriptors():
    log = frozen_log(T=6, Np=4)
    fv = assemble_feature_vector(log, make_problem("sphere", dimension=2))
    ind = fv.individual_block
    assert np.all(ind[:, 0] == 0.0)
    assert np.all(ind[:, 3] == 0.0)
    pop = fv.population_block
    assert np.all(pop[:, 1] == pop[0, 1])
    assert np.all(pop[:, 3] == pop[0, 3])


def test_identical_logs_give_identical_vectors(small_config):
    cfg = small_config("BA")
    a = assemble_feature_vector(run_algorithm(cfg), cfg.problem)
    b = assemble_feature_vector(run_algorithm(cfg), cfg.problem)
    np.testing.assert_array_equal(a.values, b.values)


def test_incomplete_log_rejected(small_config):
    cfg = small_config("PSO", max_gen=5)
    log = run_algorithm(cfg)
    short = TrajectoryLog(log.positions[:3], log.fitness[:3], log.best_fitness[:3], cfg)
    with pytest.raises(ValueError):
        assemble_feature_vector(short, cfg.problem)
    broken = TrajectoryLog(log.positions, log.fitness[:, :2], log.best_fitness)
    with pytest.raises(ValueError):
        assemble_feature_vector(broken, cfg.problem)


def test_feature_vector_shape_checks():
    with pytest.raises(ValueError):
        FeatureVector(np.zeros(11), n_generations=1, pop_size=2)
    a = FeatureVector(np.ones(12), 1, 2)
    with pytest.raises(ValueError):
        a.check_compatible(FeatureVector(np.ones(12), 2, 1))
    with pytest.raises(ValueError):
        a.check_compatible(FeatureVector(np.ones(12), 1, 2, layout="metric-major"))
