"""
Meta-DE: differential evolution over hyper-parameter settings.

Each Meta-DE individual is one setting of the controlled algorithm's tunable
parameters. Its fitness is the cosine similarity between the feature vector
of the controlled algorithm run with that setting and the reference feature
vector of the control algorithm, both runs started from the same seed. The
loop is DE/rand/1/bin with one-to-one selection; all trials of a generation
are built first, evaluated (optionally in parallel), then selected.
"""

import logging
import os
import shutil
import subprocess
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .descriptors import FeatureVector, assemble_feature_vector
from .optimizers.base import PARAM_NAMES, RunConfig, canonical_algorithm, make_rng, run_algorithm
from .similarity.metrics import cosine_similarity

__all__ = [
    "HyperParamDomain",
    "DOMAINS",
    "MetaIndividual",
    "MetaConfig",
    "MetaResult",
    "de_mutate_rand1",
    "de_bin_crossover",
    "repair_to_domain",
    "evaluate_candidate",
    "run_metade",
]

log = logging.getLogger(__name__)

FAILED = float("-inf")


@dataclass(frozen=True)
class HyperParamDomain:
    name: str
    lower: float
    upper: float
    control_kind: str = "FIX"

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError("domain %s needs lower < upper, got [%s, %s]" % (self.name, self.lower, self.upper))
        if self.control_kind not in ("FIX", "DET", "META"):
            raise ValueError("control_kind must be FIX, DET or META, got %r" % self.control_kind)


def _fa_domains():
    return (
        HyperParamDomain("alpha", 0.1, 1.0, "DET"),
        HyperParamDomain("beta0", 0.5, 1.5, "META"),
        HyperParamDomain("gamma", 0.1, 1.0, "FIX"),
    )


DOMAINS: Dict[str, Tuple[HyperParamDomain, ...]] = {
    "accPSO": (HyperParamDomain("alpha", 0.1, 1.0), HyperParamDomain("beta", 0.1, 1.0)),
    "accFA": (HyperParamDomain("alpha", 0.1, 1.0), HyperParamDomain("beta", 0.1, 1.0)),
    "PSO": (
        HyperParamDomain("w", 0.4, 0.9),
        HyperParamDomain("c1", 1.5, 2.5),
        HyperParamDomain("c2", 1.5, 2.5),
    ),
    "FA": _fa_domains(),
    # the hybrid firefly variant shares the firefly parameters and domains
    "FAv2": _fa_domains(),
    "BA": (HyperParamDomain("A0", 0.7, 1.2, "DET"), HyperParamDomain("gamma", 0.1, 0.3, "META")),
}


@dataclass
class MetaIndividual:
    genes: np.ndarray
    fitness: float = FAILED
    fv: Optional[FeatureVector] = field(default=None, repr=False)
    objective: float = float("nan")


@dataclass
class MetaConfig:
    """
    Settings of one Meta-DE campaign.

    Parameters
    ----------
    control : RunConfig
        Control algorithm, its parameters, the shared run seed and the run
        shape (problem, Np, T). The controlled runs copy everything except
        algorithm and parameters.
    controlled : str
        Algorithm whose parameters are tuned.
    np_meta, t_meta : int
        Meta-DE population size and number of generations.
    F, CR : float
        Differential weight and crossover rate.
    seed_meta : int, optional
        Seed of the Meta-DE stream; defaults to the shared run seed.
    mode : {"inprocess", "subprocess"}
        How controlled runs are launched.
    output_dir : str, optional
        If given, every candidate feature vector is written there as
        ``<controlled>.<seq>``.
    workers : int
        Processes used to evaluate one generation's candidates.
    reference : FeatureVector, optional
        Precomputed control feature vector; computed from ``control`` if absent.
    """

    control: RunConfig
    controlled: str
    np_meta: int = 20
    t_meta: int = 500
    F: float = 0.5
    CR: float = 0.9
    seed_meta: Optional[int] = None
    mode: str = "inprocess"
    output_dir: Optional[str] = None
    workers: int = 1
    reference: Optional[FeatureVector] = field(default=None, repr=False)
    domains: Optional[Tuple[HyperParamDomain, ...]] = None

    def __post_init__(self):
        self.controlled = canonical_algorithm(self.controlled)
        if self.np_meta < 4:
            raise ValueError("DE/rand/1 needs np_meta >= 4, got %d" % self.np_meta)
        if self.t_meta < 0:
            raise ValueError("t_meta must be >= 0, got %d" % self.t_meta)
        if not 0.0 < self.F <= 2.0:
            raise ValueError("F must lie in (0, 2], got %s" % self.F)
        if not 0.0 <= self.CR <= 1.0:
            raise ValueError("CR must lie in [0, 1], got %s" % self.CR)
        if self.mode not in ("inprocess", "subprocess"):
            raise ValueError("mode must be 'inprocess' or 'subprocess', got %r" % self.mode)
        if self.seed_meta is None:
            self.seed_meta = int(self.control.seed)
        if self.domains is None:
            self.domains = DOMAINS[self.controlled]
        names = tuple(d.name for d in self.domains)
        if names != PARAM_NAMES[self.controlled]:
            raise ValueError("domains %s do not match %s parameters %s"
                             % (names, self.controlled, PARAM_NAMES[self.controlled]))

    @property
    def launches(self) -> int:
        return self.np_meta * (self.t_meta + 1)

    def controlled_config(self, genes) -> RunConfig:
        params = {d.name: float(g) for d, g in zip(self.domains, genes)}
        return self.control.replace(algorithm=self.controlled, params=params)

    def reference_fv(self) -> FeatureVector:
        if self.reference is None:
            self.reference = assemble_feature_vector(run_algorithm(self.control), self.control.problem)
        return self.reference


@dataclass
class MetaResult:
    best_params: Dict[str, float]
    best_fv: Optional[FeatureVector]
    best_fitness: float
    history: List[float]
    best_objective: float = float("nan")
    launches: int = 0
    failures: int = 0

    def __iter__(self):
        return iter((self.best_params, self.best_fv, self.best_fitness, self.history))


# -- operators -------------------------------------------------------------

def de_mutate_rand1(pop: Sequence, i: int, F: float, rng: np.random.Generator) -> np.ndarray:
    """``x_r1 + F (x_r2 - x_r3)`` with r1, r2, r3 distinct and different from ``i``."""
    genes = [np.asarray(getattr(p, "genes", p), dtype=float) for p in pop]
    n = len(genes)
    if n < 4:
        raise ValueError("DE/rand/1 needs at least 4 individuals, got %d" % n)
    others = np.array([k for k in range(n) if k != i])
    r1, r2, r3 = rng.choice(others, size=3, replace=False)
    return genes[r1] + F * (genes[r2] - genes[r3])


def de_bin_crossover(target, donor, CR: float, rng: np.random.Generator) -> np.ndarray:
    """Binomial crossover; the gene at a random index always comes from the donor."""
    target = np.asarray(target, dtype=float)
    donor = np.asarray(donor, dtype=float)
    if target.shape != donor.shape or target.ndim != 1 or target.size < 1:
        raise ValueError("target and donor must be equal-length non-empty vectors")
    j_rand = rng.integers(target.size)
    take = rng.random(target.size) < CR
    take[j_rand] = True
    return np.where(take, donor, target)


def repair_to_domain(genes, domains: Sequence[HyperParamDomain]) -> np.ndarray:
    g = np.asarray(genes, dtype=float)
    if g.shape != (len(domains),):
        raise ValueError("expected %d genes, got %s" % (len(domains), g.shape))
    lo = np.array([d.lower for d in domains])
    hi = np.array([d.upper for d in domains])
    return np.clip(g, lo, hi)


# -- evaluation ------------------------------------------------------------

def _run_subprocess(config: RunConfig, workdir: str) -> FeatureVector:
    from .harness.protocol import format_switches, read_feature_vector

    cmd = [sys.executable, "-m", "nimeq.standalone", config.algorithm]
    cmd += format_switches(config, runs=1, out_dir=workdir)
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        raise RuntimeError("controlled run failed (%d): %s" % (proc.returncode, proc.stderr.strip()))
    return read_feature_vector(os.path.join(workdir, "%s.%d" % (config.algorithm, config.seed)))


def _evaluate(genes, meta_config: MetaConfig, reference: FeatureVector, seq: Optional[int] = None):
    config = meta_config.controlled_config(genes)
    try:
        if meta_config.mode == "subprocess":
            workdir = tempfile.mkdtemp(prefix="nimeq-")
            try:
                fv = _run_subprocess(config, workdir)
            finally:
                shutil.rmtree(workdir, ignore_errors=True)
            objective = float("nan")
        else:
            run_log = run_algorithm(config)
            fv = assemble_feature_vector(run_log, config.problem)
            objective = float(run_log.best_fitness[-1])
        fitness = cosine_similarity(reference, fv)
    except Exception as exc:  # a failed candidate must not stop the campaign
        log.warning("candidate %s for %s failed: %s", np.round(genes, 6), meta_config.controlled, exc)
        return FAILED, None, float("nan")
    if meta_config.output_dir is not None and seq is not None:
        from .harness.protocol import write_feature_vector

        write_feature_vector(fv, os.path.join(meta_config.output_dir, "%s.%d" % (meta_config.controlled, seq)))
    return fitness, fv, objective


def evaluate_candidate(genes, meta_config: MetaConfig) -> Tuple[float, Optional[FeatureVector]]:
    """
    Cosine similarity of the controlled run with ``genes`` to the reference.

    Both runs use the control's seed. A failing run scores ``-inf``.
    """
    fitness, fv, _ = _evaluate(genes, meta_config, meta_config.reference_fv())
    return fitness, fv


def _evaluate_batch(batch, meta_config, reference, first_seq):
    jobs = [(g, meta_config, reference, first_seq + k) for k, g in enumerate(batch)]
    if meta_config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=meta_config.workers) as pool:
            return list(pool.map(_evaluate, *zip(*jobs)))
    return [_evaluate(*job) for job in jobs]


def run_metade(meta_config: MetaConfig) -> MetaResult:
    """
    Tune the controlled algorithm to imitate the control.

    Returns a ``MetaResult``; unpacking it yields ``(best_params, best_fv,
    best_fitness, history)`` where ``history[g]`` is the best fitness after
    generation ``g`` (index 0 is the initial population).
    """
    reference = meta_config.reference_fv()
    rng = make_rng(meta_config.seed_meta, "metade")
    domains = meta_config.domains
    lo = np.array([d.lower for d in domains])
    hi = np.array([d.upper for d in domains])
    n, q = meta_config.np_meta, len(domains)
    if meta_config.output_dir is not None:
        os.makedirs(meta_config.output_dir, exist_ok=True)

    init = lo + (hi - lo) * rng.random((n, q))
    seq = 1
    results = _evaluate_batch(init, meta_config, reference, seq)
    seq += n
    pop = [MetaIndividual(g, f, fv, obj) for g, (f, fv, obj) in zip(init, results)]
    failures = sum(ind.fitness == FAILED for ind in pop)

    best = max(pop, key=lambda ind: ind.fitness)
    best = MetaIndividual(best.genes.copy(), best.fitness, best.fv, best.objective)
    history = [best.fitness]

    for _ in range(meta_config.t_meta):
        trials = []
        for i in range(n):
            donor = de_mutate_rand1(pop, i, meta_config.F, rng)
            trial = de_bin_crossover(pop[i].genes, donor, meta_config.CR, rng)
            trials.append(repair_to_domain(trial, domains))
        results = _evaluate_batch(trials, meta_config, reference, seq)
        seq += n
        for i, (trial, (f, fv, obj)) in enumerate(zip(trials, results)):
            failures += f == FAILED
            if f >= pop[i].fitness:
                pop[i] = MetaIndividual(trial, f, fv, obj)
            if f > best.fitness:
                best = MetaIndividual(trial.copy(), f, fv, obj)
        history.append(best.fitness)

    params = {d.name: float(g) for d, g in zip(domains, best.genes)}
    if best.fv is not None and np.isnan(best.objective):
        # subprocess runs only report feature vectors; recover the objective in-process
        best.objective = float(run_algorithm(meta_config.controlled_config(best.genes)).best_fitness[-1])
    return MetaResult(
        best_params=params,
        best_fv=best.fv,
        best_fitness=float(best.fitness),
        history=history,
        best_objective=best.objective,
        launches=seq - 1,
        failures=int(failures),
    )
