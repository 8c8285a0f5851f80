"""
Case-study workflow: reference runs, per-seed Meta-DE tuning, reports.

Output layout under the study directory::

    reference/<Alg1>.<seed>            control feature vectors
    best/<Alg2>.<seed>                 best tuned feature vector per seed
    candidates/<Alg2>/<seed>/<Alg2>.<seq>   every Meta-DE candidate (optional)
    similarity.csv, similarity.txt     six metrics per controlled algorithm
    parameters.csv, parameters.txt     tuned parameters and run fitness
"""

import csv
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional

import numpy as np

from ..benchmarks import ProblemSpec, make_problem
from ..descriptors import (
    INDIVIDUAL_METRICS,
    POPULATION_METRICS,
    FeatureVector,
    assemble_feature_vector,
    individual_metrics,
    population_metrics,
)
from ..metade import MetaConfig, MetaResult, run_metade
from ..optimizers.base import PARAM_NAMES, RunConfig, TrajectoryLog, run_algorithm
from ..similarity.classifiers import PairedSample
from ..similarity.metrics import summarize
from ..similarity.report import METRIC_COLUMNS, STAT_ROWS, SimilarityReport, build_report
from .presets import CaseStudyConfig
from .protocol import write_feature_vector

__all__ = [
    "StudyResult",
    "run_control_campaign",
    "run_case_study",
    "emit_metric_csv",
    "write_report_csv",
    "write_report_text",
    "write_classifier_csv",
    "write_parameter_csv",
    "write_parameter_text",
    "parameter_summary",
]

log = logging.getLogger(__name__)


@dataclass
class StudyResult:
    config: CaseStudyConfig
    references: Dict[int, FeatureVector]
    tuned: Dict[str, Dict[int, MetaResult]]
    reports: Dict[str, SimilarityReport]
    failures: Dict[str, List[int]] = field(default_factory=dict)

    def parameters(self) -> Dict[str, Dict[str, Dict[str, float]]]:
        return parameter_summary(self.tuned)


def _problem(study: CaseStudyConfig) -> ProblemSpec:
    return make_problem("sphere", dimension=study.dimension, lower=study.lower, upper=study.upper)


def control_config(study: CaseStudyConfig, seed: int) -> RunConfig:
    return RunConfig(
        problem=_problem(study),
        algorithm=study.control,
        params=study.control_param_map,
        pop_size=study.pop_size,
        max_gen=study.generations,
        seed=seed,
    )


def _reference(config: RunConfig) -> FeatureVector:
    return assemble_feature_vector(run_algorithm(config), config.problem)


def _pool_map(fn, jobs, workers):
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, jobs))
    return [fn(job) for job in jobs]


def run_control_campaign(study: CaseStudyConfig, out_dir: Optional[str] = None) -> Dict[int, FeatureVector]:
    """Reference feature vector for every seed, written as ``<Alg1>.<seed>`` when ``out_dir`` is set."""
    configs = [control_config(study, s) for s in study.seeds]
    fvs = _pool_map(_reference, configs, study.workers)
    refs = dict(zip(study.seeds, fvs))
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        for seed, fv in refs.items():
            write_feature_vector(fv, os.path.join(out_dir, "%s.%d" % (study.control, seed)))
    return refs


def _tune(meta: MetaConfig) -> Optional[MetaResult]:
    try:
        return run_metade(meta)
    except Exception as exc:
        log.error("Meta-DE for %s seed %d failed: %s", meta.controlled, meta.control.seed, exc)
        return None


def run_case_study(study: CaseStudyConfig) -> StudyResult:
    """
    Run the whole workflow for one study.

    Every algorithm of the set, the control included, is tuned by Meta-DE
    against the control's reference vector of each seed. Seeds whose tuning
    produced no feature vector are recorded in ``failures`` and left out of
    that algorithm's report.
    """
    root = study.output_dir
    refs = run_control_campaign(study, os.path.join(root, "reference") if root else None)

    jobs, keys = [], []
    for alg in study.algorithms:
        for seed in study.seeds:
            cand_dir = None
            if root and study.keep_candidates:
                cand_dir = os.path.join(root, "candidates", alg, str(seed))
            jobs.append(MetaConfig(
                control=control_config(study, seed),
                controlled=alg,
                np_meta=study.np_meta,
                t_meta=study.t_meta,
                F=study.F,
                CR=study.CR,
                mode=study.mode,
                output_dir=cand_dir,
                reference=refs[seed],
            ))
            keys.append((alg, seed))
    results = _pool_map(_tune, jobs, study.workers)

    tuned: Dict[str, Dict[int, MetaResult]] = {alg: {} for alg in study.algorithms}
    failures: Dict[str, List[int]] = {alg: [] for alg in study.algorithms}
    for (alg, seed), res in zip(keys, results):
        if res is None or res.best_fv is None:
            failures[alg].append(seed)
        else:
            tuned[alg][seed] = res

    reports = {}
    for alg in study.algorithms:
        seeds = sorted(tuned[alg])
        if not seeds:
            continue
        sample = PairedSample([refs[s] for s in seeds], [tuned[alg][s].best_fv for s in seeds], seeds)
        reports[alg] = build_report(alg, sample, model_seed=study.model_seed)

    result = StudyResult(study, refs, tuned, reports, failures)
    if root:
        best_dir = os.path.join(root, "best")
        os.makedirs(best_dir, exist_ok=True)
        for alg, per_seed in tuned.items():
            for seed, res in per_seed.items():
                write_feature_vector(res.best_fv, os.path.join(best_dir, "%s.%d" % (alg, seed)))
        labels = _row_labels(study)
        write_report_csv(reports, os.path.join(root, "similarity.csv"), labels)
        write_report_text(reports, os.path.join(root, "similarity.txt"), labels)
        write_classifier_csv(reports, os.path.join(root, "classifiers.csv"), labels)
        params = result.parameters()
        write_parameter_csv(params, os.path.join(root, "parameters.csv"), labels)
        write_parameter_text(params, os.path.join(root, "parameters.txt"), labels)
    return result


def _row_labels(study: CaseStudyConfig) -> Dict[str, str]:
    return {alg: ("Control " + alg if alg == study.control else alg) for alg in study.algorithms}


# -- parameter tables ------------------------------------------------------

def parameter_summary(tuned: Mapping[str, Mapping[int, MetaResult]]) -> Dict[str, Dict[str, Dict[str, float]]]:
    """``out[alg][param or "Fitness"][statistic]`` over seeds."""
    out = {}
    for alg, per_seed in tuned.items():
        if not per_seed:
            continue
        rows = {}
        for name in PARAM_NAMES[alg]:
            rows[name] = summarize(r.best_params[name] for r in per_seed.values()).as_dict()
        rows["Fitness"] = summarize(r.best_objective for r in per_seed.values()).as_dict()
        out[alg] = rows
    return out


def write_parameter_csv(params, path: str, labels: Optional[Mapping[str, str]] = None) -> None:
    labels = labels or {}
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["algorithm", "parameter", "statistic", "value"])
        for alg, rows in params.items():
            for name, stats in rows.items():
                for stat in STAT_ROWS:
                    w.writerow([labels.get(alg, alg), name, stat, "%.17g" % stats[stat]])


def write_parameter_text(params, path: str, labels: Optional[Mapping[str, str]] = None) -> None:
    labels = labels or {}
    lines = ["%-16s %-9s" % ("Algorithm", "Metric") + "".join("%12s" % s for s in STAT_ROWS)]
    for alg, rows in params.items():
        for name, stats in rows.items():
            lines.append("%-16s %-9s" % (labels.get(alg, alg), name)
                         + "".join("%12.4f" % stats[s] for s in STAT_ROWS))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


# -- similarity tables -----------------------------------------------------

def write_report_csv(reports: Mapping[str, SimilarityReport], path: str,
                     labels: Optional[Mapping[str, str]] = None) -> None:
    """One row per (algorithm, statistic); empty cells where a metric is missing."""
    labels = labels or {}
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["algorithm", "statistic"] + list(METRIC_COLUMNS))
        for alg, rep in reports.items():
            table = rep.table()
            for stat in STAT_ROWS:
                cells = ["" if np.isnan(table[stat][c]) else "%.17g" % table[stat][c] for c in METRIC_COLUMNS]
                w.writerow([labels.get(alg, alg), stat] + cells)


def write_report_text(reports: Mapping[str, SimilarityReport], path: str,
                      labels: Optional[Mapping[str, str]] = None) -> None:
    labels = labels or {}
    lines = ["%-16s %-7s" % ("Algorithm", "Stat") + "".join("%11s" % c for c in METRIC_COLUMNS)]
    for alg, rep in reports.items():
        table = rep.table()
        for stat in STAT_ROWS:
            cells = ["%11s" % "-" if np.isnan(table[stat][c]) else "%11.4f" % table[stat][c]
                     for c in METRIC_COLUMNS]
            lines.append("%-16s %-7s" % (labels.get(alg, alg), stat) + "".join(cells))
        lines.append("%-16s %-7s %s  (theorem holds for %d/%d seeds)" % (
            "", "label", rep.labels["Sim_cos"], sum(rep.theorem_verdicts), len(rep.theorem_verdicts)))
        if rep.ml:
            lines.append("%-16s %-7s " % ("", "1-A") + "  ".join(
                "%s %.4f" % (m, r.one_minus_accuracy) for m, r in rep.ml.items()))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def write_classifier_csv(reports: Mapping[str, SimilarityReport], path: str,
                         labels: Optional[Mapping[str, str]] = None) -> None:
    """Cross-validated accuracy per classifier, with both similarity readings."""
    labels = labels or {}
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["algorithm", "method", "similarity", "similarity_std", "accuracy", "one_minus_accuracy"])
        for alg, rep in reports.items():
            for m, r in rep.ml.items():
                w.writerow([labels.get(alg, alg), m] + ["%.17g" % v for v in
                           (r.similarity, r.similarity_std, r.accuracy, r.one_minus_accuracy)])


# -- per-metric CSVs -------------------------------------------------------

def emit_metric_csv(logs: Mapping[str, TrajectoryLog], path: str,
                    spec: Optional[ProblemSpec] = None) -> List[str]:
    """
    Write one CSV per descriptor into directory ``path``.

    Population metrics give T rows (one per generation), individual metrics
    Np rows; each algorithm in ``logs`` is a column. Returns the file paths.
    """
    if not logs:
        raise ValueError("emit_metric_csv needs at least one log")
    names = list(logs)
    pop, ind = {}, {}
    for name, run_log in logs.items():
        problem = spec if spec is not None else run_log.config.problem
        pop[name] = population_metrics(run_log, problem)[0]
        ind[name] = individual_metrics(run_log)
    os.makedirs(path, exist_ok=True)
    written = []
    for block, metrics, index in ((pop, POPULATION_METRICS, "generation"),
                                  (ind, INDIVIDUAL_METRICS, "individual")):
        counts = {block[n].shape[0] for n in names}
        if len(counts) != 1:
            raise ValueError("logs disagree on the number of %ss: %s" % (index, sorted(counts)))
        n_rows = counts.pop()
        for k, metric in enumerate(metrics):
            out = os.path.join(path, metric + ".csv")
            with open(out, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow([index] + names)
                for r in range(n_rows):
                    w.writerow([r + 1] + ["%.17g" % block[n][r, k] for n in names])
            written.append(out)
    return written
