"""
Command line front end.

Subcommands
-----------
study        run a case study from a preset or an INI file
compare      similarity and equivalence verdict of two feature-vector files
metrics-csv  per-descriptor CSVs for a set of algorithm runs
"""

import argparse
import logging
import sys

from ..benchmarks import make_problem
from ..optimizers.base import PARAM_NAMES, RunConfig, canonical_algorithm, run_algorithm
from ..similarity.metrics import (
    cosine_similarity,
    equivalence_verdict,
    interpret_correlation,
    smape_similarity,
    spearman_rho,
)
from .campaign import emit_metric_csv, run_case_study
from .presets import CASE_STUDIES, SCALES, load_study_config, make_study
from .protocol import read_feature_vector


def _study(args) -> int:
    overrides = {}
    for name in ("n_seeds", "np_meta", "t_meta", "workers", "mode", "output_dir"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value
    if args.keep_candidates:
        overrides["keep_candidates"] = True
    if args.config:
        study = load_study_config(args.config).with_changes(**overrides)
    elif args.study:
        study = make_study(args.study, args.scale, **overrides)
    else:
        raise SystemExit("study: give a case study id or --config")
    result = run_case_study(study)
    print("%s: control %s %s, %d seeds, Meta-DE %dx%d"
          % (study.study_id, study.control, study.control_params, study.n_seeds, study.np_meta, study.t_meta))
    for alg, rep in result.reports.items():
        s = rep.summaries["Sim_cos"]
        ml = "  ".join("%s %.4f" % (m, r.similarity) for m, r in rep.ml.items())
        print("  %-8s Sim_cos %.4f +- %.4f (%s)  %s" % (alg, s.mean, s.std, rep.labels["Sim_cos"], ml))
    for alg, seeds in result.failures.items():
        if seeds:
            print("  %s failed for seeds %s" % (alg, seeds))
    if study.output_dir:
        print("reports written to %s" % study.output_dir)
    return 0


def _compare(args) -> int:
    a = read_feature_vector(args.first)
    b = read_feature_vector(args.second)
    rho = spearman_rho(a, b)
    verdict = equivalence_verdict(a, b)
    print("Sim_cos   %.6f" % cosine_similarity(a, b))
    print("Sim_SMAPE %.6f" % smape_similarity(a, b))
    print("rho       %.6f (%s)" % (rho, interpret_correlation(rho)))
    print("strong equivalence: %s (strict: %s)" % (verdict["theorem"], verdict["strict"]))
    return 0 if verdict["theorem"] else 1


def _parse_run_spec(text):
    name, _, values = text.partition("=")
    alg = canonical_algorithm(name)
    params = [float(v) for v in values.split(",") if v]
    if len(params) != len(PARAM_NAMES[alg]):
        raise argparse.ArgumentTypeError("%s needs %d comma-separated values" % (alg, len(PARAM_NAMES[alg])))
    return alg, dict(zip(PARAM_NAMES[alg], params))


def _metrics_csv(args) -> int:
    problem = make_problem("sphere", dimension=args.dimension)
    logs = {}
    for alg, params in args.run:
        config = RunConfig(problem=problem, algorithm=alg, params=params,
                           pop_size=args.pop_size, max_gen=args.generations, seed=args.seed)
        logs[alg] = run_algorithm(config)
    for path in emit_metric_csv(logs, args.out):
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nimeq", description=__doc__.strip().splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("study", help="run a case study")
    p.add_argument("study", nargs="?", choices=sorted(CASE_STUDIES), help="preset id")
    p.add_argument("--config", help="INI file with a [study] section")
    p.add_argument("--scale", default="desk", choices=sorted(SCALES))
    p.add_argument("--out", dest="output_dir", help="output directory")
    p.add_argument("--seeds", dest="n_seeds", type=int)
    p.add_argument("--np-meta", type=int)
    p.add_argument("--t-meta", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--mode", choices=("inprocess", "subprocess"))
    p.add_argument("--keep-candidates", action="store_true", help="write every Meta-DE candidate vector")
    p.set_defaults(func=_study)

    p = sub.add_parser("compare", help="compare two feature-vector files")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=_compare)

    p = sub.add_parser("metrics-csv", help="per-descriptor CSVs for one seed")
    p.add_argument("--run", action="append", type=_parse_run_spec, required=True,
                   metavar="ALG=P1,P2[,P3]", help="algorithm and its parameters, repeatable")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--pop-size", type=int, default=20)
    p.add_argument("--generations", type=int, default=500)
    p.add_argument("--dimension", type=int, default=10)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_metrics_csv)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
