import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nimeq.benchmarks import make_problem
from nimeq.descriptors import FeatureVector, assemble_feature_vector
from nimeq.harness.protocol import (
    DEFAULTS,
    FormatError,
    UsageError,
    format_switches,
    main,
    parse_cli,
    read_feature_vector,
    write_feature_vector,
)
from nimeq.metade import MetaConfig, evaluate_candidate
from nimeq.optimizers import RunConfig, run_algorithm

from conftest import DEFAULT_PARAMS


def test_parse_canonical_invocation(tmp_path):
    cli = parse_cli(["-a0.5", "-b0.2", "-g500", "-d10", "-s1", "-f%s" % tmp_path])
    assert cli.param_values == [0.5, 0.2]
    assert (cli.get("g"), cli.get("d"), cli.get("s")) == (500, 10, 1)
    assert cli.get("f") == str(tmp_path)
    assert cli.get("p") == DEFAULTS["p"] and cli.get("r") == 1
    cfg = cli.run_config("accPSO")
    assert cfg.params == {"alpha": 0.5, "beta": 0.2}
    assert cfg.max_gen == 500 and cfg.problem.dimension == 10 and cfg.seed == 1


@pytest.mark.parametrize("tokens", [
    ["-a", "0.5", "-b0.2", "-fout"],
    ["-a0.5", "-b", "0.2", "-fout"],
    ["-g", "500", "-a0.5", "-fout"],
    ["-a0.5", "-f", "out"],
    ["a0.5"],
    ["-x1"],
    ["-a0.5", "-a0.6"],
    ["-gfive"],
    ["-aNaN"],
    ["-b0.2"],
    ["-a0.5", "-c0.2"],
    ["-a0.5", "-b0.2", "-n3"],
    ["-g0"],
    ["-s-1"],
    ["-z2"],
    [],
])
def test_parse_rejects(tokens):
    with pytest.raises(UsageError):
        parse_cli(tokens)


def test_missing_output_dir_is_usage_error():
    with pytest.raises(UsageError):
        parse_cli(["-a0.5", "-b0.2"]).get("f")
    assert main(["accPSO", "-a0.5", "-b0.2", "-g3"]) == 2
    assert main(["-a0.5"]) == 2
    assert main([]) == 2


def test_wrong_parameter_count(tmp_path):
    with pytest.raises(UsageError):
        parse_cli(["-a0.5", "-fx"]).params_for("PSO")
    assert main(["PSO", "-a0.5", "-b1.5", "-f%s" % tmp_path]) == 2


@pytest.mark.parametrize("algorithm", list(DEFAULT_PARAMS))
def test_switches_round_trip(algorithm):
    problem = make_problem("sphere", dimension=4, lower=-3.5, upper=7.25)
    params = {k: v + 0.1234567890123 for k, v in DEFAULT_PARAMS[algorithm].items()}
    cfg = RunConfig(problem, algorithm, params, pop_size=7, max_gen=9, seed=42,
                    ba_zero_init=algorithm == "BA")
    back = parse_cli(format_switches(cfg, out_dir="somewhere")).run_config(algorithm)
    assert back.params == cfg.params
    assert (back.pop_size, back.max_gen, back.seed, back.ba_zero_init) == (7, 9, 42, cfg.ba_zero_init)
    assert (back.problem.lower_bound, back.problem.upper_bound) == (-3.5, 7.25)


@settings(max_examples=50)
@given(st.floats(0.1, 1.0), st.floats(0.1, 1.0))
def test_float_switches_exact(alpha, beta):
    cfg = RunConfig(make_problem("sphere", 2), "accFA", {"alpha": alpha, "beta": beta})
    back = parse_cli(format_switches(cfg)).params_for("accFA")
    assert back == {"alpha": alpha, "beta": beta}


def test_format_refuses_unsupported_settings():
    cfg = RunConfig(make_problem("sphere", 2), "BA", {"A0": 1.0, "gamma": 0.1}, q_max=3.0)
    with pytest.raises(ValueError):
        format_switches(cfg)


def test_feature_vector_file_round_trip(tmp_path, small_config):
    cfg = small_config("FA")
    fv = assemble_feature_vector(run_algorithm(cfg), cfg.problem)
    path = str(tmp_path / "FA.1")
    write_feature_vector(fv, path)
    back = read_feature_vector(path)
    np.testing.assert_array_equal(back.values, fv.values)
    assert (back.n_generations, back.pop_size, back.dimension) == (8, 6, 3)
    assert not os.path.exists(path + ".tmp")


@pytest.mark.parametrize("content", [
    "",
    "1 2 gen-major+ind-major\n" + "0\n" * 12,
    "1 2 3 metric-major\n" + "0\n" * 12,
    "1 2 3 gen-major+ind-major\n" + "0\n" * 11,
    "x 2 3 gen-major+ind-major\n" + "0\n" * 12,
    "1 2 3 gen-major+ind-major\n" + "0\n" * 11 + "abc\n",
])
def test_read_rejects_malformed(tmp_path, content):
    path = tmp_path / "bad"
    path.write_text(content)
    with pytest.raises(FormatError):
        read_feature_vector(str(path))


def test_read_any_layout(tmp_path):
    path = str(tmp_path / "fv")
    write_feature_vector(FeatureVector(np.arange(12.0), 1, 2, 1, layout="metric-major"), path)
    assert read_feature_vector(path, layout=None).layout == "metric-major"


def test_standalone_writes_one_file_per_seed(tmp_path):
    out = tmp_path / "out"
    rc = main(["BA", "-a1.0", "-b0.1", "-g4", "-d2", "-p5", "-s7", "-r3", "-f%s" % out])
    assert rc == 0
    assert sorted(os.listdir(out)) == ["BA.7", "BA.8", "BA.9"]
    cfg = RunConfig(make_problem("sphere", 2), "BA", {"A0": 1.0, "gamma": 0.1},
                    pop_size=5, max_gen=4, seed=8)
    expected = assemble_feature_vector(run_algorithm(cfg), cfg.problem)
    np.testing.assert_array_equal(read_feature_vector(str(out / "BA.8")).values, expected.values)


def test_standalone_deterministic(tmp_path):
    for name in ("x", "y"):
        assert main(["PSO", "-a0.5", "-b1.5", "-c1.5", "-g5", "-d3", "-p4", "-f%s" % (tmp_path / name)]) == 0
    a = (tmp_path / "x" / "PSO.1").read_bytes()
    assert a == (tmp_path / "y" / "PSO.1").read_bytes()


@pytest.mark.parametrize("controlled, genes", [("accFA", [0.5, 0.2]), ("PSO", [0.7123, 1.9, 2.3]),
                                               ("BA", [0.95, 0.15])])
def test_subprocess_mode_bitwise_equal(controlled, genes):
    control = RunConfig(make_problem("sphere", 3), "accPSO", {"alpha": 0.5, "beta": 0.2},
                        pop_size=5, max_gen=6, seed=4)
    f_in, fv_in = evaluate_candidate(genes, MetaConfig(control, controlled))
    f_sub, fv_sub = evaluate_candidate(genes, MetaConfig(control, controlled, mode="subprocess"))
    assert f_in == f_sub
    np.testing.assert_array_equal(fv_in.values, fv_sub.values)
