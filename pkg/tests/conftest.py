import numpy as np
import pytest

from nimeq.benchmarks import make_problem
from nimeq.optimizers import RunConfig

DEFAULT_PARAMS = {
    "accPSO": {"alpha": 0.5, "beta": 0.2},
    "accFA": {"alpha": 0.5, "beta": 0.2},
    "PSO": {"w": 0.5, "c1": 1.5, "c2": 1.5},
    "FA": {"alpha": 0.5, "beta0": 1.0, "gamma": 0.5},
    "FAv2": {"alpha": 0.5, "beta0": 1.0, "gamma": 0.5},
    "BA": {"A0": 1.0, "gamma": 0.1},
}


@pytest.fixture
def sphere10():
    return make_problem("sphere", dimension=10)


@pytest.fixture
def small_config():
    def build(algorithm, pop_size=6, max_gen=8, seed=1, dimension=3, **kw):
        params = kw.pop("params", DEFAULT_PARAMS[algorithm])
        return RunConfig(make_problem("sphere", dimension=dimension), algorithm, params,
                         pop_size=pop_size, max_gen=max_gen, seed=seed, **kw)
    return build


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line for the acceptance summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    def record(label, ok, detail):
        line = "%s %s: %s" % ("PASS" if ok else "FAIL", label, detail)
        lines.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
