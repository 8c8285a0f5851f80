"""
Standalone optimizer protocol: switch parsing and feature-vector files.

A standalone optimizer is launched as ``nimeq-opt ALG -a0.5 -b0.2 -g500
-d10 -s1 -f/tmp/out``. Every switch is one token made of a dash, a letter
and its argument with nothing in between.

========  ==========================================
switch    argument
========  ==========================================
-a -b -c  algorithm parameters, in declaration order
-g        number of generations
-d        problem dimension
-n        number of parameters (checked against -a/-b/-c)
-r        number of independent runs
-s        first random seed
-f        output directory
-p        population size
-l -u     lower and upper bound of the search box
-z        1 to start the bat algorithm's accepted fitness at zero
========  ==========================================
"""

import os
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..benchmarks import make_problem
from ..descriptors import LAYOUT_TAG, FeatureVector, assemble_feature_vector
from ..optimizers.base import PARAM_NAMES, RunConfig, canonical_algorithm, run_algorithm

__all__ = [
    "UsageError",
    "FormatError",
    "CliInvocation",
    "parse_cli",
    "format_switches",
    "write_feature_vector",
    "read_feature_vector",
    "standalone_optimizer_main",
    "main",
]

PARAM_SWITCHES = ("a", "b", "c")
_INT_SWITCHES = {"g", "d", "n", "r", "s", "p", "z"}
_FLOAT_SWITCHES = {"a", "b", "c", "l", "u"}
_KNOWN = _INT_SWITCHES | _FLOAT_SWITCHES | {"f"}

DEFAULTS = {"g": 500, "d": 10, "r": 1, "s": 1, "p": 20, "l": -10.0, "u": 10.0, "z": 0}


class UsageError(ValueError):
    pass


class FormatError(ValueError):
    pass


@dataclass
class CliInvocation:
    """Parsed switches; ``switches`` keeps the raw argument strings."""

    switches: Dict[str, str] = field(default_factory=dict)

    def get(self, letter: str):
        if letter not in self.switches:
            if letter in DEFAULTS:
                return DEFAULTS[letter]
            raise UsageError("missing required switch -%s" % letter)
        raw = self.switches[letter]
        if letter in _INT_SWITCHES:
            return int(raw)
        if letter in _FLOAT_SWITCHES:
            return float(raw)
        return raw

    @property
    def param_values(self) -> List[float]:
        values = []
        for letter in PARAM_SWITCHES:
            if letter not in self.switches:
                break
            values.append(float(self.switches[letter]))
        return values

    def params_for(self, algorithm: str) -> Dict[str, float]:
        names = PARAM_NAMES[canonical_algorithm(algorithm)]
        values = self.param_values
        if len(values) != len(names):
            raise UsageError("%s takes %d parameters (-a..-%s), got %d"
                             % (algorithm, len(names), PARAM_SWITCHES[len(names) - 1], len(values)))
        return dict(zip(names, values))

    def run_config(self, algorithm: str, seed: Optional[int] = None) -> RunConfig:
        problem = make_problem("sphere", dimension=self.get("d"), lower=self.get("l"), upper=self.get("u"))
        return RunConfig(
            problem=problem,
            algorithm=algorithm,
            params=self.params_for(algorithm),
            pop_size=self.get("p"),
            max_gen=self.get("g"),
            seed=self.get("s") if seed is None else seed,
            ba_zero_init=bool(self.get("z")),
        )


def parse_cli(tokens: Sequence[str]) -> CliInvocation:
    """
    Parse switch tokens of the form ``-<letter><argument>``.

    Raises ``UsageError`` for a switch without an attached argument, a bare
    argument, an unknown or repeated letter, a non-numeric value where a
    number is expected, or a parameter switch given without its predecessors.
    """
    if not tokens:
        raise UsageError("no switches given")
    switches: Dict[str, str] = {}
    for tok in tokens:
        if len(tok) < 2 or tok[0] != "-":
            raise UsageError("expected -<switch><argument>, got %r" % tok)
        letter, arg = tok[1], tok[2:]
        if letter not in _KNOWN:
            raise UsageError("unknown switch -%s" % letter)
        if arg == "":
            raise UsageError("switch -%s needs its argument attached without a blank" % letter)
        if letter in switches:
            raise UsageError("switch -%s given twice" % letter)
        try:
            if letter in _INT_SWITCHES:
                int(arg)
            elif letter in _FLOAT_SWITCHES:
                if not np.isfinite(float(arg)):
                    raise ValueError
        except ValueError:
            raise UsageError("switch -%s expects a number, got %r" % (letter, arg)) from None
        switches[letter] = arg
    given = [k for k in PARAM_SWITCHES if k in switches]
    if given != list(PARAM_SWITCHES[: len(given)]):
        raise UsageError("parameter switches must be filled in order -a, -b, -c")
    if "n" in switches and int(switches["n"]) != len(given):
        raise UsageError("-n%s does not match the %d parameter switches given" % (switches["n"], len(given)))
    for letter in ("g", "d", "r", "p"):
        if letter in switches and int(switches[letter]) < 1:
            raise UsageError("-%s must be positive" % letter)
    if "s" in switches and int(switches["s"]) < 0:
        raise UsageError("-s must be non-negative")
    if "z" in switches and switches["z"] not in ("0", "1"):
        raise UsageError("-z takes 0 or 1")
    return CliInvocation(switches)


def format_switches(config: RunConfig, runs: int = 1, out_dir: str = ".") -> List[str]:
    """
    Tokens that make a standalone optimizer reproduce ``config``.

    Floats are written with ``repr`` so they round-trip exactly. Settings the
    protocol cannot carry must be at their defaults.
    """
    ref = RunConfig(problem=config.problem, algorithm=config.algorithm, params=config.params)
    for name in ("q_min", "q_max", "ba_loudness_decay", "fa_alpha_decay", "acc_alpha_decay"):
        if getattr(config, name) != getattr(ref, name):
            raise ValueError("setting %s cannot be passed to a standalone optimizer" % name)
    if config.problem.name != "sphere":
        raise ValueError("standalone optimizers only run the sphere problem")
    values = config.param_vector()
    tokens = ["-%s%r" % (letter, float(v)) for letter, v in zip(PARAM_SWITCHES, values)]
    tokens += [
        "-g%d" % config.max_gen,
        "-d%d" % config.problem.dimension,
        "-n%d" % len(values),
        "-r%d" % runs,
        "-s%d" % config.seed,
        "-p%d" % config.pop_size,
        "-l%r" % float(config.problem.lower_bound),
        "-u%r" % float(config.problem.upper_bound),
        "-z%d" % int(config.ba_zero_init),
        "-f%s" % out_dir,
    ]
    return tokens


# -- feature-vector files --------------------------------------------------

def write_feature_vector(fv: FeatureVector, path: str) -> None:
    """Header ``T Np D layout`` followed by one value per line, 17 significant digits."""
    lines = ["%d %d %d %s" % (fv.n_generations, fv.pop_size, fv.dimension, fv.layout)]
    lines += ["%.17g" % v for v in fv.values]
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def read_feature_vector(path: str, layout: Optional[str] = LAYOUT_TAG) -> FeatureVector:
    """
    Load a feature-vector file.

    ``layout`` is the tag the caller expects; pass None to accept any.
    """
    with open(path) as fh:
        lines = fh.read().split("\n")
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise FormatError("%s: empty file" % path)
    head = lines[0].split()
    if len(head) != 4:
        raise FormatError("%s: header must be 'T Np D layout', got %r" % (path, lines[0]))
    try:
        T, n, d = int(head[0]), int(head[1]), int(head[2])
    except ValueError:
        raise FormatError("%s: non-integer header field in %r" % (path, lines[0])) from None
    if layout is not None and head[3] != layout:
        raise FormatError("%s: layout %r, expected %r" % (path, head[3], layout))
    body = lines[1:]
    if len(body) != 4 * (T + n):
        raise FormatError("%s: expected %d values, found %d" % (path, 4 * (T + n), len(body)))
    try:
        values = np.array([float(s) for s in body])
    except ValueError as exc:
        raise FormatError("%s: %s" % (path, exc)) from None
    return FeatureVector(values, n_generations=T, pop_size=n, dimension=d, layout=head[3])


# -- standalone optimizer --------------------------------------------------

def standalone_optimizer_main(algorithm: str, cli: CliInvocation) -> int:
    """Run ``-r`` seeds starting at ``-s`` and write ``<ALG>.<seed>`` files into ``-f``."""
    algorithm = canonical_algorithm(algorithm)
    out_dir = cli.get("f")
    os.makedirs(out_dir, exist_ok=True)
    first = cli.get("s")
    for seed in range(first, first + cli.get("r")):
        config = cli.run_config(algorithm, seed)
        fv = assemble_feature_vector(run_algorithm(config), config.problem)
        write_feature_vector(fv, os.path.join(out_dir, "%s.%d" % (algorithm, seed)))
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    usage = "usage: nimeq-opt ALGORITHM -a<p1> [-b<p2> [-c<p3>]] [-g<T>] [-d<D>] [-n<k>] " \
            "[-r<runs>] [-s<seed>] [-p<Np>] [-l<lower>] [-u<upper>] [-z0|1] -f<dir>"
    if not argv or argv[0].startswith("-"):
        print(usage, file=sys.stderr)
        return 2
    try:
        cli = parse_cli(argv[1:])
        cli.get("f")
        cli.params_for(argv[0])
        return standalone_optimizer_main(argv[0], cli)
    except (UsageError, ValueError) as exc:
        print("error: %s\n%s" % (exc, usage), file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
