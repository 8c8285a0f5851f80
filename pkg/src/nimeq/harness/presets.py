"""Case-study definitions and run-scale presets."""

import configparser
from dataclasses import dataclass, fields, replace
from typing import Dict, Optional, Tuple

from ..optimizers.base import PARAM_NAMES, canonical_algorithm

__all__ = ["CaseStudyConfig", "CASE_STUDIES", "SCALES", "make_study", "load_study_config"]

# algorithm set, control algorithm, control parameters
CASE_STUDIES = {
    "CS1": (("accPSO", "accFA"), "accPSO", (0.5, 0.2)),
    "CS2": (("accPSO", "PSO", "FA", "BA"), "accPSO", (0.5, 0.2)),
    "CS3": (("accPSO", "PSO", "FA", "FAv2", "BA"), "PSO", (0.5, 1.5, 1.5)),
    "CS4": (("accPSO", "PSO", "FA", "FAv2", "BA"), "BA", (1.0, 0.1)),
}

SCALES = {
    "desk": dict(pop_size=10, generations=50, dimension=10, n_seeds=10, np_meta=10, t_meta=20),
    "full": dict(pop_size=20, generations=500, dimension=10, n_seeds=151, np_meta=20, t_meta=500),
}


@dataclass
class CaseStudyConfig:
    study_id: str
    algorithms: Tuple[str, ...]
    control: str
    control_params: Tuple[float, ...]
    pop_size: int = 10
    generations: int = 50
    dimension: int = 10
    n_seeds: int = 10
    base_seed: int = 0
    np_meta: int = 10
    t_meta: int = 20
    F: float = 0.5
    CR: float = 0.9
    lower: float = -10.0
    upper: float = 10.0
    mode: str = "inprocess"
    workers: int = 1
    model_seed: int = 0
    keep_candidates: bool = False
    output_dir: Optional[str] = None

    def __post_init__(self):
        self.algorithms = tuple(canonical_algorithm(a) for a in self.algorithms)
        self.control = canonical_algorithm(self.control)
        self.control_params = tuple(float(v) for v in self.control_params)
        if self.control not in self.algorithms:
            raise ValueError("control %s is not in the algorithm set %s" % (self.control, self.algorithms))
        if len(self.control_params) != len(PARAM_NAMES[self.control]):
            raise ValueError("%s takes %d parameters, got %d"
                             % (self.control, len(PARAM_NAMES[self.control]), len(self.control_params)))
        if self.n_seeds < 1:
            raise ValueError("n_seeds must be positive")

    @property
    def seeds(self) -> Tuple[int, ...]:
        """``base_seed + r`` for ``r = 1..N``."""
        return tuple(self.base_seed + r for r in range(1, self.n_seeds + 1))

    @property
    def control_param_map(self) -> Dict[str, float]:
        return dict(zip(PARAM_NAMES[self.control], self.control_params))

    def with_changes(self, **changes) -> "CaseStudyConfig":
        return replace(self, **changes)


def make_study(study_id: str, scale: str = "desk", **overrides) -> CaseStudyConfig:
    key = study_id.upper().replace("-", "")
    if key not in CASE_STUDIES:
        raise ValueError("unknown case study %r, expected one of %s" % (study_id, sorted(CASE_STUDIES)))
    if scale not in SCALES:
        raise ValueError("unknown scale %r, expected one of %s" % (scale, sorted(SCALES)))
    algorithms, control, params = CASE_STUDIES[key]
    settings = dict(SCALES[scale])
    settings.update(overrides)
    return CaseStudyConfig(study_id=key, algorithms=algorithms, control=control,
                           control_params=params, **settings)


def _convert(name, raw, kinds):
    kind = kinds[name]
    if kind is bool:
        return raw.strip().lower() in ("1", "yes", "true", "on")
    if name in ("algorithms", "control_params"):
        items = [s.strip() for s in raw.replace(",", " ").split()]
        return tuple(float(s) for s in items) if name == "control_params" else tuple(items)
    if name == "output_dir":
        return raw.strip() or None
    return kind(raw.strip())


def load_study_config(path: str) -> CaseStudyConfig:
    """
    Read a ``[study]`` section from an INI file.

    ``id`` and ``scale`` pick a preset; every other key overrides one field
    of ``CaseStudyConfig`` (lists are comma or blank separated).
    """
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise FileNotFoundError(path)
    if "study" not in parser:
        raise ValueError("%s: missing [study] section" % path)
    section = dict(parser["study"])
    study_id = section.pop("id", None)
    scale = section.pop("scale", "desk")
    kinds = {f.name: f.type for f in fields(CaseStudyConfig)}
    # configparser lower-cases keys
    by_lower = {name.lower(): name for name in kinds}
    overrides = {}
    for key, raw in section.items():
        name = by_lower.get(key)
        if name is None or name == "study_id":
            raise ValueError("%s: unknown study setting %r" % (path, key))
        overrides[name] = _convert(name, raw, kinds)
    if study_id is None:
        missing = {"algorithms", "control", "control_params"} - set(overrides)
        if missing:
            raise ValueError("%s: without an id the study needs %s" % (path, sorted(missing)))
        settings = dict(SCALES[scale])
        settings.update(overrides)
        return CaseStudyConfig(study_id="custom", **settings)
    return make_study(study_id, scale, **overrides)
