"""Run configuration: a JSON document validated into a RunConfig.

The schema is documented in docs/config.md.  Rational values are JSON
integers or strings like "3/4"; forms, vector fields and polynomial
coefficients are expression text (docs/grammar.md) or the string
"random".  Validation problems raise ConfigError with a dotted path to
the offending key; nothing about the run starts until the whole document
is sound.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError, MetricError
from .forms import Chart
from .hodge import MetricSpec

SUITE_NAMES = ("conservation", "identities", "phi", "split", "reciprocity",
               "factorization")

_DEFAULT_SUITES = {
    "check": ("conservation", "identities"),
    "split": ("split",),
    "constitutive": ("phi",),
    "reciprocity": ("reciprocity", "factorization"),
}


def _fraction(value, path):
    if isinstance(value, bool):
        raise ConfigError(f"{path}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"{path}: not a rational literal: {value!r}")
    raise ConfigError(f"{path}: expected an integer or 'a/b' string, got {value!r}")


def _expect(cond, message):
    if not cond:
        raise ConfigError(message)


@dataclass
class RunConfig:
    n: int = 4
    p: int = 2
    mode: str = "real"
    orientation: int = 1
    metric: object = None          # MetricSpec or None
    Z0: Fraction = None
    z: object = None               # Fraction or list of Fractions
    alpha: str = None              # polynomial expression text
    constitutive: dict = None      # {"kind": ..., ...}
    F: str = "random"
    G: str = None                  # None: derive from the law if present
    J: str = "random"
    u: str = "random"
    seed: int = 0
    degree_bound: int = 2
    samples: int = 25
    suites: tuple = ()
    out: str = None
    format: str = "text"

    def chart(self):
        return Chart(self.n, self.orientation, self.mode == "complex")

    def metric_spec(self):
        """The configured metric, defaulting to the diag(1,-1,...) one."""
        if self.metric is not None:
            return self.metric
        return MetricSpec.minkowski(self.chart())

    def suites_for(self, command):
        if self.suites:
            return self.suites
        return _DEFAULT_SUITES[command]


_KNOWN_KEYS = {
    "n", "p", "mode", "orientation", "metric", "Z0", "z", "alpha",
    "constitutive", "F", "G", "J", "u", "seed", "degree_bound", "samples",
    "suites", "out", "format",
}

_CONSTITUTIVE_KINDS = ("maxwell-lorentz", "axion", "linear-local", "custom")


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as e:
        raise ConfigError(f"cannot read config: {e}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: {e}")
    return validate_config(raw)


def validate_config(raw):
    _expect(isinstance(raw, dict), "config must be a JSON object")
    unknown = set(raw) - _KNOWN_KEYS
    _expect(not unknown, f"unknown config keys: {sorted(unknown)}")

    cfg = RunConfig()

    cfg.n = raw.get("n", 4)
    _expect(isinstance(cfg.n, int) and 2 <= cfg.n <= 8,
            "n: expected an integer in 2..8")
    cfg.p = raw.get("p", 2)
    _expect(isinstance(cfg.p, int) and 1 <= cfg.p <= cfg.n - 1,
            f"p: expected an integer in 1..{cfg.n - 1}")

    cfg.mode = raw.get("mode", "real")
    _expect(cfg.mode in ("real", "complex"), "mode: expected 'real' or 'complex'")
    cfg.orientation = raw.get("orientation", 1)
    _expect(cfg.orientation in (1, -1), "orientation: expected 1 or -1")

    chart = cfg.chart()

    metric_raw = raw.get("metric")
    if metric_raw is not None:
        cfg.metric = _build_metric(metric_raw, chart)

    if "Z0" in raw:
        cfg.Z0 = _fraction(raw["Z0"], "Z0")
        _expect(cfg.Z0 != 0, "Z0: must be nonzero")
    if "z" in raw:
        zs = raw["z"] if isinstance(raw["z"], list) else [raw["z"]]
        vals = []
        for k, item in enumerate(zs):
            v = _fraction(item, f"z[{k}]")
            _expect(v != 0, f"z[{k}]: must be nonzero")
            vals.append(v)
        cfg.z = tuple(vals)

    if "alpha" in raw:
        _expect(isinstance(raw["alpha"], str), "alpha: expected expression text")
        cfg.alpha = raw["alpha"]

    law_raw = raw.get("constitutive")
    if law_raw is not None:
        _expect(isinstance(law_raw, dict) and "kind" in law_raw,
                "constitutive: expected an object with a 'kind'")
        _expect(law_raw["kind"] in _CONSTITUTIVE_KINDS,
                f"constitutive.kind: expected one of {_CONSTITUTIVE_KINDS}")
        if law_raw["kind"] == "custom":
            _expect(isinstance(law_raw.get("G"), str),
                    "constitutive.G: custom laws need a fixed excitation expression")
        if law_raw["kind"] == "linear-local":
            _expect(isinstance(law_raw.get("chi"), list),
                    "constitutive.chi: expected a matrix of rationals or expressions")
        cfg.constitutive = dict(law_raw)

    for name in ("F", "G", "J", "u"):
        if name in raw:
            _expect(isinstance(raw[name], str), f"{name}: expected expression text or 'random'")
            setattr(cfg, name, raw[name])

    cfg.seed = raw.get("seed", 0)
    _expect(isinstance(cfg.seed, int) and 0 <= cfg.seed < 2 ** 64,
            "seed: expected an unsigned 64-bit integer")
    cfg.degree_bound = raw.get("degree_bound", 2)
    _expect(isinstance(cfg.degree_bound, int) and 0 <= cfg.degree_bound <= 6,
            "degree_bound: expected an integer in 0..6")
    cfg.samples = raw.get("samples", 25)
    _expect(isinstance(cfg.samples, int) and 1 <= cfg.samples <= 9999,
            "samples: expected an integer in 1..9999")

    suites = raw.get("suites", [])
    _expect(isinstance(suites, list), "suites: expected a list of suite names")
    for s in suites:
        _expect(s in SUITE_NAMES, f"suites: unknown suite {s!r}")
    cfg.suites = tuple(suites)

    if "out" in raw:
        _expect(isinstance(raw["out"], str), "out: expected a path")
        cfg.out = raw["out"]
    cfg.format = raw.get("format", "text")
    _expect(cfg.format in ("text", "structured"), "format: expected 'text' or 'structured'")

    _check_cross_constraints(cfg)
    return cfg


def _build_metric(metric_raw, chart):
    _expect(isinstance(metric_raw, dict), "metric: expected an object")
    try:
        if "diagonal" in metric_raw:
            entries = [_fraction(e, "metric.diagonal") for e in metric_raw["diagonal"]]
            return MetricSpec.diagonal(chart, entries)
        if "matrix" in metric_raw:
            rows = metric_raw["matrix"]
            _expect(isinstance(rows, list) and all(isinstance(r, list) for r in rows),
                    "metric.matrix: expected a list of rows")
            g = [[_fraction(e, "metric.matrix") for e in row] for row in rows]
            _expect(len(g) == chart.n and all(len(r) == chart.n for r in g),
                    f"metric.matrix: expected {chart.n}x{chart.n}")
            return MetricSpec(chart, g)
    except MetricError as e:
        raise ConfigError(f"metric: {e}")
    raise ConfigError("metric: expected 'diagonal' or 'matrix'")


def _check_cross_constraints(cfg):
    kind = cfg.constitutive.get("kind") if cfg.constitutive else None
    if kind in ("maxwell-lorentz", "axion"):
        z_raw = cfg.constitutive.get("Z0", cfg.Z0)
        _expect(z_raw is not None, "constitutive: metric-based laws need Z0")
    if kind == "axion" and "alpha" not in cfg.constitutive and cfg.alpha is None:
        raise ConfigError("constitutive: axion law needs an alpha polynomial")
    if cfg.G is not None and cfg.constitutive is not None and kind != "custom":
        raise ConfigError("G: give either an explicit excitation or a constitutive law")


def parse_field_inputs(cfg, rng, suite):
    """Materialize (F, G, J, u) for one instance, honoring 'random' markers.

    Draw order is fixed (F, then G, then J, then u) so reports are
    reproducible byte for byte; see docs/conventions.md.
    """
    from .formexpr import parse_form, parse_vector_field
    from .randgen import random_form, random_vector_field

    chart = cfg.chart()
    n, p = cfg.n, cfg.p
    if cfg.F == "random":
        F = random_form(rng, chart, p, False, cfg.degree_bound)
    else:
        F = parse_form(cfg.F, chart, p, twist=False)

    law = build_law(cfg) if cfg.constitutive is not None else None
    if law is not None:
        G = law.apply(F)
    elif cfg.G in (None, "random"):
        G = random_form(rng, chart, n - p, True, cfg.degree_bound)
    else:
        G = parse_form(cfg.G, chart, n - p, twist=True)

    if suite == "split":
        if cfg.J == "random":
            J = random_form(rng, chart, n - p + 1, True, cfg.degree_bound)
        else:
            J = parse_form(cfg.J, chart, n - p + 1, twist=True)
    else:
        J = None

    if cfg.u == "random":
        u = random_vector_field(rng, chart, cfg.degree_bound)
    else:
        u = parse_vector_field(cfg.u, chart)
    return F, G, J, u


def build_law(cfg):
    """Construct the configured constitutive law object."""
    from .electrodynamics import Axion, Custom, LinearLocal, MaxwellLorentz
    from .formexpr import parse_form, parse_polynomial
    from .scalars import Scalar

    chart = cfg.chart()
    raw = cfg.constitutive
    kind = raw["kind"]
    metric = cfg.metric_spec()

    def impedance(key="Z0"):
        value = raw.get(key, cfg.Z0)
        if value is None:
            raise ConfigError(f"constitutive: missing {key}")
        if not isinstance(value, Fraction):
            value = _fraction(value, f"constitutive.{key}")
        if value == 0:
            raise ConfigError(f"constitutive.{key}: must be nonzero")
        return Scalar(value, Fraction(0) if chart.complex_mode else None,
                      pseudo=True)

    if kind == "maxwell-lorentz":
        return MaxwellLorentz(metric, impedance())
    if kind == "axion":
        alpha_text = raw.get("alpha", cfg.alpha)
        if alpha_text is None:
            raise ConfigError("constitutive: axion law needs alpha")
        if isinstance(alpha_text, str):
            alpha = parse_polynomial(alpha_text, chart)
        else:
            alpha = chart.const_poly(_fraction(alpha_text, "constitutive.alpha"))
        return Axion(metric, impedance(), alpha)
    if kind == "linear-local":
        chi = []
        for r, row in enumerate(raw["chi"]):
            if not isinstance(row, list):
                raise ConfigError(f"constitutive.chi[{r}]: expected a row")
            entries = []
            for c, e in enumerate(row):
                if isinstance(e, str) and not _is_rational_text(e):
                    entries.append(parse_polynomial(e, chart))
                else:
                    entries.append(chart.const_poly(
                        _fraction(e, f"constitutive.chi[{r}][{c}]")))
            chi.append(entries)
        return LinearLocal(chart, cfg.p, chi)
    if kind == "custom":
        fixed = parse_form(raw["G"], chart, cfg.n - cfg.p, twist=True)
        return Custom(fixed)
    raise ConfigError(f"constitutive.kind: unknown kind {kind!r}")


def _is_rational_text(s):
    try:
        Fraction(s)
        return True
    except (ValueError, ZeroDivisionError):
        return False
