"""Run-plan parsing, validation and resolution into executable objects.

A plan is a YAML key/value tree.  Example:

    seed: 7
    samples: 25
    quadrature_order: 8
    suites: [S1, S01, exact_holo, W_psd]
    pair: fs-to-poincare            # a zoo pair name, or an inline table:
    # pair:
    #   source: {zoo: fubini-study, dim: 1, radius: 0.9}
    #   target: {dim: 1, radius: 0.55, metric: [["1/(1-abs2(z1))**2"]]}
    #   map: {components: ["z1"], holomorphic: true}
    phi: "0.2*re(z1)"               # optional weight for S03
    report: report.json
    format: structured              # or text

Semantic errors name the offending key, e.g. "suites[2]: unknown suite 'S99'".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import yaml

from . import exprs, zoo
from .charts import ComplexChart, RealChart
from .errors import ConfigError
from .fields import HermitianMetricField, RiemannianMetricField
from .maps import ChartedMap
from .verify import SUITE_TAGS, PairContext


@dataclass
class RunConfig:
    pair_spec: object
    suites: list
    samples: int = 50
    seed: int = 7
    quadrature_order: int = 8
    tol_relative: float = 1e-6
    tol_exact: float = 1e-4
    phi: str | None = None
    report: str | None = None
    format: str = "structured"
    workers: int | None = None

    def resolved_pair(self) -> PairContext:
        return _resolve_pair(self.pair_spec, self.phi)


def parse_config(text: str) -> RunConfig:
    """Parse and validate a YAML plan; malformed input and unknown names raise."""
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config is not well-formed YAML: {exc}")
    if not isinstance(raw, dict):
        raise ConfigError("config must be a key/value tree")

    known = {"pair", "suites", "samples", "seed", "quadrature_order",
             "tol_relative", "tol_exact", "phi", "report", "format", "workers"}
    for key in raw:
        if key not in known:
            raise ConfigError(f"{key}: unknown configuration key")

    if "pair" not in raw:
        raise ConfigError("pair: required key is missing")
    suites = raw.get("suites", [])
    if not isinstance(suites, list):
        raise ConfigError("suites: must be an array of suite names")
    for k, s in enumerate(suites):
        if s not in SUITE_TAGS:
            raise ConfigError(f"suites[{k}]: unknown suite {s!r}")

    samples = int(raw.get("samples", 50))
    if samples < 1:
        raise ConfigError("samples: must be >= 1")
    tol_relative = float(raw.get("tol_relative", 1e-6))
    tol_exact = float(raw.get("tol_exact", 1e-4))
    if tol_relative <= 0 or tol_exact <= 0:
        raise ConfigError("tol_relative/tol_exact: tolerances must be positive")
    qorder = int(raw.get("quadrature_order", 8))
    if qorder < 2:
        raise ConfigError("quadrature_order: must be >= 2")
    fmt = raw.get("format", "structured")
    if fmt not in ("structured", "text"):
        raise ConfigError(f"format: must be 'structured' or 'text', got {fmt!r}")

    pair_spec = raw["pair"]
    _validate_pair_spec(pair_spec)

    return RunConfig(pair_spec=pair_spec, suites=list(suites), samples=samples,
                     seed=int(raw.get("seed", 7)), quadrature_order=qorder,
                     tol_relative=tol_relative, tol_exact=tol_exact,
                     phi=raw.get("phi"), report=raw.get("report"),
                     format=fmt, workers=raw.get("workers"))


def _validate_pair_spec(spec):
    if isinstance(spec, str):
        if spec not in zoo.catalog_names()["map-pair"]:
            raise ConfigError(f"pair: unknown zoo pair {spec!r}")
        return
    if not isinstance(spec, dict):
        raise ConfigError("pair: must be a zoo pair name or a table")
    for part in ("source", "target", "map"):
        if part not in spec:
            raise ConfigError(f"pair.{part}: required key is missing")
    for part in ("source", "target"):
        sub = spec[part]
        if not isinstance(sub, dict):
            raise ConfigError(f"pair.{part}: must be a table")
        if "zoo" in sub:
            name = sub["zoo"]
            names = zoo.catalog_names()
            if name not in names["hermitian-metric"] + names["riemannian-metric"]:
                raise ConfigError(f"pair.{part}.zoo: unknown metric {name!r}")
        elif "metric" not in sub or "dim" not in sub:
            raise ConfigError(f"pair.{part}: needs either zoo: <name> or "
                              "dim: + metric: [[...]]")
    mp = spec["map"]
    if not isinstance(mp, dict):
        raise ConfigError("pair.map: must be a table")
    if "zoo" in mp:
        if mp["zoo"] not in zoo.catalog_names()["map"]:
            raise ConfigError(f"pair.map.zoo: unknown map {mp['zoo']!r}")
    elif "components" not in mp:
        raise ConfigError("pair.map: needs either zoo: <name> or components: [...]")


def _resolve_metric(spec: dict, key: str, kind_hint: str):
    if "zoo" in spec:
        params = {k: v for k, v in spec.items() if k != "zoo"}
        return zoo.build_entry(spec["zoo"], params).obj
    dim = int(spec["dim"])
    radius = spec.get("radius", 0.9)
    entries = spec["metric"]
    if len(entries) != dim or any(len(row) != dim for row in entries):
        raise ConfigError(f"pair.{key}.metric: expected a {dim} x {dim} array")
    real = bool(spec.get("real", kind_hint == "riemannian"))
    if real:
        names = exprs.coordinate_names("x", dim)
        chart = RealChart(dim=dim, radius=np.full(dim, float(radius)))
        field = RiemannianMetricField(chart, exprs.matrix_rule(entries, names),
                                      name=f"inline-{key}")
    else:
        names = exprs.coordinate_names("z", dim)
        chart = ComplexChart(dim=dim, radius=np.full(dim, float(radius)))
        field = HermitianMetricField(chart, exprs.matrix_rule(entries, names),
                                     name=f"inline-{key}")
    field.validate(np.random.default_rng(20250809), count=100)
    return field


def _resolve_pair(spec, phi_text=None) -> PairContext:
    if isinstance(spec, str):
        pair = zoo.build_entry(spec).obj
    else:
        h = _resolve_metric(spec["source"], "source", "hermitian")
        if not isinstance(h, HermitianMetricField):
            raise ConfigError("pair.source: source metric must be Hermitian")
        tgt_spec = dict(spec["target"])
        if "zoo" in tgt_spec:
            g = zoo.build_entry(tgt_spec.pop("zoo"), tgt_spec).obj
        else:
            g = _resolve_metric(tgt_spec, "target",
                                "riemannian" if tgt_spec.get("real") else "hermitian")
        mp = spec["map"]
        if "zoo" in mp:
            params = {k: v for k, v in mp.items() if k != "zoo"}
            f = zoo.build_map(mp["zoo"], params, h.chart, g.chart)
        else:
            names = exprs.coordinate_names("z", h.chart.dim)
            rule = exprs.vector_rule(list(mp["components"]), names)
            if len(mp["components"]) != g.chart.dim:
                raise ConfigError("pair.map.components: arity does not match "
                                  "the target dimension")
            f = ChartedMap(h.chart, g.chart, rule,
                           holomorphic=bool(mp.get("holomorphic", False)),
                           name=str(spec.get("name", "inline-map")))
        pair = PairContext(f=f, h=h, g=g, name=str(spec.get("name", "inline")),
                           compact=bool(spec.get("compact", False)))
    if phi_text:
        names = exprs.coordinate_names("z", pair.f.m) \
            + exprs.coordinate_names("W", pair.f.m)
        compiled = exprs.parse_expression(phi_text, names)

        def phi(zs, Ws, _c=compiled):
            from . import dual as gm
            return gm.real(_c(tuple(zs) + tuple(Ws)))

        pair = PairContext(f=pair.f, h=pair.h, g=pair.g, name=pair.name,
                           compact=pair.compact, phi=phi)
    return pair
