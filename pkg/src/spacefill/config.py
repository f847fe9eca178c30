"""Run-configuration schema, validation, and point-set resolution.

A run is one JSON document (schema version 1). Validation failures raise
ConfigError with a message naming the offending field; resolution turns
symbolic values (B = "diam", beta = "beta-star", erode = "rstar-half",
scramble = true) into numbers so the manifest echo is directly re-runnable.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass
from pathlib import Path

from . import bounds, pointgen
from .domain import Domain, domain_from_config, is_unit_hypercube
from .pointgen import PointSet

__all__ = ["ConfigError", "ResolvedRun", "load_config", "resolve_run", "build_point_set"]

SCHEMA_VERSION = 1

_CONSTRUCTOR_KINDS = ("cdf", "coffeehouse", "vd", "rd", "lds-prefix")
_GENERATORS = ("halton", "sobol", "grid", "vertices", "file")
_ROLE_IDS = {"candidates": 1, "evaluation": 2, "reference": 3}
_RAW_CAP = 1 << 22


class ConfigError(ValueError):
    """Invalid run configuration; maps to CLI exit code 2."""


def _expect(cond: bool, msg: str) -> None:
    if not cond:
        raise ConfigError(msg)


def load_config(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    _expect(isinstance(cfg, dict), "config must be a JSON object")
    return cfg


def apply_paper_scale(cfg: dict) -> dict:
    """Merge the optional 'paper_scale' overrides into a copy of the config."""
    cfg = copy.deepcopy(cfg)
    overrides = cfg.pop("paper_scale", None)
    if overrides is None:
        return cfg
    _expect(isinstance(overrides, dict), "'paper_scale' must be an object")

    def merge(dst: dict, src: dict) -> None:
        for key, val in src.items():
            if isinstance(val, dict) and isinstance(dst.get(key), dict):
                merge(dst[key], val)
            else:
                dst[key] = val

    merge(cfg, overrides)
    return cfg


def _check_point_spec(spec, where: str, d: int) -> None:
    _expect(isinstance(spec, dict), f"{where} must be an object")
    gen = spec.get("generator")
    _expect(gen in _GENERATORS, f"{where}.generator must be one of {_GENERATORS}")
    if gen == "file":
        _expect(isinstance(spec.get("path"), str), f"{where}.path required for file sets")
    elif gen == "grid":
        m = spec.get("m")
        _expect(isinstance(m, int) and m >= 2, f"{where}.m must be an integer >= 2")
    elif gen == "vertices":
        pass
    else:
        size = spec.get("size")
        _expect(
            isinstance(size, int) and size >= 1, f"{where}.size must be a positive integer"
        )
    scramble = spec.get("scramble")
    _expect(
        scramble is None or scramble is True or isinstance(scramble, int),
        f"{where}.scramble must be null, true, or an integer seed",
    )
    if scramble is not None and gen != "sobol":
        raise ConfigError(f"{where}.scramble is only supported for the sobol generator")
    erode = spec.get("erode", 0)
    _expect(
        erode == "rstar-half" or (isinstance(erode, (int, float)) and erode >= 0),
        f"{where}.erode must be a nonnegative number or \"rstar-half\"",
    )


def build_point_set(spec: dict, domain: Domain, seed: int, role: str, n_max: int) -> PointSet:
    """Materialize one point-set spec inside the domain."""
    gen = spec["generator"]
    d = domain.d
    scramble = spec.get("scramble")
    if scramble is True:
        scramble = seed * 4 + _ROLE_IDS[role]
    unit = is_unit_hypercube(domain)

    if gen == "file":
        ps = pointgen.load_design(spec["path"], skip_header=bool(spec.get("skip_header", False)))
        _expect(ps.d == d, f"design file has d={ps.d}, domain has d={d}")
        inside = domain.contains_many(ps.points)
        _expect(
            bool(inside.all()),
            f"design file contains {int((~inside).sum())} points outside the domain",
        )
    elif gen == "grid":
        raw = pointgen.grid(int(spec["m"]), d)
        if unit:
            ps = raw
        else:
            lo, hi = domain.bounding_box()
            mapped = lo + raw.points * (hi - lo)
            keep = domain.contains_many(mapped)
            ps = PointSet(mapped[keep], f"clipped({raw.provenance})")
    elif gen == "vertices":
        raw = pointgen.vertices(d)
        if unit:
            ps = raw
        else:
            lo, hi = domain.bounding_box()
            mapped = lo + raw.points * (hi - lo)
            keep = domain.contains_many(mapped)
            ps = PointSet(mapped[keep], "clipped(vertices)")
    else:
        size = int(spec["size"])
        make = (
            (lambda m: pointgen.sobol(m, d, scramble=scramble))
            if gen == "sobol"
            else (lambda m: pointgen.halton(m, d))
        )
        if unit:
            ps = make(size)
        else:
            raw_n = max(2 * size, 64)
            while True:
                if raw_n > _RAW_CAP:
                    raise ConfigError(
                        f"{role}: could not collect {size} points inside the domain "
                        f"from {_RAW_CAP} raw points"
                    )
                raw = make(raw_n)
                lo, hi = domain.bounding_box()
                mapped = lo + raw.points * (hi - lo)
                kept = mapped[domain.contains_many(mapped)]
                if len(kept) >= size:
                    ps = PointSet(kept[:size], f"clipped({raw.provenance})")
                    break
                raw_n *= 2

    erode = spec.get("erode", 0)
    if erode == "rstar-half":
        erode = bounds.r_lower(n_max, d) / 2.0
    if erode:
        keep = domain.dist_to_boundary_many(ps.points) >= float(erode)
        ps = PointSet(ps.points[keep], f"eroded({ps.provenance})")
        _expect(len(ps) > 0, f"{role}: erosion by {erode:.4g} removed every point")

    if spec.get("augment_vertices", False):
        verts = pointgen.vertices(d)
        if not unit:
            lo, hi = domain.bounding_box()
            mapped = lo + verts.points * (hi - lo)
            verts = PointSet(mapped[domain.contains_many(mapped)], "clipped(vertices)")
        ps = pointgen.union(ps, verts)
    return ps


def resolved_point_spec(spec: dict, domain: Domain, seed: int, role: str, n_max: int) -> dict:
    """Copy of the spec with symbolic fields replaced by their numeric values."""
    out = copy.deepcopy(spec)
    if out.get("scramble") is True:
        out["scramble"] = seed * 4 + _ROLE_IDS[role]
    if out.get("erode") == "rstar-half":
        out["erode"] = bounds.r_lower(n_max, domain.d) / 2.0
    return out


@dataclass
class ResolvedRun:
    label: str
    domain: Domain
    constructor: dict
    candidates: PointSet
    evaluation: PointSet | None
    reference: PointSet
    n_min: int
    n_max: int
    alphas: tuple[float, ...]
    seed: int
    lazy: bool
    echo: dict  # resolved config, directly re-runnable


def resolve_run(cfg: dict, paper_scale: bool = False) -> ResolvedRun:
    """Validate a config document and materialize everything it names."""
    _expect(cfg.get("schema") == SCHEMA_VERSION, f"config.schema must be {SCHEMA_VERSION}")
    cfg = apply_paper_scale(cfg) if paper_scale else copy.deepcopy(cfg)
    cfg.pop("paper_scale", None)

    _expect("domain" in cfg, "config.domain is required")
    try:
        domain = domain_from_config(cfg["domain"])
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"config.domain: {exc}") from None
    d = domain.d

    n_min = cfg.get("n_min", 1)
    n_max = cfg.get("n_max")
    _expect(isinstance(n_max, int) and n_max >= 1, "config.n_max must be a positive integer")
    _expect(isinstance(n_min, int) and 1 <= n_min <= n_max, "config.n_min must satisfy 1 <= n_min <= n_max")

    alphas = cfg.get("alphas", [0.99])
    _expect(
        isinstance(alphas, list)
        and len(alphas) > 0
        and all(isinstance(a, (int, float)) and 0 < a <= 1 for a in alphas),
        "config.alphas must be a nonempty list of numbers in (0, 1]",
    )
    seed = cfg.get("seed", 0)
    _expect(isinstance(seed, int) and seed >= 0, "config.seed must be a nonnegative integer")
    lazy = cfg.get("lazy", True)
    _expect(isinstance(lazy, bool), "config.lazy must be a boolean")

    cons = cfg.get("constructor")
    _expect(isinstance(cons, dict), "config.constructor must be an object")
    kind = cons.get("kind")
    _expect(kind in _CONSTRUCTOR_KINDS, f"constructor.kind must be one of {_CONSTRUCTOR_KINDS}")
    cons = copy.deepcopy(cons)

    if kind == "cdf":
        q = cons.setdefault("q", 10.0)
        _expect(isinstance(q, (int, float)) and q > -1, "constructor.q must be a number > -1")
        B = cons.setdefault("B", "diam")
        if B == "diam":
            cons["B"] = domain.diameter()
        else:
            _expect(isinstance(B, (int, float)) and B > 0, "constructor.B must be positive or \"diam\"")
        b = cons.setdefault("b", 0.0)
        _expect(
            isinstance(b, (int, float)) and 0 <= b < cons["B"],
            "constructor.b must satisfy 0 <= b < B",
        )
        cons.setdefault("truncate", True)
        _expect(isinstance(cons["truncate"], bool), "constructor.truncate must be a boolean")
    elif kind == "coffeehouse":
        beta = cons.get("beta", "infinity")
        if beta == "infinity":
            cons["beta"] = math.inf
        elif beta == "beta-star":
            try:
                cons["beta"] = bounds.beta_star(n_max, d)
            except ValueError as exc:
                raise ConfigError(f"constructor.beta: {exc}") from None
        elif beta == "2sqrt2d":
            cons["beta"] = 2.0 * math.sqrt(2.0 * d)
        else:
            _expect(
                isinstance(beta, (int, float)) and beta > 0,
                "constructor.beta must be positive or one of "
                '"infinity", "beta-star", "2sqrt2d"',
            )
            cons["beta"] = float(beta)
        if not domain.is_convex and not math.isinf(cons["beta"]):
            raise ConfigError(
                "constructor.beta must be \"infinity\" on non-convex domains"
            )
    elif kind in ("vd", "rd"):
        q = cons.setdefault("q", float(d))
        _expect(isinstance(q, (int, float)) and q > 0, "constructor.q must be positive")
    elif kind == "lds-prefix":
        seqname = cons.setdefault("sequence", "sobol")
        _expect(seqname in ("halton", "sobol"), 'constructor.sequence must be "halton" or "sobol"')

    _expect("candidates" in cfg, "config.candidates is required")
    _check_point_spec(cfg["candidates"], "config.candidates", d)
    if kind == "lds-prefix":
        _expect(
            cfg["candidates"].get("generator") == cons["sequence"],
            "lds-prefix takes prefixes of the candidate set, so "
            "candidates.generator must equal constructor.sequence",
        )
    _expect("reference" in cfg, "config.reference is required (metrics reference set)")
    _check_point_spec(cfg["reference"], "config.reference", d)
    needs_eval = kind in ("cdf", "vd", "rd")
    if needs_eval:
        _expect("evaluation" in cfg, f"config.evaluation is required for the {kind} constructor")
    if "evaluation" in cfg:
        _check_point_spec(cfg["evaluation"], "config.evaluation", d)

    try:
        candidates = build_point_set(cfg["candidates"], domain, seed, "candidates", n_max)
        evaluation = (
            build_point_set(cfg["evaluation"], domain, seed, "evaluation", n_max)
            if "evaluation" in cfg
            else None
        )
        reference = build_point_set(cfg["reference"], domain, seed, "reference", n_max)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    _expect(len(reference) > 0, "config.reference produced an empty set")
    _expect(
        n_max <= len(candidates),
        f"config.n_max={n_max} exceeds the candidate count {len(candidates)}",
    )
    if needs_eval:
        _expect(len(evaluation) > 0, "config.evaluation produced an empty set")
    if kind in ("vd", "rd"):
        cand_rows = {row.tobytes() for row in candidates.points}
        overlap = sum(1 for row in evaluation.points if row.tobytes() in cand_rows)
        _expect(
            overlap == 0,
            f"{kind} requires disjoint candidate and evaluation sets; "
            f"{overlap} shared points found (use a scrambled generator for candidates)",
        )

    label = cfg.get("label", kind)
    _expect(isinstance(label, str) and label != "", "config.label must be a nonempty string")

    echo = copy.deepcopy(cfg)
    echo["constructor"] = cons
    echo["label"] = label
    echo["n_min"] = n_min
    echo["alphas"] = [float(a) for a in alphas]
    echo["seed"] = seed
    echo["lazy"] = lazy
    echo["candidates"] = resolved_point_spec(cfg["candidates"], domain, seed, "candidates", n_max)
    if "evaluation" in cfg:
        echo["evaluation"] = resolved_point_spec(cfg["evaluation"], domain, seed, "evaluation", n_max)
    echo["reference"] = resolved_point_spec(cfg["reference"], domain, seed, "reference", n_max)

    return ResolvedRun(
        label=label,
        domain=domain,
        constructor=cons,
        candidates=candidates,
        evaluation=evaluation,
        reference=reference,
        n_min=n_min,
        n_max=n_max,
        alphas=tuple(float(a) for a in alphas),
        seed=seed,
        lazy=lazy,
        echo=echo,
    )
