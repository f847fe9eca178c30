"""Batch experiment driver.

Subcommands:
    generate  point sets to CSV
    run       one construction: design + trajectory + manifest
    compare   several configs sharing domain/range/reference, merged table
    order     reorder an externally supplied design file greedily
    bounds    print covering-radius bound tables

Exit codes: 0 ok, 2 config error, 3 runtime error. Without --timing all
timing columns are written as 0.0 so that repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, bounds, cdf_criterion, coffeehouse, pointgen, relaxed_cr
from .config import ConfigError, ResolvedRun, load_config, resolve_run
from .domain import domain_from_config, is_unit_hypercube
from .greedy_engine import GreedyTrace, greedy, lazy_greedy
from .metrics import Design, Trajectory, evaluate_trajectory

__all__ = ["main", "run_config", "compare_configs", "order_external"]


def _write_design_csv(design: Design, path: Path) -> None:
    lines = [",".join(repr(float(v)) for v in row) for row in design.points]
    path.write_text("\n".join(lines) + "\n")


def _write_trace_jsonl(trace, path: Path) -> None:
    records = []
    if isinstance(trace, GreedyTrace):
        for i, s in enumerate(trace.steps, start=1):
            records.append(
                {
                    "step": i,
                    "index": s.index,
                    "gain": s.gain,
                    "value": s.value,
                    "evaluations": s.evaluations,
                    "gamma": s.evaluations / trace.candidate_count,
                    "seconds": s.seconds,
                }
            )
    elif isinstance(trace, coffeehouse.CoffeehouseTrace):
        for i, s in enumerate(trace.steps, start=1):
            records.append(
                {"step": i, "index": s.index, "score": s.score, "seconds": s.seconds}
            )
    elif isinstance(trace, relaxed_cr.VdTrace):
        for i, s in enumerate(trace.steps, start=1):
            records.append(
                {
                    "step": i,
                    "index": s.index,
                    "argmax_index": s.argmax_index,
                    "collision": s.collision,
                    "weight_sum": s.weight_sum,
                    "seconds": s.seconds,
                }
            )
    with open(path, "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")


def construct_design(run: ResolvedRun, timing: bool = False):
    """Run the configured constructor; returns (design, trace, gammas, seconds)."""
    kind = run.constructor["kind"]
    n = run.n_max
    if kind == "cdf":
        crit = cdf_criterion.CriterionConfig(
            q=float(run.constructor["q"]),
            B=float(run.constructor["B"]),
            b=float(run.constructor["b"]),
            truncate_to_cr=bool(run.constructor["truncate"]),
        )
        state = cdf_criterion.init(run.evaluation, run.candidates, crit)
        engine = lazy_greedy if run.lazy else greedy
        design, trace = engine(state, n, timing=timing)
        return design, trace, trace.fractions, [s.seconds for s in trace.steps]
    if kind == "coffeehouse":
        design, trace = coffeehouse.coffeehouse_construct(
            run.candidates, run.domain, float(run.constructor["beta"]), n, timing=timing
        )
        return design, trace, [1.0] * n, [s.seconds for s in trace.steps]
    if kind == "rd":
        design, trace = relaxed_cr.rd_construct(
            run.candidates,
            run.evaluation,
            float(run.constructor["q"]),
            n,
            lazy=run.lazy,
            timing=timing,
        )
        return design, trace, trace.fractions, [s.seconds for s in trace.steps]
    if kind == "vd":
        design, trace = relaxed_cr.vd_construct(
            run.candidates, run.evaluation, float(run.constructor["q"]), n, timing=timing
        )
        return design, trace, [1.0] * n, [s.seconds for s in trace.steps]
    if kind == "lds-prefix":
        t0 = time.perf_counter()
        design = Design(run.candidates.points[:n], indices=tuple(range(n)))
        elapsed = (time.perf_counter() - t0) if timing else 0.0
        return design, None, [0.0] * n, [elapsed] * n
    raise ConfigError(f"unknown constructor kind {kind!r}")


def _cr_normalizer(run: ResolvedRun):
    # hypercube trajectories are normalized by the covering lower bound;
    # other domains use the scale-free n^(1/d) * CR
    d = run.domain.d
    if is_unit_hypercube(run.domain):
        return lambda n, cr: cr / bounds.r_lower(n, d)
    return lambda n, cr: n ** (1.0 / d) * cr


def run_config(run: ResolvedRun, out_dir: Path, timing: bool = False) -> Trajectory:
    """Execute one resolved run and write all artifacts into out_dir."""
    out_dir.mkdir(parents=True, exist_ok=True)
    t_start = time.perf_counter()
    design, trace, gammas, seconds = construct_design(run, timing=timing)
    traj = evaluate_trajectory(
        design,
        run.reference,
        run.alphas,
        n_min=run.n_min,
        n_max=run.n_max,
        cr_normalizer=_cr_normalizer(run),
        seconds_per_n=seconds,
        gamma_per_n=gammas,
    )
    label = run.label
    _write_design_csv(design, out_dir / f"{label}.design.csv")
    traj.to_csv(out_dir / f"{label}.trajectory.csv", include_gamma=True)
    traj.to_jsonl(out_dir / f"{label}.trajectory.jsonl", include_gamma=True)
    if trace is not None:
        _write_trace_jsonl(trace, out_dir / f"{label}.trace.jsonl")
    manifest = {
        "schema": 1,
        "config": run.echo,
        "versions": {
            "spacefill": __version__,
            "numpy": np.__version__,
            "python": sys.version.split()[0],
        },
        "wall_seconds": time.perf_counter() - t_start,
        "outputs": {
            "design": f"{label}.design.csv",
            "trajectory_csv": f"{label}.trajectory.csv",
            "trajectory_jsonl": f"{label}.trajectory.jsonl",
        },
    }
    (out_dir / f"{label}.manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return traj


def compare_configs(
    cfgs: list[dict], out_dir: Path, paper_scale: bool = False, timing: bool = False
) -> Path:
    """Run several configs and merge their trajectories into one wide CSV."""
    if not cfgs:
        raise ConfigError("compare needs at least one config")
    runs = [resolve_run(cfg, paper_scale=paper_scale) for cfg in cfgs]
    first = runs[0]
    labels = set()
    for r in runs:
        if r.label in labels:
            raise ConfigError(f"duplicate label {r.label!r}; set distinct config.label values")
        labels.add(r.label)
        for field, a, b in (
            ("domain", r.echo["domain"], first.echo["domain"]),
            ("n_min", r.n_min, first.n_min),
            ("n_max", r.n_max, first.n_max),
            ("alphas", list(r.alphas), list(first.alphas)),
            ("reference", r.echo["reference"], first.echo["reference"]),
            ("seed", r.seed, first.seed),
        ):
            if a != b:
                raise ConfigError(
                    f"compare configs disagree on {field}: {a!r} vs {b!r} "
                    f"(labels {r.label!r} vs {first.label!r})"
                )
    trajectories = [run_config(r, out_dir, timing=timing) for r in runs]

    cols = ["cr"] + [f"q{a:g}" for a in first.alphas] + ["pr", "rho", "cr_norm"] + [
        f"nq{a:g}" for a in first.alphas
    ]
    header = ["n"] + [f"{r.label}_{c}" for r in runs for c in cols]
    lines = [",".join(header)]
    for i, n in enumerate(range(first.n_min, first.n_max + 1)):
        cells = [str(n)]
        for traj in trajectories:
            row = traj.rows[i]
            assert row.n == n
            vals = [row.cr]
            vals += [row.q_alpha[a] for a in first.alphas]
            vals += [row.pr, row.rho, row.cr_norm]
            vals += [row.nq_alpha[a] for a in first.alphas]
            cells += ["" if v is None else repr(float(v)) for v in vals]
        lines.append(",".join(cells))
    path = out_dir / "comparison.csv"
    path.write_text("\n".join(lines) + "\n")
    return path


def order_external(
    design_path: str | Path, cfg: dict, out_dir: Path, paper_scale: bool = False, timing: bool = False
) -> Trajectory:
    """Order the points of an external design file by the configured rule."""
    kind = cfg.get("constructor", {}).get("kind")
    if kind not in ("cdf", "coffeehouse"):
        raise ConfigError(
            f"order requires a cdf or coffeehouse constructor, got {kind!r}"
        )
    cfg = json.loads(json.dumps(cfg))  # deep copy
    cfg["candidates"] = {"generator": "file", "path": str(design_path)}
    run = resolve_run(cfg, paper_scale=paper_scale)
    return run_config(run, out_dir, timing=timing)


# ---------------------------------------------------------------------------
# argparse wiring
# ---------------------------------------------------------------------------

def _cmd_generate(args) -> int:
    d = args.d
    if args.generator in ("halton", "sobol") and args.n is None:
        raise ConfigError("--n is required for halton and sobol")
    if args.generator == "grid" and args.m is None:
        raise ConfigError("--m is required for grid")
    spec: dict = {"generator": args.generator}
    if args.generator in ("halton", "sobol"):
        spec["size"] = args.n
    if args.m is not None:
        spec["m"] = args.m
    if args.scramble is not None:
        spec["scramble"] = args.scramble
    domain = (
        domain_from_config(json.loads(args.domain_json))
        if args.domain_json
        else domain_from_config({"kind": "hypercube", "d": d})
    )
    if domain.d != d:
        raise ConfigError(f"--d={d} disagrees with the domain dimension {domain.d}")
    from .config import build_point_set

    ps = build_point_set(spec, domain, seed=args.seed, role="candidates", n_max=1)
    _write_design_csv(Design(ps.points), Path(args.out))
    print(f"wrote {len(ps)} points ({ps.provenance}) to {args.out}")
    return 0


def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.lazy is not None:
        cfg["lazy"] = args.lazy
    run = resolve_run(cfg, paper_scale=args.paper_scale)
    traj = run_config(run, Path(args.out), timing=args.timing)
    last = traj.rows[-1]
    print(
        f"{run.label}: n={last.n} cr={last.cr:.6g} "
        f"pr={'-' if last.pr is None else f'{last.pr:.6g}'} -> {args.out}"
    )
    return 0


def _cmd_compare(args) -> int:
    cfgs = []
    for path in args.config:
        cfg = load_config(path)
        if args.seed is not None:
            cfg["seed"] = args.seed
        if args.lazy is not None:
            cfg["lazy"] = args.lazy
        cfgs.append(cfg)
    path = compare_configs(
        cfgs, Path(args.out), paper_scale=args.paper_scale, timing=args.timing
    )
    print(f"wrote {path}")
    return 0


def _cmd_order(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.lazy is not None:
        cfg["lazy"] = args.lazy
    traj = order_external(
        args.design, cfg, Path(args.out), paper_scale=args.paper_scale, timing=args.timing
    )
    print(f"ordered {args.design}: rows up to n={traj.rows[-1].n} -> {args.out}")
    return 0


def _cmd_bounds(args) -> int:
    d = args.d
    print("n,r_lower,r_upper,beta_star")
    for n in range(args.n_min, args.n_max + 1, args.step):
        lo = bounds.r_lower(n, d)
        hi = bounds.r_upper(n, d)
        try:
            bs = repr(bounds.beta_star(n, d))
        except ValueError:
            bs = ""
        print(f"{n},{lo!r},{hi!r},{bs}")
    if args.sobol_t:
        t = pointgen.sobol_t(d)
        print(f"# sobol (t,d)-sequence: t={t}, base=2", file=sys.stderr)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spacefill",
        description="Ordered space-filling designs by greedy covering criteria.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="override config seed")
        p.add_argument("--lazy", dest="lazy", action="store_true", default=None)
        p.add_argument("--no-lazy", dest="lazy", action="store_false")
        p.add_argument(
            "--paper-scale",
            action="store_true",
            help="apply the config's paper_scale overrides",
        )
        p.add_argument(
            "--timing", action="store_true", help="record wall-clock columns (non-deterministic)"
        )

    p = sub.add_parser("generate", help="write a point set to CSV")
    p.add_argument("--generator", required=True, choices=["halton", "sobol", "grid", "vertices"])
    p.add_argument("--n", type=int, default=None, help="number of points (halton/sobol)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int, default=None, help="points per axis (grid)")
    p.add_argument("--scramble", type=int, default=None, help="sobol scramble seed")
    p.add_argument("--domain-json", default=None, help="clip into this domain (JSON)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV file")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("run", help="run one construction campaign")
    p.add_argument("--config", required=True)
    common(p)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("compare", help="run several configs and merge trajectories")
    p.add_argument("--config", action="append", required=True, help="repeatable")
    common(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("order", help="order an external design file")
    p.add_argument("--design", required=True, help="CSV design file to reorder")
    p.add_argument("--config", required=True)
    common(p)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("bounds", help="print covering-radius bound tables")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--sobol-t", action="store_true", help="also print the Sobol t value")
    p.set_defaults(func=_cmd_bounds)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
