"""Command-line entry point: ``linxfer <subcommand> ...``.

Subcommands: generate, oracle, compare, transfer, landscape, fitline, sample.
Every file written carries (or sits next to) a JSON record of the full
configuration, seeds included. Exit codes: 0 success, 2 usage error,
1 runtime error.

Angles default to the gate convention here (``exp(-i gamma C/2)``,
``exp(-i beta X/2)``), the convention of the published parameter presets.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .landscape import PLANES, best_point, scan_plane
from .oracle import brute_force_min, simulated_annealing
from .problems import (
    IsingInstance,
    Normalization,
    gen_maxcut,
    gen_random_ising,
    gen_sk,
    load_instance,
    normalize_instance,
    save_instance,
)
from .schedules import PRESETS, fit_linear, linear_schedule
from .simulator import build_cost_table, evolve, expectation, sample
from .strategies import STRATEGIES, linxfer_apply, run_fourier, run_interp, run_standard
from .validation import CONVENTIONS, check_linear_params, check_schedule

logger = logging.getLogger("linxfer")

DEFAULT_SHOTS = 1024


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    cfg["version"] = __version__
    return cfg


def _write_json(path: Path, data) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")
    return path


def _generate_one(model: str, n: int, d: float, seed: int, variance_scale: float) -> IsingInstance:
    if model == "random-ising":
        return gen_random_ising(n, d, seed)
    if model == "maxcut":
        return gen_maxcut(n, d, seed)
    if model == "sk":
        return gen_sk(n, variance_scale / n, seed)
    raise UsageError(f"unknown model {model!r}")


def _collect_instances(args) -> list[tuple[str, IsingInstance]]:
    """Instances from ``--instances`` files, or ``--count`` generated ones."""
    paths = getattr(args, "instances", None) or []
    if paths:
        return [(Path(p).stem, load_instance(p)) for p in paths]
    if args.n is None:
        raise UsageError("give --instances files or a generator spec (--model/--n/--d/--count/--seed)")
    out = []
    for k in range(args.count):
        seed = args.seed + k
        inst = _generate_one(args.model, args.n, args.d, seed, args.variance_scale)
        out.append((f"{args.model}_n{args.n}_seed{seed}", inst))
    return out


def _lp_from_arg(text: str):
    if text in PRESETS:
        return PRESETS[text]
    return check_linear_params(text)


def _add_generator_args(sp, count_default=1):
    sp.add_argument("--instances", nargs="*", help="instance JSON files")
    sp.add_argument("--model", choices=["random-ising", "maxcut", "sk"], default="random-ising")
    sp.add_argument("--n", type=int, help="qubits for generated instances")
    sp.add_argument("--d", type=float, default=0.6, help="edge density for generated instances")
    sp.add_argument("--variance-scale", type=float, default=4.0, help="SK coupling variance times n")
    sp.add_argument("--count", type=int, default=count_default)
    sp.add_argument("--seed", type=int, default=0, help="first generator seed; instance k uses seed+k")


def _e_ref(instance, table, method, sa_seed, sweeps, restarts) -> float:
    if method == "exact":
        return table.min if table is not None else brute_force_min(instance).energy
    return simulated_annealing(instance, sweeps, restarts, sa_seed).energy


# ---------------------------------------------------------------------------
# generate / oracle
# ---------------------------------------------------------------------------

def cmd_generate(args):
    inst = _generate_one(args.kind, args.n, args.d, args.seed, args.variance_scale)
    out = Path(args.out or f"{args.kind}_n{args.n}_seed{args.seed}.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    save_instance(inst, out)
    print(f"{inst.label}\t{inst.n_edges} edges\t{out}")
    return 0


def cmd_oracle(args):
    inst = load_instance(args.instance)
    if args.method == "exhaustive":
        gt = brute_force_min(inst)
    else:
        gt = simulated_annealing(inst, args.sweeps, args.restarts, args.seed)
    data = gt.to_dict()
    text = json.dumps(data)
    if args.out:
        _write_json(Path(args.out), {**data, "config": _config(args)})
    print(text)
    return 0


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------

def _compare_instance(job):
    name, inst, ps, strategies, budget, k, lp, convention = job
    table = build_cost_table(inst)
    reports = []
    for p in ps:
        for method in strategies:
            if method == "standard":
                r = run_standard(inst, p, budget, convention=convention, table=table)
            elif method == "interp":
                r = run_interp(inst, p, budget, convention=convention, table=table)
            elif method == "fourier":
                r = run_fourier(inst, p, k, budget, convention=convention, table=table)
            else:
                r = linxfer_apply(lp, inst, p, convention=convention, table=table)
            d = r.to_dict()
            d["instance"] = name
            d["instance_label"] = inst.label
            reports.append(d)
    return reports


def summarize(reports: list[dict]) -> list[dict]:
    """Mean, std and standard error of the ratio per (method, p)."""
    groups: dict[tuple[str, int], list[dict]] = {}
    for r in reports:
        groups.setdefault((r["name"], r["p"]), []).append(r)
    rows = []
    for method in STRATEGIES:
        for p in sorted({p for m, p in groups if m == method}):
            rs = groups[(method, p)]
            ratios = np.array([r["ratio"] for r in rs])
            std = float(ratios.std(ddof=1)) if len(rs) > 1 else 0.0
            rows.append({
                "method": method, "p": p, "n_instances": len(rs),
                "mean_ratio": float(ratios.mean()), "std_ratio": std,
                "stderr_ratio": std / math.sqrt(len(rs)),
                "mean_eval_count": float(np.mean([r["eval_count"] for r in rs])),
            })
    return rows


def _write_csv(path: Path, rows: list[dict]):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


def cmd_compare(args):
    if not args.strategies:
        raise UsageError("at least one strategy is required")
    bad = set(args.strategies) - set(STRATEGIES)
    if bad:
        raise UsageError(f"unknown strategies: {sorted(bad)}")
    instances = _collect_instances(args)
    lp = _lp_from_arg(args.params)
    jobs = [(name, inst, args.p, args.strategies, args.budget, args.k, lp, args.convention)
            for name, inst in instances]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            results = list(pool.map(_compare_instance, jobs))
    else:
        results = [_compare_instance(j) for j in jobs]
    out = Path(args.out_dir)
    reports = [r for rs in results for r in rs]
    for r in reports:
        _write_json(out / "reports" / f"{r['instance']}_{r['name']}_p{r['p']}.json", r)
    rows = summarize(reports)
    _write_csv(out / "compare.csv", rows)
    _write_json(out / "compare_config.json", _config(args))
    for row in rows:
        print(f"{row['method']:<9} p={row['p']:<3} ratio={row['mean_ratio']:.3f} "
              f"(stderr {row['stderr_ratio']:.3f})  evals={row['mean_eval_count']:.0f}")
    return 0


# ---------------------------------------------------------------------------
# transfer
# ---------------------------------------------------------------------------

def _transfer_instance(job):
    name, inst, lp, p, norm, shots, seed, sa, convention = job
    table = build_cost_table(inst)
    e_sa = simulated_annealing(inst, sa["sweeps"], sa["restarts"], sa["seed"]).energy
    rows, samples = [], {}
    for variant, mode in (("unnormalized", None), ("normalized", norm)):
        r = linxfer_apply(lp, inst, p, mode, e_ref=e_sa, convention=convention, table=table,
                          shots=shots, seed=seed)
        row = {
            "target": name, "variant": variant, "n_qubits": inst.n_qubits, "n_edges": inst.n_edges,
            "e_ref": e_sa, "normalization_factor": r.normalization_factor,
            "expectation": r.expectation, "ratio_mean": r.ratio,
        }
        if r.samples is not None:
            row.update({"sample_mean": r.samples.mean_energy, "best_energy": r.samples.best_energy,
                        "ratio_sample_mean": r.samples.mean_energy / e_sa,
                        "ratio_best": r.samples.best_energy / e_sa})
            samples[variant] = r.samples.to_csv()
        rows.append(row)
    return rows, samples


def cmd_transfer(args):
    if args.shots < 0:
        raise UsageError("--shots must be >= 0")
    targets = _collect_instances(args)
    lp = _lp_from_arg(args.params)
    norm = Normalization.parse(args.normalization)
    sa = {"sweeps": args.sa_sweeps, "restarts": args.sa_restarts, "seed": args.sa_seed}
    jobs = [(name, inst, lp, args.p, norm, args.shots, args.sample_seed, sa, args.convention)
            for name, inst in targets]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            results = list(pool.map(_transfer_instance, jobs))
    else:
        results = [_transfer_instance(j) for j in jobs]
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    all_rows = []
    for (name, _), (rows, samples) in zip(targets, results):
        all_rows.extend(rows)
        for variant, text in samples.items():
            (out / f"{name}_{variant}.csv").write_text(text, encoding="utf-8", newline="\n")
    _write_csv(out / "transfer_summary.csv", all_rows)
    _write_json(out / "transfer_config.json", _config(args))
    for row in all_rows:
        line = f"{row['target']:<28} {row['variant']:<12} <E>/E_SA={row['ratio_mean']:.3f}"
        if "ratio_best" in row:
            line += f"  E_best/E_SA={row['ratio_best']:.3f}"
        print(line)
    return 0


# ---------------------------------------------------------------------------
# landscape
# ---------------------------------------------------------------------------

def cmd_landscape(args):
    if args.instance:
        name, inst = Path(args.instance).stem, load_instance(args.instance)
    else:
        if args.n is None:
            raise UsageError("give --instance or --n")
        inst = _generate_one(args.model, args.n, args.d, args.seed, args.variance_scale)
        name = f"{args.model}_n{args.n}_seed{args.seed}"
    planes = PLANES if args.plane == "both" else (f"{args.plane}_plane",)
    xs = args.normalize_x or [None]
    e_ref = args.e_ref
    if args.normalize_x and e_ref is None:
        e_ref = simulated_annealing(inst, args.sa_sweeps, args.sa_restarts, args.sa_seed).energy
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for X in xs:
        target, factor = inst, 1.0
        if X is not None:
            target, factor = normalize_instance(inst, Normalization.fixed_x(X), e_ref)
        table = build_cost_table(target)
        for plane in planes:
            fixed = args.fixed_other
            grid = scan_plane(target, args.p, plane, fixed, args.slope_range, args.intcp_range,
                              args.resolution, convention=args.convention, table=table)
            grid.metadata.update({"instance": inst.label, "normalization":
                                  None if X is None else f"fixed:{X:g}",
                                  "normalization_factor": factor, "e_ref": e_ref, "config": _config(args)})
            stem = f"{name}_{plane}" + ("" if X is None else f"_X{X:g}")
            grid.write(out / f"{stem}.csv")
            s, c, v = best_point(grid)
            print(f"{stem}: best slope={s:.4f} intcp={c:.4f} value={v:.4f} |best|={math.hypot(s, c):.4f}")
    return 0


# ---------------------------------------------------------------------------
# fitline / sample
# ---------------------------------------------------------------------------

def cmd_fitline(args):
    sched = check_schedule(args.path)
    if sched.p < 2:
        raise UsageError("fitline needs p >= 2")
    data = {"gamma": fit_linear(sched.gammas).to_dict(), "beta": fit_linear(sched.betas).to_dict(),
            "p": sched.p, "source": str(args.path)}
    if args.out:
        _write_json(Path(args.out), data)
    print(json.dumps(data))
    return 0


def cmd_sample(args):
    inst = load_instance(args.instance)
    convention = args.convention
    if args.schedule:
        sched = check_schedule(args.schedule)
        if args.convention_from_file:
            convention = json.loads(Path(args.schedule).read_text()).get("convention", convention)
    else:
        sched = linear_schedule(_lp_from_arg(args.params), args.p)
    table = build_cost_table(inst)
    run_table, factor = table, 1.0
    if args.normalization:
        if args.e_ref is None:
            raise UsageError("--normalization needs --e-ref")
        scaled, factor = normalize_instance(inst, Normalization.parse(args.normalization), args.e_ref)
        run_table = build_cost_table(scaled)
    state = evolve(run_table, sched, convention)
    ss = sample(state, args.shots, args.seed, table)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    ss.to_csv(out)
    _write_json(out.with_suffix(".json"), {"config": _config(args), "expectation": expectation(state, table),
                                           "mean_energy": ss.mean_energy, "best_energy": ss.best_energy,
                                           "normalization_factor": factor})
    print(f"{ss.shots} shots, mean={ss.mean_energy:.4f}, best={ss.best_energy:.4f} -> {out}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linxfer", description=__doc__.splitlines()[0])
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a random instance as JSON")
    g.add_argument("kind", choices=["random-ising", "maxcut", "sk"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=float, default=1.0)
    g.add_argument("--variance-scale", type=float, default=4.0, help="SK variance is this over n")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    o = sub.add_parser("oracle", help="ground-state energy of an instance")
    o.add_argument("--instance", required=True)
    o.add_argument("--method", choices=["exhaustive", "annealing"], default="exhaustive")
    o.add_argument("--sweeps", type=int, default=1000)
    o.add_argument("--restarts", type=int, default=16)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    c = sub.add_parser("compare", help="approximation ratios of the strategies over instances")
    _add_generator_args(c, count_default=8)
    c.add_argument("--p", type=int, nargs="+", default=[2, 4, 8])
    c.add_argument("--strategies", nargs="*", default=list(STRATEGIES))
    c.add_argument("--budget", type=int, default=1000, help="evaluations per optimizer call")
    c.add_argument("--k", type=int, default=2, help="Fourier terms")
    c.add_argument("--params", default="reference", help="preset name or LinearParams JSON for linxfer")
    c.add_argument("--convention", choices=CONVENTIONS, default="gate")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--out-dir", default="compare_out")
    c.set_defaults(func=cmd_compare)

    t = sub.add_parser("transfer", help="apply linear parameters with and without normalization")
    _add_generator_args(t, count_default=8)
    t.add_argument("--params", default="rough", help="preset name or LinearParams JSON")
    t.add_argument("--normalization", default="sqrt_edges", help="'sqrt_edges' or 'fixed:X'")
    t.add_argument("--p", type=int, default=8)
    t.add_argument("--shots", type=int, default=DEFAULT_SHOTS, help="0 for exact expectation only")
    t.add_argument("--sample-seed", type=int, default=0)
    t.add_argument("--sa-sweeps", type=int, default=1000)
    t.add_argument("--sa-restarts", type=int, default=16)
    t.add_argument("--sa-seed", type=int, default=0)
    t.add_argument("--convention", choices=CONVENTIONS, default="gate")
    t.add_argument("--workers", type=int, default=1)
    t.add_argument("--out-dir", default="transfer_out")
    t.set_defaults(func=cmd_transfer)

    la = sub.add_parser("landscape", help="expectation grid over a slope/intercept plane")
    la.add_argument("--instance")
    la.add_argument("--model", choices=["random-ising", "maxcut", "sk"], default="random-ising")
    la.add_argument("--n", type=int)
    la.add_argument("--d", type=float, default=0.6)
    la.add_argument("--variance-scale", type=float, default=4.0)
    la.add_argument("--seed", type=int, default=0)
    la.add_argument("--plane", choices=["gamma", "beta", "both"], default="gamma")
    la.add_argument("--slope-range", type=float, nargs=2, default=[-2.0, 2.0])
    la.add_argument("--intcp-range", type=float, nargs=2, default=[-2.0, 2.0])
    la.add_argument("--fixed-other", type=float, nargs=2)
    la.add_argument("--resolution", type=int, default=64)
    la.add_argument("--p", type=int, default=8)
    la.add_argument("--normalize-x", type=float, nargs="*", help="one grid per X, couplings / (|E_ref|/X)")
    la.add_argument("--e-ref", type=float, help="reference energy; annealed when omitted")
    la.add_argument("--sa-sweeps", type=int, default=1000)
    la.add_argument("--sa-restarts", type=int, default=16)
    la.add_argument("--sa-seed", type=int, default=0)
    la.add_argument("--convention", choices=CONVENTIONS, default="gate")
    la.add_argument("--out-dir", default="landscape_out")
    la.set_defaults(func=cmd_landscape)

    f = sub.add_parser("fitline", help="linear fit of a schedule's gammas and betas")
    f.add_argument("path", help="schedule or strategy report JSON")
    f.add_argument("--out")
    f.set_defaults(func=cmd_fitline)

    s = sub.add_parser("sample", help="sample bitstrings from a QAOA state")
    s.add_argument("--instance", required=True)
    s.add_argument("--schedule", help="schedule or report JSON")
    s.add_argument("--convention-from-file", action="store_true",
                   help="use the 'convention' recorded in the schedule file")
    s.add_argument("--params", default="reference")
    s.add_argument("--p", type=int, default=8)
    s.add_argument("--normalization")
    s.add_argument("--e-ref", type=float)
    s.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--convention", choices=CONVENTIONS, default="gate")
    s.add_argument("--out", default="samples.csv")
    s.set_defaults(func=cmd_sample)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"linxfer: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        logger.debug("failure", exc_info=True)
        print(f"linxfer: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
