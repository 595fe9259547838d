"""Command-line entry point: ``rlsort {learn,sort,bench,resilience,analyze}``.

Settings come from a JSON config file with one section per command
(``--config`` or the ``RLSORT_CONFIG`` environment variable); command-line
flags override the file.

Exit codes: 0 success, 1 failed check, 2 usage or I/O error.
"""

import argparse
import csv
import json
import logging
import os
import sys

import numpy as np

from rlsort import analysis
from rlsort.agent import rl_sort
from rlsort.avi import LearnConfig, RegressionError, avi_learn, load_params, save_params
from rlsort.comparator import FaultModel, ReliableComparator
from rlsort.harness import (BENCH_COLUMNS, RESILIENCE_COLUMNS, RunConfig, p_grid, run_bench,
                            run_resilience, write_rows)
from rlsort.valuation import ValueParams

log = logging.getLogger("rlsort")

CONFIG_ENV = "RLSORT_CONFIG"


class UsageError(Exception):
    pass


def load_config(path):
    if path is None:
        path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read config {path}: {e}")


def _section(args, name):
    return dict(load_config(args.config).get(name, {}))


def _override(section, args, keys):
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            section[k] = v
    return section


def _check_writable(path):
    d = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(d):
        raise UsageError(f"output directory does not exist: {d}")


def _load_theta(path):
    try:
        return load_params(path)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read parameter file {path}: {e}")


def _read_array(args):
    if args.values:
        tokens = args.values
    elif args.input:
        try:
            with open(args.input) as fh:
                tokens = fh.read().split()
        except OSError as e:
            raise UsageError(str(e))
    else:
        raise UsageError("give array values or --input FILE")
    try:
        return np.array([float(t) for t in tokens])
    except ValueError as e:
        raise UsageError(f"malformed array input: {e}")


def _cmp(p, seed):
    return ReliableComparator() if not p else FaultModel(p, seed)


def cmd_learn(args):
    sec = _override(_section(args, "learn"), args,
                    ["sample_dim", "samples_per_iter", "iterations", "gamma", "seed"])
    out = args.output or sec.pop("output", "theta.json")
    sec.pop("output", None)
    cfg = LearnConfig(**sec)
    _check_writable(out)
    try:
        vp = avi_learn(cfg)
    except RegressionError as e:
        print(f"learning failed: {e}", file=sys.stderr)
        return 1
    save_params(out, vp, cfg)
    ok = vp.stable
    print(f"theta = [{vp.theta[0]:.6f}, {vp.theta[1]:.6f}]  gamma = {vp.gamma}")
    print(f"both weights negative: {'yes' if ok else 'NO'}")
    return 0 if ok else 1


def cmd_sort(args):
    sec = _override(_section(args, "sort"), args, ["theta", "p", "seed", "step_cap", "fault_scope"])
    x = _read_array(args)
    vp = _load_theta(sec.get("theta", "theta.json"))
    for path in (args.trace, args.heatmap):
        if path:
            _check_writable(path)
    cmp = _cmp(sec.get("p", 0.0), sec.get("seed", 0))
    out, trace = rl_sort(x, vp, cmp, step_cap=sec.get("step_cap"),
                         snapshots=bool(args.heatmap),
                         fault_scope=sec.get("fault_scope", "all"))
    print(" ".join(f"{v:g}" for v in out))
    print(f"moves: {trace.moves}")
    print(f"terminated: {trace.terminated_reason}")
    if args.trace:
        trace.write_csv(args.trace)
    if args.heatmap:
        trace.write_heatmap_csv(args.heatmap)
    return 0


def _run_config(sec, args):
    sec = _override(sec, args, ["trials", "seed", "scale", "sigma", "fault_scope"])
    for key in ("algorithms", "datasets", "dims", "fault_rates"):
        v = getattr(args, key, None)
        if v is not None:
            sec[key] = v
    if getattr(args, "step_cap_multiplier", None) is not None:
        sec["step_cap_multiplier"] = args.step_cap_multiplier
    theta = sec.pop("theta", "theta.json")
    output = sec.pop("output", None)
    return RunConfig.from_dict(sec), theta, output


def cmd_bench(args):
    cfg, theta, output = _run_config(_section(args, "bench"), args)
    out = args.output or output or "bench.csv"
    _check_writable(out)
    vp = _load_theta(args.theta or theta)
    rows = run_bench(cfg, vp)
    write_rows(rows, BENCH_COLUMNS, out)
    print(f"wrote {len(rows)} rows to {out}")
    return 0


def cmd_resilience(args):
    sec = _section(args, "resilience")
    sec.setdefault("fault_rates", p_grid())
    sec.setdefault("dims", [10])
    sec.setdefault("algorithms", ["rl", "bubble", "quick"])
    cfg, theta, output = _run_config(sec, args)
    out = args.output or output or "resilience.csv"
    _check_writable(out)
    vp = _load_theta(args.theta or theta)
    rows = run_resilience(cfg, vp)
    write_rows(rows, RESILIENCE_COLUMNS, out)
    print(f"wrote {len(rows)} rows to {out}")
    return 0


def _read_trace_values(path):
    try:
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        return [float(r["value"]) for r in rows]
    except (OSError, KeyError, ValueError) as e:
        raise UsageError(f"malformed trace {path}: {e}")


def cmd_analyze(args):
    sec = _override(_section(args, "analyze"), args, ["theta", "p", "seed", "trials", "p_v"])
    if args.trace_csv:
        values = _read_trace_values(args.trace_csv)
        doc = {"steps": len(values), "violations": analysis.check_monotonic(values)}
        print(json.dumps(doc, indent=2, sort_keys=True))
        return 0
    x = _read_array(args)
    vp = _load_theta(sec.get("theta", "theta.json"))
    p = sec.get("p", 0.05)
    seed = sec.get("seed", 0)
    _, trace = rl_sort(x, vp, _cmp(sec.get("run_p", 0.0), seed))
    report = analysis.analyze(x, vp, p, trials=sec.get("trials", 10_000), seed=seed,
                              p_v=sec.get("p_v"), trace=trace)
    text = report.to_json()
    if args.output:
        _check_writable(args.output)
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="rlsort", description=__doc__.splitlines()[0])
    ap.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("learn", help="learn value weights with approximate value iteration")
    p.add_argument("-o", "--output")
    p.add_argument("--sample-dim", dest="sample_dim", type=int)
    p.add_argument("--samples-per-iter", dest="samples_per_iter", type=int)
    p.add_argument("--iterations", type=int)
    p.add_argument("--gamma", type=float)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_learn)

    p = sub.add_parser("sort", help="sort one array with the RL agent")
    p.add_argument("values", nargs="*")
    p.add_argument("-i", "--input", help="file with whitespace-separated numbers")
    p.add_argument("--theta")
    p.add_argument("--p", type=float, help="comparison fault rate")
    p.add_argument("--seed", type=int)
    p.add_argument("--step-cap", dest="step_cap", type=int)
    p.add_argument("--fault-scope", dest="fault_scope", choices=["all", "termination"])
    p.add_argument("--trace", help="per-step CSV (step,i,j,value,f1)")
    p.add_argument("--heatmap", help="array snapshot CSV, one row per step")
    p.set_defaults(func=cmd_sort)

    for name, func, helptext in (("bench", cmd_bench, "move/error tables over datasets"),
                                 ("resilience", cmd_resilience, "success/error vs fault rate")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("-o", "--output")
        p.add_argument("--theta")
        p.add_argument("--algorithms", nargs="+")
        if name == "bench":
            p.add_argument("--datasets", nargs="+")
        p.add_argument("--dims", nargs="+", type=int)
        p.add_argument("--fault-rates", dest="fault_rates", nargs="+", type=float)
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--scale", type=float)
        p.add_argument("--sigma", type=float)
        p.add_argument("--step-cap-multiplier", dest="step_cap_multiplier", type=int)
        p.add_argument("--fault-scope", dest="fault_scope", choices=["all", "termination"])
        p.set_defaults(func=func)

    p = sub.add_parser("analyze", help="stability/resiliency report for an array or trace")
    p.add_argument("values", nargs="*")
    p.add_argument("-i", "--input")
    p.add_argument("--trace-csv", dest="trace_csv", help="check a trace CSV for monotonicity")
    p.add_argument("--theta")
    p.add_argument("--p", type=float, help="fault rate for termination probabilities")
    p.add_argument("--p-v", dest="p_v", type=float, help="action category flip probability")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_analyze)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ValueError, TypeError) as e:
        print(f"rlsort: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
