"""Command line front end: build, query, verify, bench, demo-reduction.

Output is JSON lines, one object per query followed by a summary object.
Timings are kept in fields ending in ``_ms`` or ``_us``; everything else is
a function of the seed.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from collections import Counter
from typing import Dict, List, Optional

import numpy as np

from .data import DataError, Dataset, generate_points, generate_queries, read_points, read_queries
from .geometry import Metric, MetricBall
from .oracle import oracle_chromatic, oracle_range_count
from .pipeline import (Chromatic1D, Chromatic2D, array_mode_via_chromatic, array_structure,
                       count_via_range_finding, range_finding_budget)


def _seeds(seed: int, count: int) -> List[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def _emit(obj, out):
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _dataset(args, rng) -> Dataset:
    if args.points:
        return read_points(args.points, args.dim)
    return generate_points(args.n, args.dim, args.colors, rng)


def _build(args, data: Dataset, seed: int):
    metric = Metric.parse(args.metric)
    if data.dim == 1:
        return Chromatic1D(data.points, data.colors, metric, args.epsilon)
    return Chromatic2D(data.points, data.colors, metric, r=args.r, fanout=args.fanout, seed=seed)


def _answer(structure, data: Dataset, q, k: int, args, verify: bool) -> Dict:
    stats: Counter = Counter()
    approx = data.dim == 1 and args.epsilon is not None
    t = time.perf_counter()
    ans = structure.approx_query(q, k, stats) if approx else structure.query(q, k, stats)
    elapsed = (time.perf_counter() - t) * 1e6
    rec = {"q": list(q), "k": k, "color": data.labels[ans.color], "freq": ans.frequency,
           "counters": dict(sorted(stats.items())), "query_us": round(elapsed, 1)}
    if verify:
        ref = oracle_chromatic(data.points, data.colors, q, k, Metric.parse(args.metric))
        if approx:
            rec["agree"] = ans.frequency >= math.ceil((1 - args.epsilon) * ref.mode_frequency)
        else:
            rec["agree"] = ans.frequency == ref.mode_frequency
        rec["oracle_freq"] = ref.mode_frequency
    return rec


def _run_queries(args, verify: bool, out) -> int:
    data_rng, query_rng, struct_rng = _seeds(args.seed, 3)
    data = _dataset(args, data_rng)
    t = time.perf_counter()
    structure = _build(args, data, int(struct_rng.integers(2 ** 31)))
    build_ms = (time.perf_counter() - t) * 1e3
    if args.query_file:
        queries = read_queries(args.query_file, data.dim)
    else:
        queries = generate_queries(data, args.queries, query_rng)

    answered = agreed = errors = 0
    totals: Counter = Counter()
    for i, (q, k) in enumerate(queries):
        if not 1 <= k <= data.n:
            _emit({"id": i, "q": list(q), "k": k, "error": f"k={k} out of range 1..{data.n}"}, out)
            errors += 1
            continue
        rec = _answer(structure, data, q, k, args, verify)
        totals.update(rec["counters"])
        answered += 1
        agreed += bool(rec.get("agree"))
        _emit({"id": i, **rec}, out)
    summary = {"summary": True, "dim": data.dim, "metric": args.metric, "n": data.n,
               "queries": len(queries), "answered": answered, "errors": errors,
               "sizes": structure.size(), "build_ms": round(build_ms, 2),
               "counter_means": {k: v / max(answered, 1) for k, v in sorted(totals.items())}}
    if verify:
        summary["agreed"] = agreed
        summary["mismatches"] = answered - agreed
    _emit(summary, out)
    return answered - agreed if verify else 0


def cmd_build(args, out) -> int:
    data_rng, _, struct_rng = _seeds(args.seed, 3)
    data = _dataset(args, data_rng)
    t = time.perf_counter()
    structure = _build(args, data, int(struct_rng.integers(2 ** 31)))
    _emit({"summary": True, "dim": data.dim, "metric": args.metric, "n": data.n,
           "colors": len(data.labels), "sizes": structure.size(),
           "build_ms": round((time.perf_counter() - t) * 1e3, 2)}, out)
    return 0


def cmd_query(args, out) -> int:
    _run_queries(args, args.verify, out)
    return 0


def cmd_verify(args, out) -> int:
    return 1 if _run_queries(args, True, out) else 0


def cmd_bench(args, out) -> int:
    sizes = [int(v) for v in str(args.n).split(",") if v.strip()]
    rows = []
    for n in sizes:
        data_rng, query_rng, struct_rng = _seeds(args.seed + n, 3)
        data = generate_points(n, args.dim, args.colors, data_rng)
        t = time.perf_counter()
        structure = _build(args, data, int(struct_rng.integers(2 ** 31)))
        build_ms = (time.perf_counter() - t) * 1e3
        totals: Counter = Counter()
        elapsed = 0.0
        bad = 0
        queries = generate_queries(data, args.queries, query_rng)
        for q, k in queries:
            rec = _answer(structure, data, q, k, args, args.verify)
            totals.update(rec["counters"])
            elapsed += rec["query_us"]
            bad += args.verify and not rec["agree"]
        row = {"n": n, "build_ms": round(build_ms, 2), "mean_query_us": round(elapsed / max(len(queries), 1), 2)}
        row.update({f"mean_{k}": v / max(len(queries), 1) for k, v in sorted(totals.items())})
        row.update({f"size_{k}": v for k, v in structure.size().items()})
        if args.verify:
            row["mismatches"] = bad
        rows.append(row)
        _emit(row, out)

    columns = ["n", "build_ms", "mean_query_us"] + sorted({k for r in rows for k in r} - {"n", "build_ms", "mean_query_us"})
    report = {"summary": True, "command": "bench", "dim": args.dim, "metric": args.metric,
              "colors": args.colors, "queries": args.queries, "rows": rows}
    if args.out:
        stem = os.path.splitext(args.out)[0]
        os.makedirs(os.path.dirname(stem) or ".", exist_ok=True)
        from .plots import bench_figures
        report["figures"] = bench_figures(rows, stem, f"dim={args.dim} metric={args.metric}")
        report["files"] = [stem + ".json", stem + ".csv"]
        with open(stem + ".csv", "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=columns, restval="")
            w.writeheader()
            w.writerows(rows)
        with open(stem + ".json", "w") as fh:
            json.dump(report, fh, indent=1, sort_keys=True)
    _emit(report, out)
    return sum(r.get("mismatches", 0) for r in rows) and 1


def cmd_demo_reduction(args, out) -> int:
    array_rng, ball_rng = _seeds(args.seed, 2)
    n, trials = args.n, args.queries
    values = array_rng.integers(0, args.colors, size=n)
    structure = array_structure(values)
    mode_bad = 0
    for _ in range(trials):
        i, j = sorted(int(v) for v in array_rng.integers(0, n, size=2))
        got = array_mode_via_chromatic(structure, i, j)
        mode_bad += got.frequency != int(np.bincount(values[i:j + 1]).max())

    data = generate_points(n, args.dim, args.colors, ball_rng)
    metric = Metric.parse(args.metric)
    finder = _build(args, data, 0)
    count_bad = max_calls = 0
    for q, k in generate_queries(data, trials, ball_rng):
        ref = oracle_chromatic(data.points, data.colors, q, k, metric)
        ball = MetricBall.from_key(q, ref.kth_key * float(ball_rng.random()) * 1.5, metric)
        stats: Counter = Counter()
        got = count_via_range_finding(finder, ball, stats)
        count_bad += got != oracle_range_count(data.points, ball)
        max_calls = max(max_calls, stats["range_finding_calls"])
    _emit({"summary": True, "command": "demo-reduction", "n": n, "trials": trials,
           "array_mode_mismatches": mode_bad, "count_mismatches": count_bad,
           "max_range_finding_calls": max_calls, "call_budget": range_finding_budget(data.n)}, out)
    return 1 if mode_bad or count_bad else 0


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, choices=(1, 2), default=1)
    common.add_argument("--metric", default="l2", help="l1, l2, linf or lm:<m> (1D only)")
    common.add_argument("--n", default="1000", help="point count; a comma list for bench")
    common.add_argument("--colors", type=int, default=8)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--queries", type=int, default=100)
    common.add_argument("--epsilon", type=float, default=None, help="1D approximate answers")
    common.add_argument("--r", type=int, default=None, help="cutting parameter (default ceil(n^(1/3)))")
    common.add_argument("--fanout", default="binary", help="binary or delta:<d>")
    common.add_argument("--verify", action="store_true", help="cross-check every answer with brute force")
    common.add_argument("--out", default=None, help="output path (bench: stem for .json/.csv/.png)")
    common.add_argument("--points", default=None, help="CSV of x[,y],color instead of generated data")
    common.add_argument("--query-file", default=None, help="CSV of qx[,qy],k")

    parser = argparse.ArgumentParser(prog="chromknn", description="Chromatic k-nearest-neighbour queries.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, text in (("build", cmd_build, "build structures and report sizes"),
                           ("query", cmd_query, "answer queries as JSON lines"),
                           ("verify", cmd_verify, "answer and cross-check; non-zero exit on mismatch"),
                           ("bench", cmd_bench, "scaling sweep with CSV table and figures"),
                           ("demo-reduction", cmd_demo_reduction, "range mode and counting through k-NN queries")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.set_defaults(func=fn)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    if args.command != "bench":
        try:
            args.n = int(args.n)
        except ValueError:
            _emit({"error": f"--n must be an integer, got {args.n!r}"}, sys.stdout)
            return 2
    out = sys.stdout
    handle = None
    if args.out and args.command != "bench":
        handle = out = open(args.out, "w")
    try:
        return args.func(args, out)
    except (DataError, ValueError) as exc:
        _emit({"error": str(exc)}, out)
        return 2
    finally:
        if handle is not None:
            handle.close()


if __name__ == "__main__":
    sys.exit(main())
