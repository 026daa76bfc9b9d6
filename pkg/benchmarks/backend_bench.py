#!/usr/bin/env python3
"""Benchmark the hot kernels under the numba and pure-Python backends.

Spawns one subprocess per backend (the backend is chosen at import time via
OREMATCH_BACKEND), runs identical workloads, checks both backends return
identical results, and prints a comparison table.

Workload sizes are kept small enough that the pure path finishes in seconds;
pass --scale to grow them.

Usage:
    python benchmarks/backend_bench.py [--scale N]
    python benchmarks/backend_bench.py --worker   (internal)
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def _workloads(scale: int):
    import numpy as np

    from orematch import _kernels
    from orematch.hypergraph import random_hypergraph
    from orematch.matching import _kernel_arrays

    jobs = []

    h_pos = random_hypergraph(15, 0.5, seed=11)
    h_neg = random_hypergraph(15, 0.04, seed=12)
    args_pos = (15, *_kernel_arrays(h_pos))
    args_neg = (15, *_kernel_arrays(h_neg))

    def pm_decide():
        found_pos, _ = _kernels.pm_search(*args_pos)
        found_neg, _ = _kernels.pm_search(*args_neg)
        return (bool(found_pos), bool(found_neg))

    jobs.append(("pm_search 15v (pos+neg)", pm_decide, 5 * scale))

    def mm_dp():
        return _kernels.max_matching_dp(*args_pos)

    jobs.append(("max_matching_dp 15v", mm_dp, 3 * scale))

    rng = np.random.default_rng(5)
    pm_masks = np.sort(rng.integers(1, 1 << 16, size=8).astype(np.int64))
    weights = [1] * 16
    w_lo = np.zeros(1 << 8, dtype=np.int64)
    w_hi = np.zeros(1 << 8, dtype=np.int64)
    for mask in range(1, 1 << 8):
        low = mask & -mask
        w_lo[mask] = w_lo[mask ^ low] + weights[low.bit_length() - 1]
        w_hi[mask] = w_hi[mask ^ low] + weights[8 + low.bit_length() - 1]

    def scan16():
        return tuple(
            int(v) for v in _kernels.scan_nopm_max(16, 8, pm_masks, w_lo, w_hi, 14)
        )

    jobs.append(("scan_nopm_max 2^16", scan16, 1 * scale))

    import itertools

    edges = list(itertools.combinations(range(7), 2))
    inc = np.zeros(7, dtype=np.int64)
    for i, e in enumerate(edges):
        inc[e[0]] |= 1 << i
        inc[e[1]] |= 1 << i
    dis = np.array(
        [
            sum(1 << j for j, f in enumerate(edges)
                if f[0] not in e and f[1] not in e)
            for e in edges
        ],
        dtype=np.int64,
    )

    def sample7():
        return tuple(
            int(v)
            for v in _kernels.sample_intersect(7, len(edges), inc, dis, False,
                                               2000, 42, 36)
        )

    jobs.append(("sample_intersect n=7 x2000", sample7, 1 * scale))
    return jobs


def run_worker(scale: int) -> None:
    from orematch._kernels import backend_name, warm_up

    warm_up()  # JIT compile outside the timed region
    out = {"backend": backend_name(), "results": {}}
    for name, fn, reps in _workloads(scale):
        value = fn()  # warm call, also records the result for cross-checking
        t0 = time.perf_counter()
        for _ in range(reps):
            fn()
        elapsed = (time.perf_counter() - t0) / reps
        out["results"][name] = {"seconds": elapsed, "value": repr(value)}
    json.dump(out, sys.stdout)


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--worker", action="store_true")
    parser.add_argument("--scale", type=int, default=1)
    args = parser.parse_args()
    if args.worker:
        run_worker(args.scale)
        return 0

    reports = {}
    for backend in ("numba", "python"):
        env = dict(os.environ, OREMATCH_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker",
             "--scale", str(args.scale)],
            env=env, capture_output=True, text=True,
        )
        if proc.returncode != 0:
            print(proc.stderr, file=sys.stderr)
            return 1
        reports[backend] = json.loads(proc.stdout)

    print(f"{'kernel':34} {'numba':>12} {'python':>12} {'speedup':>9}")
    for name in reports["numba"]["results"]:
        rn = reports["numba"]["results"][name]
        rp = reports["python"]["results"][name]
        if rn["value"] != rp["value"]:
            print(f"{name}: BACKEND MISMATCH {rn['value']} vs {rp['value']}")
            return 1
        ratio = rp["seconds"] / rn["seconds"] if rn["seconds"] else float("inf")
        print(f"{name:34} {rn['seconds']:>10.4f}s {rp['seconds']:>10.4f}s "
              f"{ratio:>8.1f}x")
    print("results identical across backends")
    return 0


if __name__ == "__main__":
    sys.exit(main())
