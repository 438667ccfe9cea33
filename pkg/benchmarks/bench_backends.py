#!/usr/bin/env python3
"""Compare the jit-compiled BFS kernel against the pure-numpy fallback.

Times the raw kernel on masked BFS workloads and a batch of full solver
runs, and verifies both backends produce identical results.  The package
selects its backend at import time from PATHPACK_NO_NUMBA; here both
implementations are exercised side by side in one process.

Usage: python benchmarks/bench_backends.py [--rounds N]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from pathpack import PackingInstance, SolverConfig, random_gnp
from pathpack.kernels import BACKEND, _bfs_numpy, bfs_tree
from pathpack.search import solve


def _bench_kernel(kernel, graphs, rounds):
    total = 0.0
    visited = 0
    for g, blocked, src in graphs:
        dist = np.empty(g.n, np.int32)
        parent = np.empty(g.n, np.int32)
        queue = np.empty(g.n, np.int32)
        t0 = time.perf_counter()
        for _ in range(rounds):
            visited += kernel(g.indptr, g.nbrs, blocked, src, -1, -1, -1, -1,
                              dist, parent, queue)
        total += time.perf_counter() - t0
    return total, visited


def _kernel_outputs(kernel, g, blocked, src):
    dist = np.empty(g.n, np.int32)
    parent = np.empty(g.n, np.int32)
    queue = np.empty(g.n, np.int32)
    count = kernel(g.indptr, g.nbrs, blocked, src, -1, -1, -1, -1,
                   dist, parent, queue)
    return count, dist.copy(), parent.copy()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rounds", type=int, default=20000,
                        help="kernel invocations per workload graph")
    args = parser.parse_args()

    print(f"package backend at import: {BACKEND}")

    rng = random.Random(0)
    workloads = []
    for i, n in enumerate((12, 18, 40, 120)):
        g = random_gnp(n, 3.0 / n, i)
        blocked = np.zeros(n, np.uint8)
        for v in rng.sample(range(n), n // 6):
            blocked[v] = 1
        src = next(v for v in range(n) if not blocked[v])
        workloads.append((g, blocked, src))

    # equality check on every workload before timing anything
    for g, blocked, src in workloads:
        a = _kernel_outputs(bfs_tree, g, blocked, src)
        b = _kernel_outputs(_bfs_numpy, g, blocked, src)
        assert a[0] == b[0]
        assert np.array_equal(a[1], b[1]) and np.array_equal(a[2], b[2])
    print("backend outputs identical on all workloads")

    bfs_tree(*(workloads[0][0].indptr, workloads[0][0].nbrs,
               workloads[0][1], workloads[0][2], -1, -1, -1, -1,
               np.empty(workloads[0][0].n, np.int32),
               np.empty(workloads[0][0].n, np.int32),
               np.empty(workloads[0][0].n, np.int32)))  # warm the jit cache

    print(f"\nBFS kernel, {args.rounds} rounds per graph:")
    print(f"{'n':>6} {'jit/current':>12} {'numpy':>12} {'speedup':>8}")
    for (g, blocked, src) in workloads:
        t_jit, _ = _bench_kernel(bfs_tree, [(g, blocked, src)], args.rounds)
        t_np, _ = _bench_kernel(_bfs_numpy, [(g, blocked, src)], args.rounds)
        per_jit = t_jit / args.rounds * 1e6
        per_np = t_np / args.rounds * 1e6
        print(f"{g.n:>6} {per_jit:>10.2f}us {per_np:>10.2f}us "
              f"{per_np / per_jit:>7.1f}x")

    print("\nfull solver runs (gap-bound pruning only, search entered):")
    # seeded instances with a few thousand search nodes each
    hard = [(17, 0.25, 81510, 1, 11, 3, 7),
            (16, 0.25, 160822, 13, 0, 3, 7),
            (18, 0.25, 184179, 15, 13, 3, 7)]
    insts = [PackingInstance(random_gnp(n, p, seed), s, t, k, ell)
             for n, p, seed, s, t, k, ell in hard]
    cfg = SolverConfig(trivial_detection=False, b_fi=False, d_ms=False,
                       c_dist=False, c_pl=False, b_sp=True,
                       timeout_ms=120000)
    t0 = time.perf_counter()
    nodes = 0
    for inst in insts:
        _, _, stats = solve(inst, cfg)
        nodes += stats.nodes
    dt = time.perf_counter() - t0
    print(f"  backend={BACKEND}: {nodes} nodes in {dt:.2f}s "
          f"({nodes / dt:.0f} nodes/s)")
    print("  (rerun with PATHPACK_NO_NUMBA=1 to time the numpy backend)")


if __name__ == "__main__":
    main()
