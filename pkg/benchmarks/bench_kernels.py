"""Compare the compiled path-counting kernels against the pure fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py

The script times each kernel in-process, then re-runs itself in a child
process with ``PEERSCOPE_PURE=1`` to time the fallback, and prints both
columns with speedups. Per-kernel checksums from the two backends are
compared, so a disagreement between implementations fails loudly here too.
"""

import argparse
import json
import os
import random
import subprocess
import sys
import time

import numpy as np

from peerscope.metrics import kernels


def random_csr(n, degree, seed):
    """CSR arrays of a random directed graph with the given mean out-degree."""
    rng = random.Random(seed)
    lists = []
    for v in range(n):
        others = [w for w in range(n) if w != v]
        lists.append(sorted(rng.sample(others, min(degree, n - 1))))
    return kernels.csr_from_lists(n, lists)


def undirected_csr_with_eids(n, degree, seed):
    """CSR plus edge-id arrays, packed the way edge betweenness packs them."""
    rng = random.Random(seed)
    edges = set()
    for v in range(n):
        for w in rng.sample([w for w in range(n) if w != v], min(degree // 2, n - 1)):
            edges.add((min(v, w), max(v, w)))
    edges = sorted(edges)
    lists = [[] for _ in range(n)]
    eids = [[] for _ in range(n)]
    for i, (v, w) in enumerate(edges):
        lists[v].append(w)
        eids[v].append(i)
        lists[w].append(v)
        eids[w].append(i)
    indptr, nbrs = kernels.csr_from_lists(n, lists)
    eid = np.asarray([e for sub in eids for e in sub], dtype=np.int32)
    return indptr, nbrs, eid, len(edges)


def best_of(repeats, fn, *args):
    best = float("inf")
    result = None
    for _ in range(repeats):
        started = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - started)
    return best, result


def run_benchmarks(sizes, degree, repeats):
    rows = []
    for n in sizes:
        indptr, nbrs = random_csr(n, degree, seed=1000 + n)
        u_indptr, u_nbrs, eid, n_edges = undirected_csr_with_eids(n, degree, seed=2000 + n)
        cases = [
            ("hop_matrix", kernels.hop_matrix, (indptr, nbrs)),
            ("sigma_matrix", kernels.sigma_matrix, (indptr, nbrs)),
            ("brandes_nodes", kernels.brandes_nodes, (indptr, nbrs)),
            ("brandes_edges", kernels.brandes_edges, (u_indptr, u_nbrs, eid, n_edges)),
        ]
        for name, fn, args in cases:
            seconds, result = best_of(repeats, fn, *args)
            checksum = float(np.asarray(result, dtype=np.float64).sum())
            rows.append(
                {
                    "kernel": name,
                    "n": n,
                    "m": int(len(nbrs) if name != "brandes_edges" else n_edges),
                    "seconds": seconds,
                    "checksum": checksum,
                }
            )
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="100,200,400", help="node counts to time")
    parser.add_argument("--degree", type=int, default=8, help="mean degree")
    parser.add_argument("--repeats", type=int, default=3, help="best-of repeats")
    parser.add_argument("--emit-json", action="store_true", help=argparse.SUPPRESS)
    opts = parser.parse_args()
    sizes = [int(s) for s in opts.sizes.split(",") if s]

    rows = run_benchmarks(sizes, opts.degree, opts.repeats)
    if opts.emit_json:
        json.dump(rows, sys.stdout)
        return

    if kernels.BACKEND == "pure":
        print("compiled extension unavailable; timing the pure backend only\n")
        print(f"{'kernel':<15} {'n':>5} {'m':>6} {'seconds':>10}")
        for row in rows:
            print(f"{row['kernel']:<15} {row['n']:>5} {row['m']:>6} {row['seconds']:>10.4f}")
        return

    child_env = dict(os.environ, PEERSCOPE_PURE="1")
    child = subprocess.run(
        [sys.executable, __file__, "--emit-json", "--sizes", opts.sizes,
         "--degree", str(opts.degree), "--repeats", str(opts.repeats)],
        env=child_env,
        capture_output=True,
        text=True,
        check=True,
    )
    pure_rows = json.loads(child.stdout)

    print(f"{'kernel':<15} {'n':>5} {'m':>6} {'cython':>10} {'pure':>10} {'speedup':>9}")
    mismatches = 0
    for fast, slow in zip(rows, pure_rows):
        assert (fast["kernel"], fast["n"]) == (slow["kernel"], slow["n"])
        if abs(fast["checksum"] - slow["checksum"]) > 1e-6 * max(1.0, abs(fast["checksum"])):
            mismatches += 1
            flag = "  !! checksum mismatch"
        else:
            flag = ""
        speedup = slow["seconds"] / fast["seconds"] if fast["seconds"] else float("inf")
        print(
            f"{fast['kernel']:<15} {fast['n']:>5} {fast['m']:>6} "
            f"{fast['seconds']:>9.4f}s {slow['seconds']:>9.4f}s {speedup:>8.1f}x{flag}"
        )
    if mismatches:
        print(f"\n{mismatches} kernel(s) disagree between backends", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
