"""Kernel backend selection and CSR adjacency construction.

The compiled extension is preferred when importable; setting the
environment variable ``PEERSCOPE_PURE`` (to anything non-empty) forces
the pure-Python fallback, which the equivalence tests and the benchmark
use to compare both backends.
"""

import os

import numpy as np

if os.environ.get("PEERSCOPE_PURE"):
    from . import _kernels_py as _impl

    BACKEND = "pure"
else:
    try:
        from . import _speedups as _impl

        BACKEND = "cython"
    except ImportError:  # built without the extension
        from . import _kernels_py as _impl

        BACKEND = "pure"

hop_matrix = _impl.hop_matrix
sigma_matrix = _impl.sigma_matrix
brandes_nodes = _impl.brandes_nodes
brandes_edges = _impl.brandes_edges


def csr_from_lists(n, neighbor_lists):
    """Pack per-node neighbor lists into (indptr, nbrs) int32 arrays."""
    indptr = np.zeros(n + 1, dtype=np.int32)
    for v, lst in enumerate(neighbor_lists):
        indptr[v + 1] = indptr[v] + len(lst)
    nbrs = np.empty(int(indptr[-1]), dtype=np.int32)
    for v, lst in enumerate(neighbor_lists):
        nbrs[indptr[v] : indptr[v + 1]] = lst
    return indptr, nbrs


def csr_adjacency(g, direction="out"):
    """CSR adjacency of a graph.

    direction: "out" follows arcs, "in" follows them backwards, "sym"
    ignores orientation.  For undirected graphs all three coincide.
    """
    lists = [[] for _ in range(g.n)]
    for tie in g.ties():
        if g.directed:
            if direction in ("out", "sym"):
                lists[tie.src].append(tie.dst)
            if direction in ("in", "sym"):
                lists[tie.dst].append(tie.src)
        else:
            lists[tie.src].append(tie.dst)
            lists[tie.dst].append(tie.src)
    if direction == "sym" and g.directed:
        lists = [sorted(set(lst)) for lst in lists]
    return csr_from_lists(g.n, lists)
