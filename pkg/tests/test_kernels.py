"""Backend equivalence: the compiled kernels must match the pure-Python ones."""

import os
import subprocess
import sys

import numpy as np
import pytest

from peerscope.metrics import _kernels_py, kernels

from .corpus import make_corpus

speedups = pytest.importorskip(
    "peerscope.metrics._speedups", reason="compiled extension not built"
)


def edge_csr(g):
    """Symmetrized CSR plus per-entry undirected edge ids."""
    pairs = sorted({(min(t.src, t.dst), max(t.src, t.dst)) for t in g.ties()})
    index = {e: i for i, e in enumerate(pairs)}
    lists = [[] for _ in range(g.n)]
    eids = [[] for _ in range(g.n)]
    for u, v in pairs:
        lists[u].append(v)
        eids[u].append(index[(u, v)])
        lists[v].append(u)
        eids[v].append(index[(u, v)])
    indptr, nbrs = kernels.csr_from_lists(g.n, lists)
    eid = np.asarray([e for sub in eids for e in sub], dtype=np.int32)
    return indptr, nbrs, eid, len(pairs)


@pytest.fixture(scope="module")
def corpus():
    return make_corpus(60, seed=2024)


def test_hop_and_sigma_match(corpus):
    for g in corpus:
        indptr, nbrs = kernels.csr_adjacency(g, "out")
        assert np.array_equal(speedups.hop_matrix(indptr, nbrs), _kernels_py.hop_matrix(indptr, nbrs))
        dist_c, sigma_c = speedups.sigma_matrix(indptr, nbrs)
        dist_p, sigma_p = _kernels_py.sigma_matrix(indptr, nbrs)
        assert np.array_equal(dist_c, dist_p)
        assert np.array_equal(sigma_c, sigma_p)


def test_brandes_nodes_match(corpus):
    for g in corpus:
        indptr, nbrs = kernels.csr_adjacency(g, "out")
        got = speedups.brandes_nodes(indptr, nbrs)
        want = _kernels_py.brandes_nodes(indptr, nbrs)
        assert np.allclose(got, want, atol=1e-12)


def test_brandes_edges_match(corpus):
    for g in corpus:
        indptr, nbrs, eid, n_edges = edge_csr(g)
        got = speedups.brandes_edges(indptr, nbrs, eid, n_edges)
        want = _kernels_py.brandes_edges(indptr, nbrs, eid, n_edges)
        assert np.allclose(got, want, atol=1e-12)


def test_empty_graph_kernels():
    indptr = np.zeros(1, dtype=np.int32)
    nbrs = np.zeros(0, dtype=np.int32)
    for impl in (speedups, _kernels_py):
        assert impl.hop_matrix(indptr, nbrs).shape == (0, 0)
        assert impl.brandes_nodes(indptr, nbrs).shape == (0,)


def test_pure_env_forces_fallback():
    code = "from peerscope.metrics import kernels; print(kernels.BACKEND)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={**os.environ, "PEERSCOPE_PURE": "1"},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "pure"


def test_default_backend_is_compiled():
    # the extension imported at module top, so the selector must pick it
    # (unless PEERSCOPE_PURE was exported for the whole test run)
    if os.environ.get("PEERSCOPE_PURE"):
        assert kernels.BACKEND == "pure"
    else:
        assert kernels.BACKEND == "cython"
