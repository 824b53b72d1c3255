"""Social-network measures over frozen graphs.

Distances are hop counts along ties (weights grade tie strength, never
path length).  Directed graphs follow arc direction for geodesics,
degrees split by orientation, and closeness comes in an out- and an
in-variant; undirected graphs collapse the distinction.  ``annotate``
writes the whole vocabulary back onto a copy of the graph.
"""

from __future__ import annotations

import numpy as np

from ..errors import MetricError
from ..graph import SocialGraph
from . import kernels
from .communities import communities, modularity
from .groups import (
    GroupStructure,
    cliques,
    components,
    k_plexes,
    n_cliques,
    triads,
)

__all__ = [
    "GroupStructure",
    "annotate",
    "betweenness",
    "betweenness_all",
    "cliques",
    "closeness",
    "communities",
    "components",
    "degrees",
    "density",
    "diameter",
    "geodesic_matrix",
    "k_plexes",
    "modularity",
    "n_cliques",
    "n_degree",
    "normalized_betweenness",
    "reach",
    "triads",
]


def density(g: SocialGraph) -> float:
    if g.n < 2:
        raise MetricError(f"density undefined for {g.n} node(s)")
    possible = g.n * (g.n - 1)
    if not g.directed:
        possible //= 2
    return g.m / possible


def geodesic_matrix(g: SocialGraph) -> np.ndarray:
    """Hop-count matrix; entry -1 means unreachable; diagonal 0."""
    indptr, nbrs = kernels.csr_adjacency(g, "out")
    return kernels.hop_matrix(indptr, nbrs)


def diameter(g: SocialGraph) -> tuple[int, int]:
    """(longest finite geodesic, ordered unreachable pairs)."""
    if g.n < 2:
        raise MetricError(f"diameter undefined for {g.n} node(s)")
    hops = geodesic_matrix(g)
    off = ~np.eye(g.n, dtype=bool)
    finite = hops[off & (hops >= 0)]
    unreachable = int((hops[off] < 0).sum())
    return (int(finite.max()) if finite.size else 0, unreachable)


def degrees(g: SocialGraph, v: int) -> tuple[int, int, int]:
    """(in, out, total); total counts distinct neighbors."""
    g.node(v)
    if not g.directed:
        k = len(g.neighbors(v))
        return (k, k, k)
    return (len(g.in_neighbors(v)), len(g.out_neighbors(v)), len(g.neighbors(v)))


def n_degree(g: SocialGraph, v: int, n: int) -> int:
    """Nodes within n hops (outward for directed graphs)."""
    if n not in (1, 2):
        raise MetricError(f"n_degree supports n in {{1, 2}}, got {n}")
    g.node(v)
    row = geodesic_matrix(g)[v]
    return int(((row > 0) & (row <= n)).sum())


def reach(g: SocialGraph, v: int) -> int:
    return n_degree(g, v, 2)


def closeness(g: SocialGraph, v: int, direction: str = "out") -> float:
    """Component-adjusted closeness: (r/(n-1)) * (r/sum of distances)."""
    if direction not in ("out", "in"):
        raise MetricError(f"closeness direction must be 'out' or 'in', got {direction!r}")
    g.node(v)
    indptr, nbrs = kernels.csr_adjacency(g, direction)
    row = kernels.hop_matrix(indptr, nbrs)[v]
    dists = row[row > 0]
    r = int(dists.size)
    if r == 0:
        return 0.0
    return (r / (g.n - 1)) * (r / float(dists.sum()))


def betweenness_all(g: SocialGraph) -> np.ndarray:
    """Raw pair-dependency sums for every node at once."""
    indptr, nbrs = kernels.csr_adjacency(g, "out")
    scores = kernels.brandes_nodes(indptr, nbrs)
    return scores if g.directed else scores / 2.0


def betweenness(g: SocialGraph, v: int) -> float:
    g.node(v)
    return float(betweenness_all(g)[v])


def normalized_betweenness(g: SocialGraph, v: int) -> float:
    """Raw betweenness over the count of pairs that could use v."""
    raw = betweenness(g, v)
    pairs = (g.n - 1) * (g.n - 2)
    if not g.directed:
        pairs /= 2
    return raw / pairs if pairs else 0.0


def annotate(g: SocialGraph) -> SocialGraph:
    """Copy of g carrying every graph- and node-level measure.

    Graph measures needing two nodes (density, diameter, unreachable
    pairs) are omitted below that size.  Idempotent.
    """
    out = g._clone()
    comps = components(g)
    blocks, q = communities(g)
    out.set_annotation("component_count", float(len(comps)))
    out.set_annotation("community_count", float(len(blocks)))
    out.set_annotation("modularity", q)
    if g.n >= 2:
        out.set_annotation("density", density(g))
        diam, unreachable = diameter(g)
        out.set_annotation("diameter", float(diam))
        out.set_annotation("unreachable_pairs", float(unreachable))

    if g.n:
        hops_out = geodesic_matrix(g)
        indptr, nbrs = kernels.csr_adjacency(g, "in")
        hops_in = kernels.hop_matrix(indptr, nbrs)
        bet = betweenness_all(g)
        denom = g.n - 1
        for v in range(g.n):
            indeg, outdeg, total = degrees(g, v)
            row_out = hops_out[v]
            row_in = hops_in[v]
            node_reach = int(((row_out > 0) & (row_out <= 2)).sum())
            values = {
                "in_degree": float(indeg),
                "out_degree": float(outdeg),
                "total_degree": float(total),
                "reach": float(node_reach),
                "closeness_out": _adjusted_closeness(row_out, denom),
                "closeness_in": _adjusted_closeness(row_in, denom),
                "betweenness": float(bet[v]),
            }
            for name, value in values.items():
                out.set_node_annotation(v, name, value)
    return out.freeze()


def _adjusted_closeness(row: np.ndarray, denom: int) -> float:
    dists = row[row > 0]
    r = int(dists.size)
    if r == 0:
        return 0.0
    return (r / denom) * (r / float(dists.sum()))
