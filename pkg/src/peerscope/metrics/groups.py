"""Cohesive-subgroup structures: components, cliques, n-cliques, k-plexes, triads.

The clique family uses exact recursive enumeration (exponential in the
worst case), which is the design point for classroom-sized networks; the
``max_nodes`` guard makes anything bigger an explicit caller decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..errors import MetricError
from ..graph import SocialGraph
from . import kernels

DEFAULT_MAX_ENUM_NODES = 128


@dataclass(frozen=True)
class GroupStructure:
    kind: str  # component | clique | n_clique | k_plex | triad | community
    members: frozenset[int]
    parameter: int | None = None


def _require_undirected(g: SocialGraph, op: str) -> None:
    if g.directed:
        raise MetricError(f"{op} requires an undirected graph")


def _check_scale(g: SocialGraph, max_nodes: int) -> None:
    if g.n > max_nodes:
        raise MetricError(
            f"enumeration refused for {g.n} nodes (limit {max_nodes}); "
            "raise max_nodes explicitly to override"
        )


def _adjacency_sets(g: SocialGraph) -> list[set[int]]:
    adj = [set() for _ in range(g.n)]
    for tie in g.ties():
        adj[tie.src].add(tie.dst)
        adj[tie.dst].add(tie.src)
    return adj


def _bron_kerbosch(adj, r: set, p: set, x: set, out: list) -> None:
    if not p and not x:
        out.append(frozenset(r))
        return
    pivot = max(p | x, key=lambda u: (len(adj[u] & p), -u))
    for v in sorted(p - adj[pivot]):
        _bron_kerbosch(adj, r | {v}, p & adj[v], x & adj[v], out)
        p = p - {v}
        x = x | {v}


def _sorted_groups(kind, member_sets, parameter=None):
    ordered = sorted(member_sets, key=lambda s: (len(s), sorted(s)))
    return [GroupStructure(kind, s, parameter) for s in ordered]


def components(g: SocialGraph) -> list[GroupStructure]:
    """Weakly connected components (direction ignored); singletons count."""
    adj = _adjacency_sets(g)
    seen = [False] * g.n
    out = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = {start}
        seen[start] = True
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    frontier.append(w)
        out.append(GroupStructure("component", frozenset(comp)))
    return out


def cliques(
    g: SocialGraph, min_size: int = 3, *, max_nodes: int = DEFAULT_MAX_ENUM_NODES
) -> list[GroupStructure]:
    """Maximal complete subgraphs of size >= min_size."""
    _require_undirected(g, "cliques")
    if min_size < 3:
        raise MetricError(f"clique min_size must be >= 3, got {min_size}")
    _check_scale(g, max_nodes)
    adj = _adjacency_sets(g)
    found: list[frozenset] = []
    _bron_kerbosch(adj, set(), set(range(g.n)), set(), found)
    return _sorted_groups("clique", [s for s in found if len(s) >= min_size])


def n_cliques(
    g: SocialGraph, n: int, min_size: int = 3, *, max_nodes: int = DEFAULT_MAX_ENUM_NODES
) -> list[GroupStructure]:
    """Maximal sets with pairwise distance <= n, measured in the full graph."""
    _require_undirected(g, "n_cliques")
    if n < 1:
        raise MetricError(f"n must be >= 1, got {n}")
    if min_size < 3:
        raise MetricError(f"n_clique min_size must be >= 3, got {min_size}")
    _check_scale(g, max_nodes)
    indptr, nbrs = kernels.csr_adjacency(g)
    hops = kernels.hop_matrix(indptr, nbrs)
    # cliques of the hop-power graph are exactly the distance-n groups
    power_adj = [
        {int(w) for w in range(g.n) if w != v and 0 < hops[v, w] <= n}
        for v in range(g.n)
    ]
    found: list[frozenset] = []
    _bron_kerbosch(power_adj, set(), set(range(g.n)), set(), found)
    return _sorted_groups("n_clique", [s for s in found if len(s) >= min_size], n)


def k_plexes(
    g: SocialGraph, k: int, min_size: int, *, max_nodes: int = DEFAULT_MAX_ENUM_NODES
) -> list[GroupStructure]:
    """Maximal sets where each member misses at most k members (itself included)."""
    _require_undirected(g, "k_plexes")
    if k < 1:
        raise MetricError(f"k must be >= 1, got {k}")
    if min_size <= k:
        raise MetricError(f"k_plex min_size must exceed k ({k}), got {min_size}")
    _check_scale(g, max_nodes)
    adj = _adjacency_sets(g)

    def admits(s: set[int], v: int) -> bool:
        """Does s + {v} still satisfy the degree condition for everyone?"""
        size = len(s) + 1
        if len(adj[v] & s) < size - k:
            return False
        return all(len(adj[u] & s) + (v in adj[u]) >= size - k for u in s)

    found: list[frozenset] = []

    # Bron-Kerbosch-shaped recursion; sound for any property closed under
    # subsets, with P/X re-filtered against the grown set at each level.
    def extend(s: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            found.append(frozenset(s))
            return
        for v in sorted(p):
            s2 = s | {v}
            extend(s2, {u for u in p - {v} if admits(s2, u)}, {u for u in x if admits(s2, u)})
            p = p - {v}
            x = x | {v}

    extend(set(), set(range(g.n)), set())
    return _sorted_groups("k_plex", [s for s in found if len(s) >= min_size], k)


def triads(g: SocialGraph) -> list[GroupStructure]:
    """Directed 3-cycles, each node triple reported once."""
    if not g.directed:
        raise MetricError("triads require a directed graph")
    arcs = {(t.src, t.dst) for t in g.ties()}
    out = []
    for a, b, c in combinations(range(g.n), 3):
        if ((a, b) in arcs and (b, c) in arcs and (c, a) in arcs) or (
            (a, c) in arcs and (c, b) in arcs and (b, a) in arcs
        ):
            out.append(frozenset({a, b, c}))
    return _sorted_groups("triad", out)
