"""Hierarchical edge-betweenness community detection.

Divisive scheme: repeatedly delete the edge with the highest betweenness
on the undirected projection, re-scoring only the component the deletion
touched, and keep the partition (over the whole removal sequence) with
the best modularity.  Deterministic: betweenness ties break on the lowest
(src, dst) pair, equal-modularity partitions resolve to the one with
fewer communities (i.e. the earliest).
"""

from __future__ import annotations

import numpy as np

from ..graph import SocialGraph
from . import kernels
from .groups import GroupStructure

_TIE_EPS = 1e-9
_Q_EPS = 1e-12


def modularity(g: SocialGraph, partition) -> float:
    """Newman Q of a node partition on an undirected graph."""
    m = g.m
    if m == 0:
        return 0.0
    degree = [0] * g.n
    for tie in g.ties():
        degree[tie.src] += 1
        degree[tie.dst] += 1
    q = 0.0
    for block in partition:
        inside = sum(1 for tie in g.ties() if tie.src in block and tie.dst in block)
        degree_sum = sum(degree[v] for v in block)
        q += inside / m - (degree_sum / (2 * m)) ** 2
    return q


def _components_of(nodes, adj):
    comps = []
    seen = set()
    for start in sorted(nodes):
        if start in seen:
            continue
        comp = {start}
        seen.add(start)
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for w in adj[v]:
                if w not in comp:
                    comp.add(w)
                    seen.add(w)
                    frontier.append(w)
        comps.append(frozenset(comp))
    return comps


def _edge_scores(comp, adj):
    """Betweenness of each edge inside one component (undirected halves)."""
    nodes = sorted(comp)
    local = {v: i for i, v in enumerate(nodes)}
    edges = sorted(
        (v, w) for v in nodes for w in adj[v] if v < w
    )
    if not edges:
        return {}
    edge_index = {e: i for i, e in enumerate(edges)}
    lists = [[] for _ in nodes]
    eids = [[] for _ in nodes]
    for v, w in edges:
        lists[local[v]].append(local[w])
        eids[local[v]].append(edge_index[(v, w)])
        lists[local[w]].append(local[v])
        eids[local[w]].append(edge_index[(v, w)])
    indptr, nbrs = kernels.csr_from_lists(len(nodes), lists)
    eid = np.asarray([e for sub in eids for e in sub], dtype=np.int32)
    scores = kernels.brandes_edges(indptr, nbrs, eid, len(edges))
    return {e: scores[i] / 2.0 for e, i in edge_index.items()}


def communities(g: SocialGraph) -> tuple[list[GroupStructure], float]:
    """(best partition as community structures, its modularity)."""
    proj = g if not g.directed and not g.weighted else g.undirected_projection()
    adj = [set() for _ in range(proj.n)]
    for tie in proj.ties():
        adj[tie.src].add(tie.dst)
        adj[tie.dst].add(tie.src)

    comps = _components_of(range(proj.n), adj)
    best = list(comps)
    best_q = modularity(proj, comps)
    remaining = proj.m
    cache: dict[frozenset, dict] = {}

    while remaining:
        for comp in comps:
            if len(comp) > 1 and comp not in cache:
                cache[comp] = _edge_scores(comp, adj)
        candidates = [
            (score, edge)
            for comp in comps
            for edge, score in cache.get(comp, {}).items()
        ]
        top = max(score for score, _ in candidates)
        u, v = min(edge for score, edge in candidates if score >= top - _TIE_EPS * max(1.0, top))

        adj[u].discard(v)
        adj[v].discard(u)
        remaining -= 1
        split = next(c for c in comps if u in c)
        cache.pop(split, None)
        pieces = _components_of(split, adj)
        if len(pieces) > 1:
            comps = [c for c in comps if c != split] + pieces
            comps.sort(key=min)
            q = modularity(proj, comps)
            if q > best_q + _Q_EPS:
                best = list(comps)
                best_q = q

    groups = [GroupStructure("community", c) for c in sorted(best, key=min)]
    return groups, best_q
