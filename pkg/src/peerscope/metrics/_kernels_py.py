"""Pure-Python graph kernels (fallback when the compiled module is absent).

Same contract as the compiled twin in ``_speedups.pyx``: CSR adjacency in
int32 arrays, hop counts (never weights) as distances, Brandes-style
dependency accumulation for betweenness.  Directed semantics throughout —
callers pass a symmetrized CSR (and halve betweenness) for undirected
graphs.
"""

from collections import deque

import numpy as np


def hop_matrix(indptr, nbrs):
    """BFS hop counts from every source; -1 marks unreachable."""
    n = len(indptr) - 1
    ip = indptr.tolist()
    nb = nbrs.tolist()
    out = np.full((n, n), -1, dtype=np.int32)
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            dv = dist[v] + 1
            for i in range(ip[v], ip[v + 1]):
                w = nb[i]
                if dist[w] < 0:
                    dist[w] = dv
                    queue.append(w)
        out[s] = dist
    return out


def sigma_matrix(indptr, nbrs):
    """(hop counts, geodesic counts) for every ordered pair.

    sigma[s, t] is the number of distinct shortest paths s -> t
    (sigma[s, s] = 1); 0 wherever t is unreachable.
    """
    n = len(indptr) - 1
    ip = indptr.tolist()
    nb = nbrs.tolist()
    dist_out = np.full((n, n), -1, dtype=np.int32)
    sigma_out = np.zeros((n, n), dtype=np.float64)
    for s in range(n):
        dist = [-1] * n
        sigma = [0.0] * n
        dist[s] = 0
        sigma[s] = 1.0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            dv = dist[v] + 1
            for i in range(ip[v], ip[v + 1]):
                w = nb[i]
                if dist[w] < 0:
                    dist[w] = dv
                    queue.append(w)
                if dist[w] == dv:
                    sigma[w] += sigma[v]
        dist_out[s] = dist
        sigma_out[s] = sigma
    return dist_out, sigma_out


def brandes_nodes(indptr, nbrs):
    """Raw ordered-pair dependency sums per node."""
    n = len(indptr) - 1
    ip = indptr.tolist()
    nb = nbrs.tolist()
    cb = [0.0] * n
    for s in range(n):
        order = []
        preds = [[] for _ in range(n)]
        sigma = [0.0] * n
        sigma[s] = 1.0
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            dv = dist[v] + 1
            for i in range(ip[v], ip[v + 1]):
                w = nb[i]
                if dist[w] < 0:
                    dist[w] = dv
                    queue.append(w)
                if dist[w] == dv:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * n
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                cb[w] += delta[w]
    return np.asarray(cb, dtype=np.float64)


def brandes_edges(indptr, nbrs, eid, n_edges):
    """Dependency sums per edge id; eid maps each CSR entry to its edge.

    Community detection recomputes this after every edge removal, so this
    one is tuned harder than its siblings: adjacency is unpacked to
    (neighbor, edge) pairs once, and the queue is a plain list with a head
    cursor. Accumulation order matches the compiled twin exactly.
    """
    n = len(indptr) - 1
    ip = indptr.tolist()
    nb = nbrs.tolist()
    ei = eid.tolist()
    adj = [
        list(zip(nb[ip[v] : ip[v + 1]], ei[ip[v] : ip[v + 1]])) for v in range(n)
    ]
    ce = [0.0] * n_edges
    for s in range(n):
        order = []
        preds = [[] for _ in range(n)]
        sigma = [0.0] * n
        sigma[s] = 1.0
        dist = [-1] * n
        dist[s] = 0
        queue = [s]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            order.append(v)
            dv = dist[v] + 1
            sv = sigma[v]  # final once v leaves the queue
            for w, e in adj[v]:
                dw = dist[w]
                if dw < 0:
                    dist[w] = dv
                    queue.append(w)
                    sigma[w] = sv
                    preds[w].append((v, e))
                elif dw == dv:
                    sigma[w] += sv
                    preds[w].append((v, e))
        delta = [0.0] * n
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for v, e in preds[w]:
                contrib = sigma[v] * coeff
                delta[v] += contrib
                ce[e] += contrib
    return np.asarray(ce, dtype=np.float64)
