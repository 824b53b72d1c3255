# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled graph kernels: all-pairs BFS and Brandes accumulation.

Contract-identical to ``_kernels_py``; see that module for semantics.
"""

import numpy as np


def hop_matrix(int[::1] indptr, int[::1] nbrs):
    cdef int n = indptr.shape[0] - 1
    out = np.full((n, n), -1, dtype=np.int32)
    cdef int[:, ::1] dist = out
    cdef int[::1] queue = np.empty(n, dtype=np.int32)
    cdef int s, v, w, i, head, tail, dv
    for s in range(n):
        head = 0
        tail = 0
        dist[s, s] = 0
        queue[tail] = s
        tail += 1
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[s, v] + 1
            for i in range(indptr[v], indptr[v + 1]):
                w = nbrs[i]
                if dist[s, w] < 0:
                    dist[s, w] = dv
                    queue[tail] = w
                    tail += 1
    return out


def sigma_matrix(int[::1] indptr, int[::1] nbrs):
    cdef int n = indptr.shape[0] - 1
    dist_arr = np.full((n, n), -1, dtype=np.int32)
    sigma_arr = np.zeros((n, n), dtype=np.float64)
    cdef int[:, ::1] dist = dist_arr
    cdef double[:, ::1] sigma = sigma_arr
    cdef int[::1] queue = np.empty(n, dtype=np.int32)
    cdef int s, v, w, i, head, tail, dv
    for s in range(n):
        head = 0
        tail = 0
        dist[s, s] = 0
        sigma[s, s] = 1.0
        queue[tail] = s
        tail += 1
        while head < tail:
            v = queue[head]
            head += 1
            dv = dist[s, v] + 1
            for i in range(indptr[v], indptr[v + 1]):
                w = nbrs[i]
                if dist[s, w] < 0:
                    dist[s, w] = dv
                    queue[tail] = w
                    tail += 1
                if dist[s, w] == dv:
                    sigma[s, w] += sigma[s, v]
    return dist_arr, sigma_arr


def brandes_nodes(int[::1] indptr, int[::1] nbrs):
    cdef int n = indptr.shape[0] - 1
    cdef int m = nbrs.shape[0]
    cb_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] cb = cb_arr
    cdef int[::1] queue = np.empty(n, dtype=np.int32)
    cdef int[::1] order = np.empty(n, dtype=np.int32)
    cdef int[::1] dist = np.empty(n, dtype=np.int32)
    cdef double[::1] sigma = np.empty(n, dtype=np.float64)
    cdef double[::1] delta = np.empty(n, dtype=np.float64)
    cdef int[::1] pred_head = np.empty(n, dtype=np.int32)
    cdef int[::1] pred_next = np.empty(max(m, 1), dtype=np.int32)
    cdef int[::1] entry_src = np.empty(max(m, 1), dtype=np.int32)
    cdef int s, v, w, i, j, head, tail, cnt, dv
    cdef double coeff
    for v in range(n):
        for i in range(indptr[v], indptr[v + 1]):
            entry_src[i] = v
    for s in range(n):
        for v in range(n):
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0
            pred_head[v] = -1
        dist[s] = 0
        sigma[s] = 1.0
        head = 0
        tail = 0
        cnt = 0
        queue[tail] = s
        tail += 1
        while head < tail:
            v = queue[head]
            head += 1
            order[cnt] = v
            cnt += 1
            dv = dist[v] + 1
            for i in range(indptr[v], indptr[v + 1]):
                w = nbrs[i]
                if dist[w] < 0:
                    dist[w] = dv
                    queue[tail] = w
                    tail += 1
                if dist[w] == dv:
                    sigma[w] += sigma[v]
                    # per-source predecessor chains over CSR entry indices;
                    # rebuilt each round via pred_head, so no reset needed
                    pred_next[i] = pred_head[w]
                    pred_head[w] = i
        for j in range(cnt - 1, 0, -1):
            w = order[j]
            coeff = (1.0 + delta[w]) / sigma[w]
            i = pred_head[w]
            while i != -1:
                v = entry_src[i]
                delta[v] += sigma[v] * coeff
                i = pred_next[i]
            cb[w] += delta[w]
    return cb_arr


def brandes_edges(int[::1] indptr, int[::1] nbrs, int[::1] eid, int n_edges):
    cdef int n = indptr.shape[0] - 1
    cdef int m = nbrs.shape[0]
    ce_arr = np.zeros(n_edges, dtype=np.float64)
    cdef double[::1] ce = ce_arr
    cdef int[::1] queue = np.empty(n, dtype=np.int32)
    cdef int[::1] order = np.empty(n, dtype=np.int32)
    cdef int[::1] dist = np.empty(n, dtype=np.int32)
    cdef double[::1] sigma = np.empty(n, dtype=np.float64)
    cdef double[::1] delta = np.empty(n, dtype=np.float64)
    cdef int[::1] pred_head = np.empty(n, dtype=np.int32)
    cdef int[::1] pred_next = np.empty(max(m, 1), dtype=np.int32)
    cdef int[::1] entry_src = np.empty(max(m, 1), dtype=np.int32)
    cdef int s, v, w, i, j, head, tail, cnt, dv
    cdef double coeff, contrib
    for v in range(n):
        for i in range(indptr[v], indptr[v + 1]):
            entry_src[i] = v
    for s in range(n):
        for v in range(n):
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0
            pred_head[v] = -1
        dist[s] = 0
        sigma[s] = 1.0
        head = 0
        tail = 0
        cnt = 0
        queue[tail] = s
        tail += 1
        while head < tail:
            v = queue[head]
            head += 1
            order[cnt] = v
            cnt += 1
            dv = dist[v] + 1
            for i in range(indptr[v], indptr[v + 1]):
                w = nbrs[i]
                if dist[w] < 0:
                    dist[w] = dv
                    queue[tail] = w
                    tail += 1
                if dist[w] == dv:
                    sigma[w] += sigma[v]
                    pred_next[i] = pred_head[w]
                    pred_head[w] = i
        for j in range(cnt - 1, 0, -1):
            w = order[j]
            coeff = (1.0 + delta[w]) / sigma[w]
            i = pred_head[w]
            while i != -1:
                v = entry_src[i]
                contrib = sigma[v] * coeff
                delta[v] += contrib
                ce[eid[i]] += contrib
                i = pred_next[i]
    return ce_arr
