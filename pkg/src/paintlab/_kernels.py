"""Numba kernels for the bitset graph representation.

Adjacency is a row-major matrix of uint64 words, one row per vertex,
bit ``v`` of row ``u`` set iff ``uv`` is an edge.  The G(n,p) coin for the
pair ``u < v`` sits at stream counter ``tri(u, v) = u*n - u*(u+1)/2 + (v-u-1)``
(row-major upper-triangle index) of the graph seed; see :mod:`paintlab.rng`
for the stream definition.
"""

from __future__ import annotations

import numpy as np
from numba import njit

U64 = np.uint64
_PHI = U64(0x9E3779B97F4A7C15)
_M1 = U64(0xBF58476D1CE4E5B9)
_M2 = U64(0x94D049BB133111EB)


@njit(cache=True, inline="always")
def _out_at(seed, ctr):
    # stream_at(seed, ctr) with ctr already offset by +1 by the caller
    x = (seed + ctr) * _PHI
    x = (x ^ (x >> U64(30))) * _M1
    x = (x ^ (x >> U64(27))) * _M2
    return x ^ (x >> U64(31))


@njit(cache=True)
def gen_adjacency(n, thr, seed):
    """Full bitset adjacency of G(n, p), coins in upper-triangle order."""
    W = (n + 63) // 64
    adj = np.zeros((n, W), dtype=np.uint64)
    ctr = U64(1)
    one = U64(1)
    for u in range(n):
        for v in range(u + 1, n):
            x = _out_at(seed, ctr)
            ctr += one
            if (x >> U64(11)) < thr:
                adj[u, v >> 6] |= one << U64(v & 63)
                adj[v, u >> 6] |= one << U64(u & 63)
    return adj


@njit(cache=True)
def pair_coins(n, us, vs, thr, seed):
    """Coins for explicit pairs (us[i] < vs[i]) of an n-vertex G(n,p)."""
    m = us.shape[0]
    out = np.zeros(m, dtype=np.bool_)
    nn = U64(n)
    one = U64(1)
    for i in range(m):
        u = U64(us[i])
        v = U64(vs[i])
        t = u * nn - (u * (u + one)) // U64(2) + (v - u - one)
        x = _out_at(seed, t + one)
        out[i] = (x >> U64(11)) < thr
    return out


@njit(cache=True)
def lazy_row(n, v, thr, seed):
    """Neighbour indicator row of vertex v in a lazily evaluated G(n,p)."""
    out = np.zeros(n, dtype=np.bool_)
    nn = U64(n)
    one = U64(1)
    vv = U64(v)
    for j in range(n):
        if j == v:
            continue
        u = U64(j) if j < v else vv
        w = vv if j < v else U64(j)
        t = u * nn - (u * (u + one)) // U64(2) + (w - u - one)
        x = _out_at(seed, t + one)
        out[j] = (x >> U64(11)) < thr
    return out


@njit(cache=True)
def lazy_induced(n, verts, thr, seed):
    """Bitset adjacency of the subgraph induced on ``verts`` of a lazy G(n,p)."""
    k = verts.shape[0]
    W = (k + 63) // 64
    adj = np.zeros((k, W), dtype=np.uint64)
    nn = U64(n)
    one = U64(1)
    for i in range(k):
        for j in range(i + 1, k):
            a = verts[i]
            b = verts[j]
            u = U64(min(a, b))
            w = U64(max(a, b))
            t = u * nn - (u * (u + one)) // U64(2) + (w - u - one)
            x = _out_at(seed, t + one)
            if (x >> U64(11)) < thr:
                adj[i, j >> 6] |= one << U64(j & 63)
                adj[j, i >> 6] |= one << U64(i & 63)
    return adj


@njit(cache=True)
def induced_adjacency(adj, verts):
    """Bitset adjacency of the subgraph induced on ``verts`` (local labels)."""
    k = verts.shape[0]
    W = (k + 63) // 64
    out = np.zeros((k, W), dtype=np.uint64)
    one = U64(1)
    for i in range(k):
        u = verts[i]
        for j in range(i + 1, k):
            v = verts[j]
            if (adj[u, v >> 6] >> U64(v & 63)) & one:
                out[i, j >> 6] |= one << U64(j & 63)
                out[j, i >> 6] |= one << U64(i & 63)
    return out


@njit(cache=True)
def greedy_extend(adj, order, base, target, out):
    """Greedy independent set: keep ``base``, scan ``order``, add fresh
    vertices with no kept neighbour.  Stops once ``target`` vertices are kept
    (``target <= 0`` means no cap).  Returns the kept count; kept vertices are
    written to ``out`` (base first, then additions in scan order)."""
    W = adj.shape[1]
    forb = np.zeros(W, dtype=np.uint64)
    memb = np.zeros(W, dtype=np.uint64)
    one = U64(1)
    cnt = 0
    for i in range(base.shape[0]):
        b = base[i]
        out[cnt] = b
        cnt += 1
        memb[b >> 6] |= one << U64(b & 63)
        for w in range(W):
            forb[w] |= adj[b, w]
    if target > 0 and cnt >= target:
        return cnt
    for i in range(order.shape[0]):
        v = order[i]
        if (memb[v >> 6] >> U64(v & 63)) & one:
            continue
        if (forb[v >> 6] >> U64(v & 63)) & one:
            continue
        out[cnt] = v
        cnt += 1
        memb[v >> 6] |= one << U64(v & 63)
        for w in range(W):
            forb[w] |= adj[v, w]
        if target > 0 and cnt >= target:
            return cnt
    return cnt


@njit(cache=True)
def is_independent_set(adj, verts):
    """True iff no edge of the bitset graph joins two vertices of ``verts``."""
    W = adj.shape[1]
    memb = np.zeros(W, dtype=np.uint64)
    one = U64(1)
    for i in range(verts.shape[0]):
        v = verts[i]
        memb[v >> 6] |= one << U64(v & 63)
    for i in range(verts.shape[0]):
        v = verts[i]
        for w in range(W):
            if adj[v, w] & memb[w]:
                return False
    return True


@njit(cache=True)
def neighbourhood_union(adj, verts):
    """Bitset union of the neighbourhoods of ``verts``."""
    W = adj.shape[1]
    acc = np.zeros(W, dtype=np.uint64)
    for i in range(verts.shape[0]):
        v = verts[i]
        for w in range(W):
            acc[w] |= adj[v, w]
    return acc


@njit(cache=True)
def row_popcounts(adj):
    """Degree of every vertex (SWAR popcount per row)."""
    n, W = adj.shape
    out = np.zeros(n, dtype=np.int64)
    m1 = U64(0x5555555555555555)
    m2 = U64(0x3333333333333333)
    m4 = U64(0x0F0F0F0F0F0F0F0F)
    h0 = U64(0x0101010101010101)
    for u in range(n):
        acc = U64(0)
        for w in range(W):
            x = adj[u, w]
            x = x - ((x >> U64(1)) & m1)
            x = (x & m2) + ((x >> U64(2)) & m2)
            x = (x + (x >> U64(4))) & m4
            acc += (x * h0) >> U64(56)
        out[u] = acc
    return out


@njit(cache=True)
def extract_edges(adj):
    """Edge list (u < v) in lexicographic order, shape (m, 2)."""
    n, W = adj.shape
    one = U64(1)
    m = 0
    for u in range(n):
        for v in range(u + 1, n):
            if (adj[u, v >> 6] >> U64(v & 63)) & one:
                m += 1
    out = np.zeros((m, 2), dtype=np.int64)
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            if (adj[u, v >> 6] >> U64(v & 63)) & one:
                out[k, 0] = u
                out[k, 1] = v
                k += 1
    return out
