"""Exhaustive enumeration of small graphs up to isomorphism.

Trees are grown by leaf attachment and deduplicated with the classic
rooted-at-centre canonical encoding.  Unicyclic graphs come from adding one
non-edge to each tree, deduplicated by pairwise isomorphism inside invariant
buckets (cheap at these sizes).
"""

from __future__ import annotations

from itertools import permutations

from .graph import Graph


def _tree_canonical(n: int, adj: list[set[int]]) -> str:
    """AHU canonical string, rooted at the centre (or the better of two)."""

    def encode(root: int, parent: int) -> str:
        subs = sorted(encode(w, root) for w in adj[root] if w != parent)
        return "(" + "".join(subs) + ")"

    if n == 1:
        return "()"
    # peel leaves to find the centre(s)
    degree = [len(adj[v]) for v in range(n)]
    layer = [v for v in range(n) if degree[v] <= 1]
    removed = 0
    alive = [True] * n
    while n - removed > 2:
        nxt = []
        for v in layer:
            alive[v] = False
            removed += 1
            for w in adj[v]:
                if alive[w]:
                    degree[w] -= 1
                    if degree[w] == 1:
                        nxt.append(w)
        layer = nxt
    centres = [v for v in range(n) if alive[v]]
    return min(encode(c, -1) for c in centres)


def _adj_sets(g: Graph) -> list[set[int]]:
    return [set(int(w) for w in g.neighbors(v)) for v in range(g.n)]


def enumerate_trees(n: int) -> list[Graph]:
    """All non-isomorphic trees on n vertices."""
    if n < 1:
        return []
    current: dict[str, list[tuple[int, int]]] = {"()": []}
    for size in range(2, n + 1):
        grown: dict[str, list[tuple[int, int]]] = {}
        for edges in current.values():
            for attach in range(size - 1):
                new_edges = edges + [(attach, size - 1)]
                adj = [set() for _ in range(size)]
                for u, v in new_edges:
                    adj[u].add(v)
                    adj[v].add(u)
                key = _tree_canonical(size, adj)
                if key not in grown:
                    grown[key] = new_edges
        current = grown
    return [Graph.from_edges(n, edges) for edges in current.values()]


def _invariant(g: Graph) -> tuple:
    degs = sorted(int(d) for d in g.degrees())
    # neighbour-degree multisets, sorted, as a second-order refinement
    nd = sorted(
        tuple(sorted(int(g.degree(int(w))) for w in g.neighbors(v)))
        for v in range(g.n)
    )
    return g.n, g.m, tuple(degs), tuple(nd)


def _isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    am, bm = a.adj_masks(), b.adj_masks()
    deg_a = [bin(x).count("1") for x in am]
    deg_b = [bin(x).count("1") for x in bm]
    if sorted(deg_a) != sorted(deg_b):
        return False
    n = a.n

    cand = [
        [u for u in range(n) if deg_b[u] == deg_a[v]]
        for v in range(n)
    ]
    mapping = [-1] * n
    used = [False] * n

    def rec(v: int) -> bool:
        if v == n:
            return True
        for u in cand[v]:
            if used[u]:
                continue
            ok = True
            for w in range(v):
                if bool(am[v] >> w & 1) != bool(bm[u] >> mapping[w] & 1):
                    ok = False
                    break
            if ok:
                mapping[v] = u
                used[u] = True
                if rec(v + 1):
                    return True
                used[u] = False
        return False

    return rec(0)


def enumerate_unicyclic(n: int) -> list[Graph]:
    """All non-isomorphic connected unicyclic graphs on n vertices."""
    if n < 3:
        return []
    buckets: dict[tuple, list[Graph]] = {}
    for tree in enumerate_trees(n):
        present = {(int(u), int(v)) for u, v in tree.edges()}
        for u in range(n):
            for v in range(u + 1, n):
                if (u, v) in present:
                    continue
                g = Graph.from_edges(n, list(present) + [(u, v)])
                key = _invariant(g)
                bucket = buckets.setdefault(key, [])
                if not any(_isomorphic(g, h) for h in bucket):
                    bucket.append(g)
    return [g for bucket in buckets.values() for g in bucket]


def random_graph_sample(n: int, p: float, seed: int) -> Graph:
    """Small labelled G(n,p) sample off the shared coin stream."""
    from .graph import gnp

    g = gnp(n, p, seed)
    assert isinstance(g, Graph)
    return g
