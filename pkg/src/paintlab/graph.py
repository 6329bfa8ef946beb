"""Graph representation and seeded G(n,p) generation.

Two backends share one vertex/edge semantics:

* :class:`Graph` — materialized bitset adjacency (one uint64 row per vertex).
  Used for everything that plays games or runs solvers.  Capped at
  ``MATERIALIZE_MAX_N`` vertices (256 MB of adjacency words).
* :class:`LazyGnp` — a G(n,p) whose edges are evaluated on demand from the
  seeded coin stream, for vertex counts beyond the materialization cap.
  Supports edge queries, neighbourhoods, and induced subgraphs (which come
  back as materialized :class:`Graph` objects), but not whole-graph walks.

The edge set of ``gnp(n, p, seed)`` is defined by one Bernoulli coin per
vertex pair, indexed by the pair's upper-triangle counter (see
:mod:`paintlab.rng`).  Both backends therefore agree exactly, and the same
``(n, p, seed)`` always yields the same graph.  Generation cost is
Theta(n^2) coins; a geometric-skipping path for sparse p was considered and
rejected because float log calls would break bit-exact reproducibility
across platforms.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import _kernels
from .errors import ParameterError, ResourceCapError
from .rng import coin_threshold

MATERIALIZE_MAX_N = 46341


class ComponentClass(enum.Enum):
    """Connected-component shape: e = v-1, e = v, or e >= v+1."""

    TREE = "tree"
    UNICYCLIC = "unicyclic"
    COMPLEX = "complex"


def _classify_component(n_vertices: int, n_edges: int) -> ComponentClass:
    if n_edges == n_vertices - 1:
        return ComponentClass.TREE
    if n_edges == n_vertices:
        return ComponentClass.UNICYCLIC
    return ComponentClass.COMPLEX


def _as_vertex_array(S: Union[Sequence[int], np.ndarray]) -> np.ndarray:
    arr = np.asarray(list(S) if not isinstance(S, np.ndarray) else S, dtype=np.int64)
    return np.unique(arr)


@dataclass
class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    n: int
    words: np.ndarray  # (n, W) uint64 adjacency bitset
    m: int
    gen_p: Optional[float] = None
    gen_seed: Optional[int] = None
    _degrees: Optional[np.ndarray] = field(default=None, repr=False)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ParameterError("vertex count must be >= 0")
        W = max(1, (n + 63) // 64)
        words = np.zeros((max(n, 1), W), dtype=np.uint64)
        m = 0
        seen = set()
        for u, v in edges:
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u},{v}) outside 0..{n - 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                continue
            seen.add(key)
            words[u, v >> 6] |= np.uint64(1) << np.uint64(v & 63)
            words[v, u >> 6] |= np.uint64(1) << np.uint64(u & 63)
            m += 1
        return cls(n=n, words=words[:n] if n else words[:0], m=m)

    @classmethod
    def edgeless(cls, n: int) -> "Graph":
        return cls.from_edges(n, [])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ParameterError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    # -- queries ----------------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ParameterError(f"vertex pair ({u},{v}) outside graph")
        return bool((self.words[u, v >> 6] >> np.uint64(v & 63)) & np.uint64(1))

    def neighbors(self, v: int) -> np.ndarray:
        if not 0 <= v < self.n:
            raise ParameterError(f"vertex {v} outside graph")
        bits = np.unpackbits(self.words[v].view(np.uint8), bitorder="little")[: self.n]
        return np.nonzero(bits)[0].astype(np.int64)

    def degrees(self) -> np.ndarray:
        if self._degrees is None:
            object.__setattr__(self, "_degrees", _kernels.row_popcounts(self.words))
        return self._degrees

    def degree(self, v: int) -> int:
        return int(self.degrees()[v])

    def edges(self) -> np.ndarray:
        """All edges (u < v) in lexicographic order, shape (m, 2)."""
        if self.n == 0:
            return np.zeros((0, 2), dtype=np.int64)
        return _kernels.extract_edges(self.words)

    def is_independent(self, S) -> bool:
        S = _as_vertex_array(S)
        if len(S) and (S.min() < 0 or S.max() >= self.n):
            raise ParameterError("set contains unknown vertices")
        if len(S) <= 1:
            return True
        return bool(_kernels.is_independent_set(self.words, S))

    def induced_subgraph(self, S) -> tuple["Graph", np.ndarray]:
        """Subgraph on S; returns (graph, map) with map[i] = original id."""
        S = _as_vertex_array(S)
        if len(S) and (S.min() < 0 or S.max() >= self.n):
            raise ParameterError("set contains unknown vertices")
        if len(S) == 0:
            return Graph.edgeless(0), S
        words = _kernels.induced_adjacency(self.words, S)
        m = int(_kernels.row_popcounts(words).sum()) // 2
        return Graph(n=len(S), words=words, m=m), S

    def components(self) -> list[tuple[np.ndarray, ComponentClass]]:
        """Vertex sets of the connected components with their shape class."""
        out = []
        seen = np.zeros(self.n, dtype=bool)
        degs = self.degrees()
        for start in range(self.n):
            if seen[start]:
                continue
            comp = [start]
            seen[start] = True
            frontier = [start]
            while frontier:
                nxt = []
                for u in frontier:
                    for w in self.neighbors(u):
                        if not seen[w]:
                            seen[w] = True
                            nxt.append(int(w))
                comp.extend(nxt)
                frontier = nxt
            verts = np.array(sorted(comp), dtype=np.int64)
            n_edges = int(degs[verts].sum()) // 2
            out.append((verts, _classify_component(len(verts), n_edges)))
        return out

    def degree_split(self, threshold: int) -> tuple[np.ndarray, np.ndarray]:
        """(L, H) with L = vertices of degree < threshold, H = the rest."""
        if threshold < 0:
            raise ParameterError("threshold must be >= 0")
        degs = self.degrees()
        low = np.nonzero(degs < threshold)[0].astype(np.int64)
        high = np.nonzero(degs >= threshold)[0].astype(np.int64)
        return low, high

    def greedy_colouring(self, order) -> tuple[np.ndarray, int]:
        """Scan ``order``, giving each vertex the smallest colour absent
        among already-coloured neighbours.  Returns (colours, colour count)."""
        order = np.asarray(order, dtype=np.int64)
        if len(order) != self.n or len(np.unique(order)) != self.n or (
            self.n and (order.min() < 0 or order.max() >= self.n)
        ):
            raise ParameterError("order must be a permutation of the vertices")
        colours = np.full(self.n, -1, dtype=np.int64)
        for v in order:
            used = set(colours[w] for w in self.neighbors(v) if colours[w] >= 0)
            c = 0
            while c in used:
                c += 1
            colours[v] = c
        return colours, (int(colours.max()) + 1 if self.n else 0)

    # -- solver helpers ----------------------------------------------------

    def adj_masks(self) -> tuple[int, ...]:
        """Adjacency as Python int bitmasks (small graphs only)."""
        if self.n > 64:
            raise ResourceCapError("adjacency masks only supported for n <= 64")
        masks = []
        for v in range(self.n):
            acc = 0
            for w_idx in range(self.words.shape[1]):
                acc |= int(self.words[v, w_idx]) << (64 * w_idx)
            masks.append(acc)
        return tuple(masks)

    # -- serialization -----------------------------------------------------

    def to_edge_list_text(self) -> str:
        buf = io.StringIO()
        buf.write(f"{self.n} {self.m}\n")
        for u, v in self.edges():
            buf.write(f"{u} {v}\n")
        return buf.getvalue()

    @classmethod
    def from_edge_list_text(cls, text: str) -> "Graph":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ParameterError("empty edge-list text")
        head = lines[0].split()
        if len(head) != 2:
            raise ParameterError("first line must be 'n m'")
        n, m = int(head[0]), int(head[1])
        if len(lines) - 1 != m:
            raise ParameterError(f"expected {m} edge lines, found {len(lines) - 1}")
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ParameterError(f"bad edge line: {ln!r}")
            u, v = int(parts[0]), int(parts[1])
            if not u < v:
                raise ParameterError(f"edge lines require u < v, got {ln!r}")
            edges.append((u, v))
        g = cls.from_edges(n, edges)
        if g.m != m:
            raise ParameterError("duplicate edges in edge list")
        return g


class LazyGnp:
    """G(n, p) with on-demand edges, for n beyond the materialization cap.

    Same coin indexing as the materialized generator, so
    ``LazyGnp(n, p, seed)`` and ``gnp(n, p, seed)`` (when the latter is
    materialized) denote the identical graph.
    """

    def __init__(self, n: int, p: float, seed: int):
        if not 0.0 <= p <= 1.0:
            raise ParameterError("p must lie in [0, 1]")
        if n < 0:
            raise ParameterError("vertex count must be >= 0")
        self.n = n
        self.gen_p = p
        self.gen_seed = seed
        self._thr = np.uint64(coin_threshold(p))
        self._seed_u = np.uint64(seed & ((1 << 64) - 1))

    @property
    def m(self) -> None:
        # unknown without a full O(n^2) sweep; callers use gen_p instead
        return None

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ParameterError(f"vertex pair ({u},{v}) outside graph")
        lo, hi = (u, v) if u < v else (v, u)
        res = _kernels.pair_coins(
            self.n,
            np.array([lo], dtype=np.int64),
            np.array([hi], dtype=np.int64),
            self._thr,
            self._seed_u,
        )
        return bool(res[0])

    def neighbors(self, v: int) -> np.ndarray:
        if not 0 <= v < self.n:
            raise ParameterError(f"vertex {v} outside graph")
        row = _kernels.lazy_row(self.n, v, self._thr, self._seed_u)
        return np.nonzero(row)[0].astype(np.int64)

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def is_independent(self, S) -> bool:
        sub, _ = self.induced_subgraph(S)
        return sub.m == 0

    def induced_subgraph(self, S) -> tuple[Graph, np.ndarray]:
        S = _as_vertex_array(S)
        if len(S) and (S.min() < 0 or S.max() >= self.n):
            raise ParameterError("set contains unknown vertices")
        if len(S) > MATERIALIZE_MAX_N:
            raise ResourceCapError("induced set too large to materialize")
        if len(S) == 0:
            return Graph.edgeless(0), S
        words = _kernels.lazy_induced(self.n, S, self._thr, self._seed_u)
        m = int(_kernels.row_popcounts(words).sum()) // 2
        return Graph(n=len(S), words=words, m=m), S

    def components(self):
        raise ResourceCapError(
            "component decomposition requires a materialized graph "
            f"(n <= {MATERIALIZE_MAX_N})"
        )


GraphLike = Union[Graph, LazyGnp]


def gnp(n: int, p: float, seed: int) -> GraphLike:
    """Seeded binomial random graph: every pair is an edge with probability p.

    Deterministic in (n, p, seed).  Materialized up to ``MATERIALIZE_MAX_N``
    vertices, lazily evaluated above that.
    """
    if not 0.0 <= p <= 1.0:
        raise ParameterError("p must lie in [0, 1]")
    if n < 0:
        raise ParameterError("vertex count must be >= 0")
    if n > MATERIALIZE_MAX_N:
        return LazyGnp(n, p, seed)
    if n == 0:
        g = Graph.edgeless(0)
        g.gen_p, g.gen_seed = p, seed
        return g
    thr = np.uint64(coin_threshold(p))
    words = _kernels.gen_adjacency(n, thr, np.uint64(seed & ((1 << 64) - 1)))
    m = int(_kernels.row_popcounts(words).sum()) // 2
    return Graph(n=n, words=words, m=m, gen_p=p, gen_seed=seed)
