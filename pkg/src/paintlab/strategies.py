"""Corrector and painter strategies.

Correctors
----------
The density-regime correctors classify every presented set by size (small /
medium / large against the thresholds ``n*p/(omega*log^2 n)`` and
``n/(omega*log^2 n)``) and anchor their keep accordingly: large sets get a
randomized-greedy independent set aimed at the regime's target size, small
sets a single uniform vertex, medium sets a partition-based random draw.
The very-sparse corrector plays the guaranteed tree/unicyclic recursions on
the high-degree subgraph and greedy-maximal everywhere else.

Every corrector keeps two legality rules on top of its selection logic:
presented vertices with no erasers left are always kept first (the referee
accepts nothing else), and, with ``extend_maximal`` on (the default), the
keep is extended to a maximal independent subset of the presented set.
The bare single-vertex selections exist for their clean accounting, not as
good play; extension never hurts the accounting and avoids absurd keeps.

Painters
--------
Adversaries for the tournaments: the whole-set painter, a q-random painter,
an eraser-targeting painter, the list-assignment reduction painter, and the
solver-extracted optimal painter for small graphs.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import ParameterError
from .graph import ComponentClass, Graph
from .indsets import (
    find_independent_of_size,
    k0,
    medium_partition_dense,
    medium_partition_typed,
    type_weights,
)
from .rng import SplitStream, coin_threshold
from .solver import PaintSolver, OptimalCorrector, OptimalPainter


class Regime(enum.Enum):
    DENSE = "dense"
    SPARSE = "sparse"
    VERY_SPARSE = "very-sparse"


class SetClass(enum.Enum):
    SMALL = "small"
    MEDIUM = "medium"
    LARGE = "large"


@dataclass
class StrategyParams:
    """Concrete values for the constants the analysis leaves asymptotic."""

    regime: Regime = Regime.DENSE
    omega: Optional[float] = None          # default: max(1.5, log log n)
    epsilon: float = 0.1                   # greedy-bound slack, in (0,1)
    c: Optional[float] = None              # very-sparse density constant
    degree_threshold: Optional[int] = None  # default: auto (100*c^2)
    extraction_attempts: int = 8
    extend_maximal: bool = True            # grow keeps to maximal independent sets
    redraw_empty: bool = False             # re-draw empty group/type picks

    def __post_init__(self):
        if self.omega is not None and self.omega <= 0:
            raise ParameterError("omega must be > 0")
        if not 0.0 < self.epsilon < 1.0:
            raise ParameterError("epsilon must lie in (0, 1)")
        if self.c is not None and self.c < 0.99:
            raise ParameterError("c must be >= 0.99")
        if self.extraction_attempts < 1:
            raise ParameterError("extraction_attempts must be >= 1")

    def resolved_omega(self, n: int) -> float:
        if self.omega is not None:
            return self.omega
        # log log n, floored: log log n is <= 0 (or undefined) for n < 16
        return max(1.5, math.log(math.log(n))) if n >= 3 else 1.5


def classify_set(s: int, n: int, p: float, omega: float) -> SetClass:
    """Size class of a presented set; large is checked first on boundaries."""
    if s < 1:
        raise ParameterError("set size must be >= 1")
    if not 0.0 < p < 1.0:
        raise ParameterError("p must lie strictly between 0 and 1")
    if omega <= 0:
        raise ParameterError("omega must be > 0")
    if n < 2:
        raise ParameterError("classification needs n >= 2")
    denom = omega * math.log(n) ** 2
    if s >= n / denom:
        return SetClass.LARGE
    if s <= n * p / denom:
        return SetClass.SMALL
    return SetClass.MEDIUM


def _effective_p(graph) -> float:
    p = getattr(graph, "gen_p", None)
    if p is None:
        n = graph.n
        pairs = n * (n - 1) / 2
        p = (graph.m / pairs) if pairs > 0 and graph.m else 0.0
    return min(max(p, 1e-12), 1.0 - 1e-12)


# ---------------------------------------------------------------------------
# classify-and-anchor correctors (dense / sparse regimes)


class _ClassifyingCorrector:
    """Shared machinery: classify, anchor, zero-first legality, extension."""

    def __init__(self, graph: Graph, budget: int, seed: int, params: StrategyParams):
        self.graph = graph
        self.params = params
        self.stream = SplitStream(seed)
        self.n = graph.n
        self.p = _effective_p(graph)
        self.omega = params.resolved_omega(self.n)
        self.last_class: Optional[str] = None
        self.fallback_count = 0
        self.large_rounds = 0
        self.min_large_keep: Optional[int] = None
        self._scan_buf = np.zeros(max(self.n, 1), dtype=np.int64)

    # anchor selection is the regime-specific part
    def _anchor(self, S: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def respond(self, state) -> np.ndarray:
        S = np.asarray(state.pending, dtype=np.int64)
        zero = S[state.erasers[S] == 0]
        if self.n < 3:
            anchor = np.zeros(0, dtype=np.int64)
            self.last_class = "other"
        else:
            anchor = self._anchor(S)
        keep = self._finalize(S, zero, anchor)
        if self.last_class == "large":
            self.large_rounds += 1
            if self.min_large_keep is None or len(keep) < self.min_large_keep:
                self.min_large_keep = len(keep)
        return keep

    def _finalize(self, S, zero, anchor) -> np.ndarray:
        if len(zero):
            if len(anchor):
                blocked = _kernels.neighbourhood_union(self.graph.words, zero)
                words = blocked[anchor >> 6]
                hit = (words >> (anchor & 63).astype(np.uint64)) & np.uint64(1)
                anchor = anchor[(hit == 0) & ~np.isin(anchor, zero)]
            base = np.concatenate([zero, anchor])
        else:
            base = anchor
        if not self.params.extend_maximal:
            return base
        order = self.stream.shuffled(S)
        cnt = _kernels.greedy_extend(self.graph.words, order, base, 0, self._scan_buf)
        return self._scan_buf[:cnt].copy()

    # helpers shared by dense and sparse anchors
    def _uniform_vertex(self, S: np.ndarray) -> np.ndarray:
        return S[[self.stream.randrange(len(S))]]

    def _pick_part(self, parts: list[np.ndarray]) -> np.ndarray:
        if not parts:
            return np.zeros(0, dtype=np.int64)
        return parts[self.stream.randrange(len(parts))]


class DenseCorrector(_ClassifyingCorrector):
    """Large sets: extraction aimed at k0(n, p); medium sets: a fair coin
    between a uniform type-0 part and a uniform leftover vertex; small sets:
    one uniform vertex."""

    def __init__(self, graph, budget, seed, params):
        super().__init__(graph, budget, seed, params)
        target = k0(self.n, self.p) if self.n >= 2 else None
        if target is None:
            # finite-n fallback: the first-order value 2*log_b(np)
            npv = self.n * self.p
            if npv > 1.0:
                target = math.ceil(2.0 * math.log(npv) / -math.log1p(-self.p))
            else:
                target = 1
        self.large_target = max(1, target)

    def _anchor(self, S: np.ndarray) -> np.ndarray:
        cls = classify_set(len(S), self.n, self.p, self.omega)
        self.last_class = cls.value
        if cls is SetClass.LARGE:
            anchor, rep = find_independent_of_size(
                self.graph,
                S,
                self.large_target,
                max_attempts=self.params.extraction_attempts,
                seed=self.stream.u64(),
            )
            self.fallback_count += int(rep.fallback)
            return anchor
        if cls is SetClass.SMALL:
            return self._uniform_vertex(S)
        part = medium_partition_dense(
            self.graph,
            S,
            self.p,
            seed=self.stream.u64(),
            max_attempts=self.params.extraction_attempts,
        )
        self.fallback_count += int(part.fallback)
        for _ in range(8 if self.params.redraw_empty else 1):
            if self.stream.randrange(2) == 0:
                anchor = self._pick_part(part.parts_of_type(0))
            else:
                J = part.leftover
                anchor = J[[self.stream.randrange(len(J))]] if len(J) else np.zeros(0, np.int64)
            if len(anchor) or not self.params.redraw_empty:
                return anchor
        return anchor

    name = "dense"


class SparseCorrector(_ClassifyingCorrector):
    """Large sets: extraction aimed at the greedy floor
    eps*(1-eps)*log(np)/(3p); medium sets: one of three groups uniformly
    (type-0 parts / dyadic types weighted 1/i / leftover vertices)."""

    def __init__(self, graph, budget, seed, params):
        super().__init__(graph, budget, seed, params)
        eps = params.epsilon
        npv = self.n * self.p
        if npv > 1.0:
            self.large_target = max(
                1, math.ceil(eps * (1.0 - eps) * math.log(npv) / (3.0 * self.p))
            )
        else:
            self.large_target = 1

    def _anchor(self, S: np.ndarray) -> np.ndarray:
        cls = classify_set(len(S), self.n, self.p, self.omega)
        self.last_class = cls.value
        if cls is SetClass.LARGE:
            anchor, rep = find_independent_of_size(
                self.graph,
                S,
                self.large_target,
                max_attempts=self.params.extraction_attempts,
                seed=self.stream.u64(),
            )
            self.fallback_count += int(rep.fallback)
            return anchor
        if cls is SetClass.SMALL:
            return self._uniform_vertex(S)
        part = medium_partition_typed(
            self.graph,
            S,
            self.p,
            self.omega,
            seed=self.stream.u64(),
            max_attempts=self.params.extraction_attempts,
        )
        self.fallback_count += int(part.fallback)
        for _ in range(8 if self.params.redraw_empty else 1):
            anchor = self._draw_group(part)
            if len(anchor) or not self.params.redraw_empty:
                return anchor
        return anchor

    def _draw_group(self, part) -> np.ndarray:
        group = self.stream.randrange(3)
        if group == 0:
            return self._pick_part(part.parts_of_type(0))
        if group == 1:
            M = part.max_type
            if M < 1:
                return np.zeros(0, dtype=np.int64)
            q = type_weights(M)
            u = self.stream.uniform()
            i = int(np.searchsorted(np.cumsum(q), u, side="right")) + 1
            i = min(i, M)
            return self._pick_part(part.parts_of_type(i))
        J = part.leftover
        return J[[self.stream.randrange(len(J))]] if len(J) else np.zeros(0, np.int64)

    name = "sparse"


def dense_corrector(params: Optional[StrategyParams] = None) -> "CorrectorFactory":
    params = params or StrategyParams(regime=Regime.DENSE)
    if params.regime is not Regime.DENSE:
        raise ParameterError("dense_corrector requires the dense regime")
    return CorrectorFactory("dense", DenseCorrector, params)


def sparse_corrector(params: Optional[StrategyParams] = None) -> "CorrectorFactory":
    params = params or StrategyParams(regime=Regime.SPARSE)
    if params.regime is not Regime.SPARSE:
        raise ParameterError("sparse_corrector requires the sparse regime")
    return CorrectorFactory("sparse", SparseCorrector, params)


class CorrectorFactory:
    def __init__(self, name: str, cls, params: StrategyParams):
        self.name = name
        self._cls = cls
        self._params = params

    def build(self, graph, budget, seed):
        return self._cls(graph, budget, seed, self._params)


# ---------------------------------------------------------------------------
# tree / unicyclic recursions (guaranteed budgets 1 and 2)


class _TreePlan:
    """Leaf-elimination wrappers for one tree component.

    Peel leaves until one root remains; answering a presented set processes
    the wrappers inside-out: the root is always kept, and each leaf is kept
    unless its surviving parent was just kept, in which case it spends its
    one eraser and is simply kept the next time it appears.
    """

    def __init__(self, vertices: list[int], adj: dict[int, set[int]]):
        degree = {v: len(adj[v]) for v in vertices}
        alive = set(vertices)
        self.elim: list[tuple[int, int]] = []  # (leaf, parent), peel order
        while len(alive) > 1:
            leaf = min(v for v in alive if degree[v] <= 1)
            parent = next(iter(adj[leaf] & alive))
            self.elim.append((leaf, parent))
            alive.remove(leaf)
            degree[parent] -= 1
            adj_leaf = adj[leaf]
            adj_leaf.discard(parent)
        self.root = next(iter(alive))

    def keeps(self, present: set[int]) -> set[int]:
        I: set[int] = set()
        if self.root in present:
            I.add(self.root)
        for leaf, parent in reversed(self.elim):
            if leaf in present and parent not in I:
                I.add(leaf)
        return I


class _UnicyclicPlan:
    """Pendant trees wrap a cycle.  The first presented set that touches the
    cycle keeps one cycle vertex and spends one eraser on the other presented
    cycle vertices; the remaining path then runs the tree recursion with the
    second eraser."""

    def __init__(self, vertices: list[int], adj: dict[int, set[int]]):
        degree = {v: len(adj[v]) for v in vertices}
        alive = set(vertices)
        self.elim: list[tuple[int, int]] = []
        while True:
            leaves = [v for v in alive if degree[v] <= 1]
            if not leaves:
                break
            leaf = min(leaves)
            parent = next(iter(adj[leaf] & alive))
            self.elim.append((leaf, parent))
            alive.remove(leaf)
            degree[parent] -= 1
            adj[leaf].discard(parent)
        self.cycle = alive  # every survivor has degree 2: the unique cycle
        self._cycle_adj = {v: set(adj[v]) & alive for v in alive}
        self.broken = False
        self._path: Optional[_TreePlan] = None

    def keeps(self, present: set[int]) -> set[int]:
        I: set[int] = set()
        if not self.broken:
            on_cycle = present & self.cycle
            if on_cycle:
                z = min(on_cycle)
                I.add(z)
                self.broken = True
                path_adj = {
                    v: set(self._cycle_adj[v]) - {z} for v in self.cycle if v != z
                }
                path_vertices = [v for v in self.cycle if v != z]
                if path_vertices:
                    self._path = _TreePlan(path_vertices, path_adj)
        elif self._path is not None:
            I |= self._path.keeps(present & self.cycle)
        for leaf, parent in reversed(self.elim):
            if leaf in present and parent not in I:
                I.add(leaf)
        return I


def _component_adj(graph: Graph, verts: np.ndarray) -> dict[int, set[int]]:
    vs = set(int(v) for v in verts)
    return {v: set(int(w) for w in graph.neighbors(v)) & vs for v in vs}


class ComponentRecursionCorrector:
    """Per-component play: the tree recursion at one eraser, the unicyclic
    recursion at two.  Components that are neither (complex) fall back to
    zero-first greedy-maximal play when allowed."""

    def __init__(self, graph: Graph, budget, seed, allow_complex: bool, extend: bool):
        self.graph = graph
        self.stream = SplitStream(seed)
        self.plans = []
        self.fallback_count = 0
        self.last_class = None
        self._extend = extend
        self._scan_buf = np.zeros(max(graph.n, 1), dtype=np.int64)
        complex_members: set[int] = set()
        for verts, cls in graph.components():
            adj = _component_adj(graph, verts)
            if cls is ComponentClass.TREE:
                self.plans.append((_TreePlan([int(v) for v in verts], adj), set(int(v) for v in verts)))
            elif cls is ComponentClass.UNICYCLIC:
                self.plans.append((_UnicyclicPlan([int(v) for v in verts], adj), set(int(v) for v in verts)))
            elif allow_complex:
                complex_members |= set(int(v) for v in verts)
            else:
                raise ParameterError(
                    "component is neither a tree nor unicyclic"
                )
        self._complex = complex_members

    def respond(self, state) -> np.ndarray:
        S = np.asarray(state.pending, dtype=np.int64)
        sset = set(int(v) for v in S)
        keep: set[int] = set()
        for plan, members in self.plans:
            keep |= plan.keeps(sset & members)
        leftovers = self._complex & sset
        if leftovers or self._extend:
            zero = [v for v in leftovers if state.erasers[v] == 0]
            base_list = sorted(keep) + [v for v in sorted(zero) if v not in keep]
            base = np.array(base_list, dtype=np.int64)
            scan = S if self._extend else np.array(sorted(leftovers), dtype=np.int64)
            order = self.stream.shuffled(scan)
            cnt = _kernels.greedy_extend(self.graph.words, order, base, 0, self._scan_buf)
            return self._scan_buf[:cnt].copy()
        return np.array(sorted(keep), dtype=np.int64)


def tree_corrector(component: Graph) -> "CorrectorFactory":
    """Winning strategy for a single tree component at budget 1."""
    comps = component.components()
    if len(comps) != 1 or comps[0][1] is not ComponentClass.TREE:
        raise ParameterError("tree_corrector requires a connected tree")
    return _RecursionFactory("tree", allow_complex=False)


def unicyclic_corrector(component: Graph) -> "CorrectorFactory":
    """Winning strategy for a single unicyclic component at budget 2."""
    comps = component.components()
    if len(comps) != 1 or comps[0][1] is not ComponentClass.UNICYCLIC:
        raise ParameterError("unicyclic_corrector requires a connected unicyclic graph")
    return _RecursionFactory("tree", allow_complex=False)


class _RecursionFactory:
    def __init__(self, name: str, allow_complex: bool):
        self.name = name
        self._allow_complex = allow_complex

    def build(self, graph, budget, seed):
        return ComponentRecursionCorrector(
            graph, budget, seed, allow_complex=self._allow_complex, extend=False
        )


# ---------------------------------------------------------------------------
# very sparse regime


class VerySparseCorrector:
    """Optimal play on the high-degree subgraph, greedy-maximal extension
    over the whole presented set.

    The degree threshold defaults to 100*c^2 with c = max(0.99, n*p), except
    that a graph whose components are all trees or unicyclic is played with
    the guaranteed recursions directly (threshold 0): that is the regime the
    threshold exists to reach, and it makes budget 2 suffice deterministically.
    """

    name = "very-sparse"

    def __init__(self, graph: Graph, budget, seed, params: StrategyParams):
        self.graph = graph
        self.stream = SplitStream(seed)
        self.fallback_count = 0
        self.last_class = None
        self._scan_buf = np.zeros(max(graph.n, 1), dtype=np.int64)
        p = _effective_p(graph)
        threshold = params.degree_threshold
        if threshold is None:
            comps = graph.components()
            if all(c is not ComponentClass.COMPLEX for _, c in comps):
                threshold = 0
            else:
                c = params.c if params.c is not None else max(0.99, graph.n * p)
                threshold = math.ceil(100.0 * c * c)
        low, high = graph.degree_split(threshold)
        self._high_set = set(int(v) for v in high)
        self.plans = []
        if len(high):
            sub, mapping = graph.induced_subgraph(high)
            for verts, cls in sub.components():
                original = [int(mapping[v]) for v in verts]
                adj = {
                    int(mapping[v]): set(int(mapping[w]) for w in sub.neighbors(v))
                    for v in verts
                }
                if cls is ComponentClass.TREE:
                    self.plans.append((_TreePlan(original, adj), set(original)))
                elif cls is ComponentClass.UNICYCLIC:
                    self.plans.append((_UnicyclicPlan(original, adj), set(original)))
                else:
                    raise ParameterError(
                        "high-degree subgraph contains a complex component; "
                        "the tree/unicyclic recursion does not apply"
                    )

    def respond(self, state) -> np.ndarray:
        S = np.asarray(state.pending, dtype=np.int64)
        sset = set(int(v) for v in S)
        keep: set[int] = set()
        for plan, members in self.plans:
            keep |= plan.keeps(sset & members)
        zero = S[state.erasers[S] == 0]
        base_list = sorted(keep)
        if len(zero):
            kept_arr = np.array(base_list, dtype=np.int64)
            if len(kept_arr):
                blocked = _kernels.neighbourhood_union(self.graph.words, kept_arr)
                ok = (
                    (blocked[zero >> 6] >> (zero & 63).astype(np.uint64))
                    & np.uint64(1)
                ) == 0
                extra = zero[ok & ~np.isin(zero, kept_arr)]
            else:
                extra = zero
            base_list = sorted(set(base_list) | set(int(v) for v in extra))
        base = np.array(base_list, dtype=np.int64)
        order = self.stream.shuffled(S)
        cnt = _kernels.greedy_extend(self.graph.words, order, base, 0, self._scan_buf)
        return self._scan_buf[:cnt].copy()


def very_sparse_corrector(params: Optional[StrategyParams] = None) -> CorrectorFactory:
    params = params or StrategyParams(regime=Regime.VERY_SPARSE)
    if params.regime is not Regime.VERY_SPARSE:
        raise ParameterError("very_sparse_corrector requires the very-sparse regime")
    return CorrectorFactory("very-sparse", VerySparseCorrector, params)


class MaximalISCorrector:
    """Zero-eraser vertices first, then greedy-maximal in seeded order."""

    name = "maximal-is"

    def __init__(self, graph: Graph, budget, seed):
        self.graph = graph
        self.stream = SplitStream(seed)
        self.last_class = None
        self.fallback_count = 0
        self._scan_buf = np.zeros(max(graph.n, 1), dtype=np.int64)

    def respond(self, state) -> np.ndarray:
        S = np.asarray(state.pending, dtype=np.int64)
        zero = np.sort(S[state.erasers[S] == 0])
        order = self.stream.shuffled(S)
        cnt = _kernels.greedy_extend(self.graph.words, order, zero, 0, self._scan_buf)
        return self._scan_buf[:cnt].copy()


class _SimpleCorrectorFactory:
    def __init__(self, name, cls):
        self.name = name
        self._cls = cls

    def build(self, graph, budget, seed):
        return self._cls(graph, budget, seed)


def maximal_is_corrector() -> _SimpleCorrectorFactory:
    return _SimpleCorrectorFactory("maximal-is", MaximalISCorrector)


# ---------------------------------------------------------------------------
# painters


class FullSetPainter:
    name = "full-set"

    def build(self, graph, budget, seed):
        return self

    def propose(self, state) -> np.ndarray:
        return state.remaining_vertices()


def full_set_painter() -> FullSetPainter:
    return FullSetPainter()


class _RandomPainterInstance:
    def __init__(self, q: float, seed: int):
        self._thr = np.uint64(coin_threshold(q))
        self.stream = SplitStream(seed)

    def propose(self, state) -> np.ndarray:
        rem = state.remaining_vertices()
        while True:
            coins = (self.stream.u64_block(len(rem)) >> np.uint64(11)) < self._thr
            if coins.any():
                return rem[coins]


class RandomPainterFactory:
    def __init__(self, q: float, seed: Optional[int] = None):
        if not 0.0 < q <= 1.0:
            raise ParameterError("random painter needs q in (0, 1]")
        self.q = q
        self.name = f"random:{q:g}"
        self._seed_override = seed

    def build(self, graph, budget, seed):
        return _RandomPainterInstance(
            self.q, seed if self._seed_override is None else self._seed_override
        )


def random_painter(q: float, seed: Optional[int] = None) -> RandomPainterFactory:
    return RandomPainterFactory(q, seed)


class _LowEraserInstance:
    """Hunts the losing condition: an adjacent pair with no erasers left is
    presented alone; otherwise the minimum-eraser vertices come with all
    their surviving neighbours."""

    def __init__(self, graph: Graph, seed: int):
        self.graph = graph
        self.stream = SplitStream(seed)

    def propose(self, state) -> np.ndarray:
        rem = state.remaining_vertices()
        er = state.erasers[rem]
        zeros = rem[er == 0]
        if len(zeros) >= 2:
            pairs = []
            zset = np.sort(zeros)
            for v in zset:
                row = self.graph.words[int(v)]
                hits = (
                    (row[zset >> 6] >> (zset & 63).astype(np.uint64)) & np.uint64(1)
                ) != 0
                partners = zset[hits]
                if len(partners):
                    pairs.append((int(v), int(partners[0])))
            if pairs:
                v, u = pairs[self.stream.randrange(len(pairs))]
                return np.array(sorted((v, u)), dtype=np.int64)
        low = rem[er == er.min()]
        hood = _kernels.neighbourhood_union(self.graph.words, low)
        in_hood = (
            (hood[rem >> 6] >> (rem & 63).astype(np.uint64)) & np.uint64(1)
        ) != 0
        return np.union1d(low, rem[in_hood])


class LowEraserPainterFactory:
    name = "low-eraser"

    def __init__(self, seed: Optional[int] = None):
        self._seed_override = seed

    def build(self, graph, budget, seed):
        return _LowEraserInstance(
            graph, seed if self._seed_override is None else self._seed_override
        )


def low_eraser_painter(seed: Optional[int] = None) -> LowEraserPainterFactory:
    return LowEraserPainterFactory(seed)


class _ListAdversaryInstance:
    def __init__(self, lists: dict[int, frozenset]):
        self.lists = lists
        colours = sorted(set().union(*lists.values()))
        self.colours = colours
        self.idx = 0

    def propose(self, state) -> np.ndarray:
        rem = state.remaining_vertices()
        rem_set = set(int(v) for v in rem)
        while self.idx < len(self.colours):
            colour = self.colours[self.idx]
            self.idx += 1
            cls = [v for v in rem_set if colour in self.lists[v]]
            if cls:
                return np.array(sorted(cls), dtype=np.int64)
        # out of colours: resign (the referee records the forfeit)
        return np.zeros(0, dtype=np.int64)


class ListAdversaryFactory:
    name = "list"

    def __init__(self, lists: dict[int, frozenset]):
        if not lists or any(len(v) == 0 for v in lists.values()):
            raise ParameterError("every vertex needs a nonempty colour list")
        self.lists = {int(k): frozenset(v) for k, v in lists.items()}

    def build(self, graph, budget, seed):
        if set(self.lists.keys()) != set(range(graph.n)):
            raise ParameterError("lists must cover exactly the graph's vertices")
        return _ListAdversaryInstance(self.lists)


def list_adversary_painter(lists: dict[int, frozenset]) -> ListAdversaryFactory:
    """Painter realizing a list assignment: colours in sorted order, round i
    presents the remaining vertices holding colour i."""
    return ListAdversaryFactory(lists)


class _LazyOptimalPainterFactory:
    """Solves each game's graph on demand (solver caps apply).  Unlike the
    solver-level factory this one is total: at paintable positions it probes
    and punishes mistakes, rather than refusing to play."""

    name = "optimal"

    def build(self, graph, budget, seed):
        return OptimalPainter(PaintSolver(graph), seed)


class _LazyOptimalCorrectorFactory:
    name = "optimal"

    def build(self, graph, budget, seed):
        return OptimalCorrector(PaintSolver(graph))


# ---------------------------------------------------------------------------
# registry


def make_painter(spec: str, lists_path: Optional[str] = None):
    """Resolve a painter registry string: full-set, random:q, low-eraser,
    list:<file>, optimal."""
    if spec == "full-set":
        return full_set_painter()
    if spec.startswith("random:"):
        try:
            q = float(spec.split(":", 1)[1])
        except ValueError as exc:
            raise ParameterError(f"bad random painter spec {spec!r}") from exc
        return random_painter(q)
    if spec == "low-eraser":
        return low_eraser_painter()
    if spec.startswith("list:") or spec == "list":
        path = spec.split(":", 1)[1] if ":" in spec else lists_path
        if not path:
            raise ParameterError("list painter needs a JSON file path")
        with open(path) as fh:
            raw = json.load(fh)
        lists = {int(k): frozenset(v) for k, v in raw.items()}
        return list_adversary_painter(lists)
    if spec == "optimal":
        return _LazyOptimalPainterFactory()
    raise ParameterError(f"unknown painter {spec!r}")


def make_corrector(spec: str, params: Optional[StrategyParams] = None):
    """Resolve a corrector registry string: dense, sparse, very-sparse,
    tree, maximal-is, optimal."""
    if spec == "dense":
        p = params or StrategyParams(regime=Regime.DENSE)
        return dense_corrector(p)
    if spec == "sparse":
        p = params or StrategyParams(regime=Regime.SPARSE)
        return sparse_corrector(p)
    if spec == "very-sparse":
        p = params or StrategyParams(regime=Regime.VERY_SPARSE)
        return very_sparse_corrector(p)
    if spec == "tree":
        return _RecursionFactory("tree", allow_complex=True)
    if spec == "maximal-is":
        return maximal_is_corrector()
    if spec == "optimal":
        return _LazyOptimalCorrectorFactory()
    raise ParameterError(f"unknown corrector {spec!r}")


CORRECTOR_NAMES = ("dense", "sparse", "very-sparse", "tree", "maximal-is", "optimal")
PAINTER_NAMES = ("full-set", "random:<q>", "low-eraser", "list:<file>", "optimal")
