"""Exact solvers for small graphs: chromatic number, choosability, and
paintability, plus optimal-strategy extraction from the paintability
game tree.

The paintability recursion follows the game: a position is a set of
uncoloured vertices plus their eraser counts; it is winning for the
corrector iff for every nonempty presented subset S there is an independent
keep I (containing every zero-eraser vertex of S) whose successor position
is winning.  Positions are memoized on (remaining bitmask, eraser vector)
and split across connected components, which is what makes trees and
endgames cheap.  Everything here is deliberately bounded by hard caps;
larger graphs belong to the strategy simulations, not the solver.
"""

from __future__ import annotations

import math
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import ParameterError, ResourceCapError, StateError
from .graph import Graph
from .rng import SplitStream

PAINTABILITY_CAP = 10
CHROMATIC_CAP = 20
CHOOSABLE_N_CAP = 6
CHOOSABLE_K_CAP = 3


# ---------------------------------------------------------------------------
# chromatic number


def chromatic_number(g: Graph, cap: int = CHROMATIC_CAP) -> int:
    """Exact chi(G) by branch and bound (clique bound + k-colour search)."""
    if g.n > cap:
        raise ResourceCapError(f"chromatic_number capped at {cap} vertices")
    if g.n == 0:
        return 0
    best = 1
    for verts, _cls in g.components():
        sub, _ = g.induced_subgraph(verts)
        best = max(best, _chromatic_connected(sub))
    return best


def _chromatic_connected(g: Graph) -> int:
    n = g.n
    adj = g.adj_masks()
    order = sorted(range(n), key=lambda v: -bin(adj[v]).count("1"))
    lb = _greedy_clique(adj, order)
    ub = _greedy_colour_count(adj, order)
    if lb == ub:
        return lb
    for k in range(lb, ub):
        if _k_colourable(adj, order, k):
            return k
    return ub


def _greedy_clique(adj: Sequence[int], order: Sequence[int]) -> int:
    clique: list[int] = []
    for v in order:
        if all(adj[v] >> u & 1 for u in clique):
            clique.append(v)
    return len(clique)


def _greedy_colour_count(adj: Sequence[int], order: Sequence[int]) -> int:
    colours: dict[int, int] = {}
    count = 0
    for v in order:
        used = {colours[u] for u in colours if adj[v] >> u & 1}
        c = 0
        while c in used:
            c += 1
        colours[v] = c
        count = max(count, c + 1)
    return count


def _k_colourable(adj: Sequence[int], order: Sequence[int], k: int) -> bool:
    n = len(order)
    colours = [-1] * len(adj)

    def rec(i: int, used: int) -> bool:
        if i == n:
            return True
        v = order[i]
        banned = 0
        for u in range(len(adj)):
            if adj[v] >> u & 1 and colours[u] >= 0:
                banned |= 1 << colours[u]
        limit = min(k, used + 1)  # at most one brand-new colour (symmetry)
        for c in range(limit):
            if banned >> c & 1:
                continue
            colours[v] = c
            if rec(i + 1, max(used, c + 1)):
                return True
        colours[v] = -1
        return False

    return rec(0, 0)


# ---------------------------------------------------------------------------
# paintability

EraserVector = Union[int, Sequence[int]]


def _eraser_tuple(g: Graph, erasers: EraserVector) -> tuple[int, ...]:
    if isinstance(erasers, (int, np.integer)):
        vec = (int(erasers),) * g.n
    else:
        vec = tuple(int(x) for x in erasers)
    if len(vec) != g.n:
        raise ParameterError("eraser vector length must equal the vertex count")
    if any(e < 0 for e in vec):
        raise ParameterError("eraser counts must be >= 0")
    return vec


class PaintSolver:
    """Memoized game-tree solver for one graph."""

    def __init__(self, g: Graph, cap: int = PAINTABILITY_CAP):
        if g.n > cap:
            raise ResourceCapError(
                f"paintability solver capped at {cap} vertices (got {g.n})"
            )
        self.n = g.n
        self.adj = g.adj_masks() if g.n else ()
        self.full = (1 << g.n) - 1
        self._memo: dict[tuple[int, tuple[int, ...]], bool] = {}
        self._submask_cache: dict[int, list[int]] = {}

    # -- public ------------------------------------------------------------

    def paintable(self, mask: int, er: tuple[int, ...]) -> bool:
        return self._paintable(mask, self._restrict(er, mask))

    def winning_present(self, mask: int, er: tuple[int, ...]) -> Optional[int]:
        """A presented set against which every legal keep loses, if one exists."""
        er = self._restrict(er, mask)
        if self._paintable(mask, er):
            return None
        for S in self._submasks_desc(mask):
            if not any(
                self._paintable(mask & ~I, self._decremented(er, mask & ~I, S & ~I))
                for I in self._keeps(S, er)
            ):
                return S
        raise StateError("unpaintable position without a winning presented set")

    def winning_keep(self, mask: int, er: tuple[int, ...], S: int) -> Optional[int]:
        """A keep whose successor position stays winning, if one exists."""
        er = self._restrict(er, mask)
        for I in self._keeps(S, er):
            if self._paintable(mask & ~I, self._decremented(er, mask & ~I, S & ~I)):
                return I
        return None

    # -- internals -----------------------------------------------------------

    def _restrict(self, er: tuple[int, ...], mask: int) -> tuple[int, ...]:
        return tuple(er[v] if mask >> v & 1 else 0 for v in range(self.n))

    def _decremented(self, er: tuple[int, ...], newmask: int, erased: int) -> tuple[int, ...]:
        return tuple(
            (er[v] - 1 if erased >> v & 1 else er[v]) if newmask >> v & 1 else 0
            for v in range(self.n)
        )

    def _components(self, mask: int) -> list[int]:
        comps = []
        rem = mask
        while rem:
            comp = rem & -rem
            frontier = comp
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    b = f & -f
                    f ^= b
                    nxt |= self.adj[b.bit_length() - 1] & mask
                nxt &= ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            rem &= ~comp
        return comps

    def _submasks_desc(self, mask: int) -> list[int]:
        cached = self._submask_cache.get(mask)
        if cached is None:
            subs = []
            s = mask
            while s:
                subs.append(s)
                s = (s - 1) & mask
            subs.sort(key=lambda x: (-bin(x).count("1"), x))
            self._submask_cache[mask] = cached = subs
        return cached

    def _keeps(self, S: int, er: tuple[int, ...]):
        """Legal keeps for presented set S: independent, containing every
        zero-eraser vertex.  Empty iff the zero-eraser set is dependent."""
        zmask = 0
        m = S
        while m:
            b = m & -m
            m ^= b
            if er[b.bit_length() - 1] == 0:
                zmask |= b
        nz = 0
        m = zmask
        while m:
            b = m & -m
            m ^= b
            v = b.bit_length() - 1
            if self.adj[v] & zmask:
                return  # two exhausted vertices are adjacent: no legal keep
            nz |= self.adj[v]
        cand = S & ~zmask & ~nz

        def rec(c: int, acc: int):
            if c == 0:
                yield acc
                return
            b = c & -c
            v = b.bit_length() - 1
            yield from rec(c & ~b & ~self.adj[v], acc | b)
            yield from rec(c ^ b, acc)

        yield from rec(cand, zmask)

    def _paintable(self, mask: int, er: tuple[int, ...]) -> bool:
        if mask == 0:
            return True
        key = (mask, er)
        hit = self._memo.get(key)
        if hit is not None:
            return hit

        # adjacent pair with no erasers left: painter presents exactly that pair
        zmask = 0
        m = mask
        while m:
            b = m & -m
            m ^= b
            if er[b.bit_length() - 1] == 0:
                zmask |= b
        m = zmask
        dead = False
        while m:
            b = m & -m
            m ^= b
            if self.adj[b.bit_length() - 1] & zmask:
                dead = True
                break
        if dead:
            self._memo[key] = False
            return False

        # defensive-play bound: with erasers >= remaining degree everywhere,
        # keeping a maximal independent set each round never runs dry
        safe = True
        m = mask
        while m:
            b = m & -m
            m ^= b
            v = b.bit_length() - 1
            if er[v] < bin(self.adj[v] & mask).count("1"):
                safe = False
                break
        if safe:
            self._memo[key] = True
            return True

        comps = self._components(mask)
        if len(comps) > 1:
            result = all(self._paintable(c, self._restrict(er, c)) for c in comps)
            self._memo[key] = result
            return result

        result = True
        for S in self._submasks_desc(mask):
            ok = False
            for I in self._keeps(S, er):
                newmask = mask & ~I
                if self._paintable(newmask, self._decremented(er, newmask, S & ~I)):
                    ok = True
                    break
            if not ok:
                result = False
                break
        self._memo[key] = result
        return result


def is_paintable(g: Graph, erasers: EraserVector, cap: int = PAINTABILITY_CAP) -> bool:
    """True iff the corrector wins under optimal play with the given
    per-vertex eraser counts."""
    vec = _eraser_tuple(g, erasers)
    solver = PaintSolver(g, cap=cap)
    return solver.paintable(solver.full, vec)


def paintability(g: Graph, cap: int = PAINTABILITY_CAP) -> int:
    """Smallest k such that the graph is k-paintable (k-1 erasers each)."""
    if g.n > cap:
        raise ResourceCapError(f"paintability capped at {cap} vertices")
    if g.n == 0:
        return 1
    solver = PaintSolver(g, cap=cap)
    k = max(1, chromatic_number(g))  # chain lower bound
    while True:
        if solver.paintable(solver.full, ((k - 1),) * g.n):
            return k
        k += 1


# ---------------------------------------------------------------------------
# choosability


def is_list_colourable(g: Graph, lists: dict[int, Iterable[int]]) -> bool:
    """Brute-force check that a proper colouring exists with every vertex
    coloured from its own list."""
    if set(lists.keys()) != set(range(g.n)):
        raise ParameterError("lists must cover exactly the vertices 0..n-1")
    palettes = {v: tuple(sorted(set(lists[v]))) for v in lists}
    if any(not palettes[v] for v in palettes):
        raise ParameterError("every list must be nonempty")
    adj = g.adj_masks()
    order = sorted(range(g.n), key=lambda v: len(palettes[v]))
    chosen: dict[int, int] = {}

    def rec(i: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        for c in palettes[v]:
            if any(adj[v] >> u & 1 and chosen.get(u) == c for u in chosen):
                continue
            chosen[v] = c
            if rec(i + 1):
                return True
            del chosen[v]
        return False

    return rec(0)


def _degeneracy(g: Graph) -> int:
    adj = list(g.adj_masks())
    alive = (1 << g.n) - 1
    deg = [bin(a).count("1") for a in adj]
    best = 0
    for _ in range(g.n):
        v = min((v for v in range(g.n) if alive >> v & 1), key=lambda v: deg[v])
        best = max(best, deg[v])
        alive &= ~(1 << v)
        m = adj[v] & alive
        while m:
            b = m & -m
            m ^= b
            deg[b.bit_length() - 1] -= 1
    return best


def _min_degree_one_classes(hmask: int, adj: Sequence[int], n: int) -> list[int]:
    """Subsets of hmask in which every member has a neighbour in the subset.

    In a normalized bad assignment every colour class has this property:
    a vertex whose colour is shared with no neighbour can always be coloured
    last, so it can be stripped.
    """
    out = []
    sub = hmask
    while sub:
        ok = True
        m = sub
        while m:
            b = m & -m
            m ^= b
            if not adj[b.bit_length() - 1] & sub:
                ok = False
                break
        if ok:
            out.append(sub)
        sub = (sub - 1) & hmask
    out.sort(reverse=True)
    return out


def _cover_by_independent(classes: list[int], need: int, adj: Sequence[int]) -> bool:
    """Can ``need`` be covered by independent subsets I_c of the classes?
    Equivalent to list-colourability of the assignment the classes encode."""

    def indep_subsets(c: int, acc: int):
        if c == 0:
            yield acc
            return
        b = c & -c
        v = b.bit_length() - 1
        yield from indep_subsets(c & ~b & ~adj[v], acc | b)
        yield from indep_subsets(c ^ b, acc)

    def rec(i: int, left: int) -> bool:
        if left == 0:
            return True
        if i == len(classes):
            return False
        for I in indep_subsets(classes[i] & left, 0):
            if rec(i + 1, left & ~I):
                return True
        return False

    return rec(0, need)


def _find_bad_classes(g: Graph, k: int) -> Optional[tuple[int, list[int]]]:
    """Search for an uncolourable normalized assignment: an induced subgraph H
    and a multiset of min-degree>=1 classes covering each H-vertex exactly k
    times, admitting no cover by independent picks.  Returns (hmask, classes)."""
    n = g.n
    adj = g.adj_masks()
    for hmask in range(1, 1 << n):
        hv = [v for v in range(n) if hmask >> v & 1]
        if any(not adj[v] & hmask for v in hv):
            continue  # isolated-in-H vertex cannot have all colours shared
        cands = _min_degree_one_classes(hmask, adj, n)
        need = {v: k for v in hv}

        def dfs(start: int, chosen: list[int]) -> Optional[list[int]]:
            if all(c == 0 for c in need.values()):
                if not _cover_by_independent(chosen, hmask, adj):
                    return chosen[:]
                return None
            for i in range(start, len(cands)):
                cm = cands[i]
                mm = cm
                fits = True
                while mm:
                    b = mm & -mm
                    mm ^= b
                    if need[b.bit_length() - 1] == 0:
                        fits = False
                        break
                if not fits:
                    continue
                mm = cm
                while mm:
                    b = mm & -mm
                    mm ^= b
                    need[b.bit_length() - 1] -= 1
                chosen.append(cm)
                got = dfs(i, chosen)
                chosen.pop()
                mm = cm
                while mm:
                    b = mm & -mm
                    mm ^= b
                    need[b.bit_length() - 1] += 1
                if got is not None:
                    return got
            return None

        bad = dfs(0, [])
        if bad is not None:
            return hmask, bad
    return None


_choosable_cache: dict[tuple, bool] = {}


def is_choosable(
    g: Graph,
    k: int,
    n_cap: int = CHOOSABLE_N_CAP,
    k_cap: int = CHOOSABLE_K_CAP,
) -> bool:
    """True iff every assignment of k-colour lists admits a proper colouring
    from the lists.  Exponential; capped hard."""
    if g.n > n_cap:
        raise ResourceCapError(f"choosability capped at {n_cap} vertices")
    if k > k_cap:
        raise ResourceCapError(f"choosability capped at lists of size {k_cap}")
    if k < 1:
        raise ParameterError("k must be >= 1")
    if g.n == 0:
        return True
    key = (g.n, tuple(g.adj_masks()), k)
    hit = _choosable_cache.get(key)
    if hit is not None:
        return hit
    if chromatic_number(g) > k:
        result = False  # identical lists {1..k} already fail
    elif _degeneracy(g) < k:
        result = True  # greedy along the degeneracy order always completes
    else:
        result = _find_bad_classes(g, k) is None
    _choosable_cache[key] = result
    return result


def find_bad_assignment(
    g: Graph,
    k: int,
    n_cap: int = CHOOSABLE_N_CAP,
    k_cap: int = CHOOSABLE_K_CAP,
) -> Optional[dict[int, frozenset[int]]]:
    """A witness list assignment with no proper list colouring, or None.

    Vertices outside the hard core receive fresh private colours, so the
    returned lists cover every vertex of the graph with exactly k colours.
    """
    if g.n > n_cap:
        raise ResourceCapError(f"choosability capped at {n_cap} vertices")
    if k > k_cap:
        raise ResourceCapError(f"choosability capped at lists of size {k_cap}")
    if g.n == 0:
        return None
    if chromatic_number(g) > k:
        return {v: frozenset(range(k)) for v in range(g.n)}
    if is_choosable(g, k, n_cap=n_cap, k_cap=k_cap):
        return None
    found = _find_bad_classes(g, k)
    assert found is not None
    hmask, classes = found
    lists: dict[int, set[int]] = {v: set() for v in range(g.n)}
    for colour, cm in enumerate(classes):
        m = cm
        while m:
            b = m & -m
            m ^= b
            lists[b.bit_length() - 1].add(colour)
    fresh = len(classes)
    for v in range(g.n):
        while len(lists[v]) < k:
            lists[v].add(fresh)
            fresh += 1
    return {v: frozenset(cs) for v, cs in lists.items()}


def choice_number(
    g: Graph,
    n_cap: int = CHOOSABLE_N_CAP,
    k_cap: int = CHOOSABLE_K_CAP,
) -> int:
    """Smallest k for which the graph is k-choosable, within the caps."""
    if g.n == 0:
        return 0
    k = max(1, chromatic_number(g))
    while True:
        if k > k_cap:
            raise ResourceCapError(
                f"choice number exceeds the list-size cap {k_cap}"
            )
        if is_choosable(g, k, n_cap=n_cap, k_cap=k_cap):
            return k
        k += 1


# ---------------------------------------------------------------------------
# optimal strategies extracted from the solver


def _state_masks(state) -> tuple[int, tuple[int, ...]]:
    mask = 0
    for v in state.remaining_vertices():
        mask |= 1 << int(v)
    er = tuple(
        int(state.erasers[v]) if mask >> v & 1 else 0 for v in range(state.graph.n)
    )
    return mask, er


class OptimalPainter:
    """Painter extracted from the game tree: from an unpaintable position it
    presents a set against which every keep loses.  At paintable positions
    (where no winning move exists) it probes with seeded nonempty subsets,
    ready to punish the first corrector mistake."""

    name = "optimal"

    def __init__(self, solver: PaintSolver, seed: int = 0):
        self._solver = solver
        self._stream = SplitStream(seed)

    def propose(self, state) -> np.ndarray:
        mask, er = _state_masks(state)
        S = self._solver.winning_present(mask, er)
        if S is None:
            S = self._probe(mask)
        return np.array([v for v in range(self._solver.n) if S >> v & 1], np.int64)

    def _probe(self, mask: int) -> int:
        if self._stream.u64() & 1:
            return mask
        verts = [v for v in range(self._solver.n) if mask >> v & 1]
        keep = [v for v in verts if self._stream.u64() & 1]
        if not keep:
            keep = [verts[self._stream.randrange(len(verts))]]
        out = 0
        for v in keep:
            out |= 1 << v
        return out


class OptimalCorrector:
    """Corrector extracted from the game tree, with a legal fallback when the
    position is already lost."""

    name = "optimal"

    def __init__(self, solver: PaintSolver):
        self._solver = solver

    def respond(self, state) -> np.ndarray:
        mask, er = _state_masks(state)
        S = 0
        for v in state.pending:
            S |= 1 << int(v)
        I = self._solver.winning_keep(mask, er, S)
        if I is None:
            I = self._fallback_keep(S, er)
        return np.array([v for v in range(self._solver.n) if I >> v & 1], np.int64)

    def _fallback_keep(self, S: int, er: tuple[int, ...]) -> int:
        adj = self._solver.adj
        keep = 0
        m = S
        while m:
            b = m & -m
            m ^= b
            if er[b.bit_length() - 1] == 0:
                keep |= b
        m = S
        while m:
            b = m & -m
            m ^= b
            v = b.bit_length() - 1
            if not adj[v] & keep and not keep >> v & 1:
                keep |= b
        return keep


class OptimalPainterFactory:
    name = "optimal"

    def __init__(self, g: Graph, budget: int, cap: int = PAINTABILITY_CAP):
        solver = PaintSolver(g, cap=cap)
        if solver.paintable(solver.full, (budget,) * g.n):
            raise StateError(
                "position is paintable: no winning painter strategy exists"
            )
        self._solver = solver

    def build(self, graph, budget, seed) -> OptimalPainter:
        return OptimalPainter(self._solver, seed)


class OptimalCorrectorFactory:
    name = "optimal"

    def __init__(self, g: Graph, cap: int = PAINTABILITY_CAP):
        self._solver = PaintSolver(g, cap=cap)

    def build(self, graph, budget, seed) -> OptimalCorrector:
        return OptimalCorrector(self._solver)


def optimal_painter(g: Graph, budget: int, cap: int = PAINTABILITY_CAP) -> OptimalPainterFactory:
    """Winning painter for a position with a uniform budget that the solver
    certifies as not paintable.  Raises StateError on paintable positions."""
    return OptimalPainterFactory(g, budget, cap=cap)


def optimal_corrector(g: Graph, cap: int = PAINTABILITY_CAP) -> OptimalCorrectorFactory:
    """Corrector that follows the solver's winning keeps where they exist."""
    return OptimalCorrectorFactory(g, cap=cap)
