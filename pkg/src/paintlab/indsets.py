"""Independent-set machinery used by the corrector strategies.

The partitioners decompose a presented set into independent parts of fixed
sizes plus a leftover set.  Part sizes follow the two extraction scales:
``ceil(1/(9p))`` while at least ``s0 = 10*log(n)/p`` vertices remain
(type 0), then the dyadic scale ``ceil(i/(9p*2^i))`` while the remainder r
satisfies ``s0/2^i <= r < s0/2^(i-1)`` (type i), stopping at the small-set
threshold ``n*p/(omega*log^2 n)``.

Extraction is randomized greedy with restarts; the guarantees behind the
target sizes are existence statements for large n, so a failed extraction is
a reported outcome (fallback flag), never an error.  All functions are pure
in (graph, set, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import ParameterError
from .graph import Graph, GraphLike, _as_vertex_array
from .rng import SplitStream

DEFAULT_MAX_ATTEMPTS = 50


def k0(n: int, p: float) -> Optional[int]:
    """Largest k with C(n,k) * (1-p)^C(k,2) >= n^4, or None if no k works.

    Evaluated in log space (lgamma) so the binomials never overflow.  The
    quantity is only guaranteed to exist for large n; small (n, p) can make
    every k fail, hence the optional result.
    """
    if not 0.0 < p < 1.0:
        raise ParameterError("k0 requires 0 < p < 1")
    if n < 1:
        raise ParameterError("k0 requires n >= 1")
    ln_q = math.log1p(-p)
    ln_n4 = 4.0 * math.log(n)
    lg = math.lgamma
    best = None
    f_prev = -math.inf
    for k in range(1, n + 1):
        f = lg(n + 1) - lg(k + 1) - lg(n - k + 1) + 0.5 * k * (k - 1) * ln_q - ln_n4
        if f >= 0.0:
            best = k
        elif best is not None:
            break  # f is concave in k: once past the feasible interval, stop
        elif f < f_prev and f < -64.0:
            break  # concave, past the maximum, deeply negative: no interval
        f_prev = f
    return best


@dataclass
class ExtractionReport:
    """Outcome of one find-independent-set-of-size request."""

    requested: int
    achieved: int
    attempts_used: int
    fallback: bool


@dataclass
class Partition:
    """Typed decomposition of a vertex set into independent parts plus J."""

    parts: list[tuple[np.ndarray, int]]  # (vertices, type index)
    leftover: np.ndarray                 # J
    max_type: int                        # M: largest type index used (0 if none)
    s0: float
    fallback: bool = False

    def parts_of_type(self, i: int) -> list[np.ndarray]:
        return [vs for vs, t in self.parts if t == i]

    def covered(self) -> np.ndarray:
        chunks = [vs for vs, _ in self.parts] + [self.leftover]
        return np.sort(np.concatenate(chunks)) if chunks else np.zeros(0, np.int64)


class _ScanSpace:
    """Adjacency words plus the id space greedy scans run in.

    Materialized graphs are scanned in place with global vertex ids; lazy
    graphs are induced once and scanned in local ids, mapped back at the end.
    """

    def __init__(self, g: GraphLike, S: np.ndarray):
        if isinstance(g, Graph):
            self.words = g.words
            self.domain = S
            self._map = None
        else:
            sub, _ = g.induced_subgraph(S)
            self.words = sub.words
            self.domain = np.arange(len(S), dtype=np.int64)
            self._map = S

    def to_global(self, arr: np.ndarray) -> np.ndarray:
        return arr if self._map is None else self._map[arr]


def greedy_independent_set(g: GraphLike, S, seed: int) -> np.ndarray:
    """Maximal independent subset of S: scan S in seeded random order, keep
    every vertex with no previously kept neighbour."""
    S = _as_vertex_array(S)
    if len(S) == 0:
        return S
    space = _ScanSpace(g, S)
    order = space.domain[SplitStream(seed).permutation(len(S))]
    out = np.zeros(len(S), dtype=np.int64)
    cnt = _kernels.greedy_extend(space.words, order, np.zeros(0, np.int64), 0, out)
    return np.sort(space.to_global(out[:cnt]))


def find_independent_of_size(
    g: GraphLike,
    S,
    target: int,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
    seed: int = 0,
) -> tuple[np.ndarray, ExtractionReport]:
    """Randomized greedy with restarts until an independent subset of S with
    ``target`` vertices appears (result truncated to exactly ``target``), else
    the best set seen with the fallback flag raised."""
    if target < 1:
        raise ParameterError("target must be >= 1")
    S = _as_vertex_array(S)
    space = _ScanSpace(g, S)
    stream = SplitStream(seed)
    out = np.zeros(max(len(S), 1), dtype=np.int64)
    best = np.zeros(0, dtype=np.int64)
    attempts = 0
    for attempt in range(max(1, max_attempts)):
        attempts = attempt + 1
        if len(S) == 0:
            break
        order = space.domain[stream.permutation(len(S))]
        cnt = _kernels.greedy_extend(space.words, order, np.zeros(0, np.int64), target, out)
        if cnt >= target:
            kept = np.sort(space.to_global(out[:target].copy()))
            return kept, ExtractionReport(target, target, attempts, False)
        if cnt > len(best):
            best = out[:cnt].copy()
    kept = np.sort(space.to_global(best)) if len(best) else np.zeros(0, dtype=np.int64)
    return kept, ExtractionReport(target, len(kept), attempts, True)


def type0_part_size(p: float) -> int:
    return math.ceil(1.0 / (9.0 * p))


def typed_part_size(i: int, p: float) -> int:
    return math.ceil(i / (9.0 * p * 2.0**i))


def type_weights(M: int) -> np.ndarray:
    """Selection weights over types 1..M: q_i proportional to 1/i."""
    if M < 1:
        raise ParameterError("type_weights needs M >= 1")
    inv = 1.0 / np.arange(1, M + 1, dtype=np.float64)
    return inv / inv.sum()


def _extract_loop(
    words: np.ndarray,
    rem: np.ndarray,
    size: int,
    type_idx: int,
    stream: SplitStream,
    max_attempts: int,
    parts: list,
) -> tuple[np.ndarray, bool]:
    """Pull one independent part of exactly ``size`` from the remainder.

    Returns (new remainder, ok).  ``rem`` is sorted in the scan id space.
    """
    if size > len(rem):
        return rem, False
    out = np.zeros(len(rem), dtype=np.int64)
    for _ in range(max(1, max_attempts)):
        order = stream.shuffled(rem)
        cnt = _kernels.greedy_extend(words, order, np.zeros(0, np.int64), size, out)
        if cnt >= size:
            part = np.sort(out[:size].copy())
            parts.append((part, type_idx))
            mask = np.ones(len(rem), dtype=bool)
            mask[np.searchsorted(rem, part)] = False
            return rem[mask], True
    return rem, False


def medium_partition_dense(
    g: GraphLike,
    S,
    p: float,
    seed: int,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> Partition:
    """Repeatedly extract independent parts of size ceil(1/(9p)) (type 0)
    while at least s0 = 10*log(n)/p vertices remain; the rest becomes J."""
    if not 0.0 < p < 1.0:
        raise ParameterError("p must lie strictly between 0 and 1")
    S = _as_vertex_array(S)
    n = g.n
    s0 = 10.0 * math.log(n) / p if n >= 1 else 0.0
    space = _ScanSpace(g, S)
    stream = SplitStream(seed)
    size0 = type0_part_size(p)
    parts_raw: list[tuple[np.ndarray, int]] = []
    rem = space.domain.copy()
    fallback = False
    while len(rem) >= s0 and len(rem) >= size0 and len(rem) > 0:
        rem, ok = _extract_loop(space.words, rem, size0, 0, stream, max_attempts, parts_raw)
        if not ok:
            fallback = True
            break
    return Partition(
        parts=[(np.sort(space.to_global(vs)), t) for vs, t in parts_raw],
        leftover=np.sort(space.to_global(rem)),
        max_type=0,
        s0=s0,
        fallback=fallback,
    )


def medium_partition_typed(
    g: GraphLike,
    S,
    p: float,
    omega: float,
    seed: int,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> Partition:
    """Two-phase partition: type-0 parts while the remainder is at least s0,
    then dyadic type-i parts of size ceil(i/(9p*2^i)) while the remainder
    exceeds the small-set threshold n*p/(omega*log^2 n)."""
    if not 0.0 < p < 1.0:
        raise ParameterError("p must lie strictly between 0 and 1")
    if omega <= 0:
        raise ParameterError("omega must be > 0")
    S = _as_vertex_array(S)
    n = g.n
    ln_n = math.log(n) if n >= 2 else 1.0
    s0 = 10.0 * ln_n / p
    stop_at = n * p / (omega * ln_n * ln_n)
    max_type_cap = max(1, math.floor(ln_n / math.log(2.0)))
    space = _ScanSpace(g, S)
    stream = SplitStream(seed)
    size0 = type0_part_size(p)
    parts_raw: list[tuple[np.ndarray, int]] = []
    rem = space.domain.copy()
    fallback = False

    while len(rem) >= s0 and len(rem) >= size0 and len(rem) > 0:
        rem, ok = _extract_loop(space.words, rem, size0, 0, stream, max_attempts, parts_raw)
        if not ok:
            fallback = True
            break

    max_type = 0
    if not fallback:
        while len(rem) > stop_at and len(rem) > 0:
            r = len(rem)
            i = 1
            while r < s0 / 2.0**i:
                i += 1
            if i > max_type_cap:
                break  # dyadic scale exhausted at this n; remainder goes to J
            size_i = typed_part_size(i, p)
            rem, ok = _extract_loop(space.words, rem, size_i, i, stream, max_attempts, parts_raw)
            if not ok:
                fallback = True
                break
            max_type = max(max_type, i)

    return Partition(
        parts=[(np.sort(space.to_global(vs)), t) for vs, t in parts_raw],
        leftover=np.sort(space.to_global(rem)),
        max_type=max_type,
        s0=s0,
        fallback=fallback,
    )


def check_partition(g: GraphLike, S, part: Partition, p: float) -> list[str]:
    """Contract checker: cover, disjointness, independence, exact typed
    sizes, and the dyadic type cap.  Returns human-readable violations."""
    S = _as_vertex_array(S)
    problems = []
    covered = part.covered()
    if not np.array_equal(covered, S):
        problems.append("parts + leftover do not exactly cover the input set")
    total = sum(len(vs) for vs, _ in part.parts) + len(part.leftover)
    if total != len(S):
        problems.append("parts overlap (total size mismatch)")
    for idx, (vs, t) in enumerate(part.parts):
        if not g.is_independent(vs):
            problems.append(f"part {idx} (type {t}) is not independent")
        expected = type0_part_size(p) if t == 0 else typed_part_size(t, p)
        if len(vs) != expected:
            problems.append(
                f"part {idx} has size {len(vs)}, expected {expected} for type {t}"
            )
    n = g.n
    if n >= 2 and part.max_type > math.log(n) / math.log(2.0):
        problems.append("max type exceeds log(n)/log(2)")
    return problems
