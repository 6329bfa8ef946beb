import numpy as np
import pytest

from paintlab.errors import ParameterError, ResourceCapError
from paintlab.graph import ComponentClass, Graph, LazyGnp, gnp

# Frozen regression fixture: edge count of gnp(1000, 0.5, 42) under the
# documented pair-coin stream.  Binomial window: |m - 249750| < 4*sd = 1413.
GNP_1000_HALF_SEED42_EDGES = 249669


def test_gnp_p0_edgeless():
    g = gnp(5, 0.0, 123)
    assert g.m == 0 and g.n == 5


def test_gnp_p1_complete():
    g = gnp(4, 1.0, 7)
    assert g.m == 6
    assert all(g.has_edge(u, v) for u in range(4) for v in range(u + 1, 4))


def test_gnp_seeded_edge_count_fixture():
    g = gnp(1000, 0.5, 42)
    assert abs(g.m - 249750) < 1413
    assert g.m == GNP_1000_HALF_SEED42_EDGES


def test_gnp_determinism():
    a = gnp(300, 0.21, 99)
    b = gnp(300, 0.21, 99)
    assert np.array_equal(a.words, b.words)
    c = gnp(300, 0.21, 100)
    assert not np.array_equal(a.words, c.words)


def test_gnp_rejects_bad_p():
    with pytest.raises(ParameterError):
        gnp(10, 1.5, 0)
    with pytest.raises(ParameterError):
        gnp(10, -0.1, 0)


def test_lazy_agrees_with_materialized():
    g = gnp(400, 0.3, 2718)
    lz = LazyGnp(400, 0.3, 2718)
    for u, v in g.edges()[:200]:
        assert lz.has_edge(int(u), int(v))
    for v in (0, 13, 399):
        assert np.array_equal(lz.neighbors(v), g.neighbors(v))
    sub_a, map_a = g.induced_subgraph(range(40))
    sub_b, map_b = lz.induced_subgraph(range(40))
    assert np.array_equal(sub_a.words, sub_b.words)
    assert np.array_equal(map_a, map_b)


def test_lazy_refuses_components():
    with pytest.raises(ResourceCapError):
        LazyGnp(100000, 0.5, 1).components()


def test_is_independent():
    k3 = Graph.complete(3)
    assert k3.is_independent([])
    assert not k3.is_independent([0, 1])
    c5 = Graph.cycle(5)
    assert c5.is_independent([0, 2])
    assert not c5.is_independent([0, 1])
    with pytest.raises(ParameterError):
        c5.is_independent([0, 9])


def test_components_and_classes():
    p4 = Graph.path(4)
    comps = p4.components()
    assert len(comps) == 1 and comps[0][1] is ComponentClass.TREE

    c5 = Graph.cycle(5)
    assert c5.components()[0][1] is ComponentClass.UNICYCLIC

    # two triangles sharing a vertex: one complex component
    bowtie = Graph.from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)])
    comps = bowtie.components()
    assert len(comps) == 1 and comps[0][1] is ComponentClass.COMPLEX


def test_components_partition_vertices():
    g = gnp(120, 0.01, 5)
    comps = g.components()
    allv = np.concatenate([v for v, _ in comps])
    assert sorted(allv.tolist()) == list(range(120))
    # classification consistency: recount edges of each component
    for verts, cls in comps:
        sub, _ = g.induced_subgraph(verts)
        recls = (
            ComponentClass.TREE
            if sub.m == sub.n - 1
            else ComponentClass.UNICYCLIC
            if sub.m == sub.n
            else ComponentClass.COMPLEX
        )
        assert recls is cls


def test_degree_split():
    star = Graph.star(5)
    low, high = star.degree_split(3)
    assert list(high) == [0] and len(low) == 5

    edgeless = Graph.edgeless(4)
    low, high = edgeless.degree_split(1)
    assert len(low) == 4 and len(high) == 0

    k4 = Graph.complete(4)
    low, high = k4.degree_split(3)
    assert len(low) == 0 and len(high) == 4


def test_greedy_colouring():
    k4 = Graph.complete(4)
    _, count = k4.greedy_colouring([0, 1, 2, 3])
    assert count == 4

    edgeless = Graph.edgeless(6)
    _, count = edgeless.greedy_colouring(range(6))
    assert count == 1

    c5 = Graph.cycle(5)
    colours, count = c5.greedy_colouring([0, 1, 2, 3, 4])
    assert count == 3
    for u, v in c5.edges():
        assert colours[u] != colours[v]


def test_greedy_colouring_proper_and_bounded_on_random():
    for seed in range(6):
        g = gnp(60, 0.2, seed)
        order = np.arange(60)[::-1]
        colours, count = g.greedy_colouring(order)
        for u, v in g.edges():
            assert colours[u] != colours[v]
        assert count <= int(g.degrees().max()) + 1


def test_greedy_colouring_rejects_nonpermutation():
    with pytest.raises(ParameterError):
        Graph.path(3).greedy_colouring([0, 0, 1])


def test_induced_subgraph():
    k4 = Graph.complete(4)
    sub, mp = k4.induced_subgraph([0, 1])
    assert sub.n == 2 and sub.m == 1 and list(mp) == [0, 1]

    sub, mp = k4.induced_subgraph([])
    assert sub.n == 0 and sub.m == 0

    c5 = Graph.cycle(5)
    sub, mp = c5.induced_subgraph([0, 1, 2])
    assert sub.n == 3 and sub.m == 2  # a path


def test_from_edges_validation():
    with pytest.raises(ParameterError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ParameterError):
        Graph.from_edges(3, [(0, 5)])
    # duplicates collapse
    g = Graph.from_edges(3, [(0, 1), (1, 0)])
    assert g.m == 1


def test_edge_list_round_trip():
    g = gnp(50, 0.2, 11)
    text = g.to_edge_list_text()
    h = Graph.from_edge_list_text(text)
    assert h.n == g.n and h.m == g.m
    assert np.array_equal(h.words, g.words)
    assert text == h.to_edge_list_text()
    lines = text.splitlines()
    assert lines[0] == f"{g.n} {g.m}"
    pairs = [tuple(map(int, ln.split())) for ln in lines[1:]]
    assert pairs == sorted(pairs)
    assert all(u < v for u, v in pairs)


def test_adjacency_symmetry_invariant():
    g = gnp(200, 0.4, 3)
    for u, v in g.edges()[:300]:
        assert g.has_edge(int(v), int(u))
    assert not any(g.has_edge(v, v) for v in range(200))
