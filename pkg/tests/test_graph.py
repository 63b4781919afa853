"""Adjacency-set graph and the small structural helpers on top of it."""

import pytest

from hered3.errors import InputError
from hered3.graph import (
    Graph,
    bipartition,
    common_neighbors,
    complement_components,
    connected_components,
    induced_subgraph,
    shortest_odd_cycle,
)


def cycle(n):
    return Graph.from_edges(range(n), [(i, (i + 1) % n) for i in range(n)])


def test_from_edges_and_views():
    g = Graph.from_edges([3, 1, 2], [(1, 2), (2, 3)])
    assert g.vertices() == [1, 2, 3]
    assert g.vertex_count() == 3
    assert g.edge_count() == 2
    assert sorted(g.edges()) == [(1, 2), (2, 3)]
    assert g.has_edge(2, 1) and g.has_edge(1, 2)
    assert not g.has_edge(1, 3)
    assert g.neighbors(2) == {1, 3}
    assert g.sorted_neighbors(2) == [1, 3]
    assert g.degree(2) == 2 and g.degree(1) == 1
    assert 1 in g and 9 not in g
    assert len(g) == 3


def test_add_vertex_ids():
    g = Graph()
    assert g.add_vertex() == 1
    assert g.add_vertex(7) == 7
    assert g.add_vertex() == 8
    with pytest.raises(InputError):
        g.add_vertex(7)


def test_rejects_self_loops_and_unknown_endpoints():
    with pytest.raises(InputError):
        Graph.from_edges([1], [(1, 1)])
    g = Graph.from_edges([1, 2], [(1, 2)])
    with pytest.raises(InputError):
        g.add_edge(1, 1)
    with pytest.raises(InputError):
        g.add_edge(1, 99)


def test_remove_vertex_drops_incident_edges():
    g = Graph.from_edges(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])
    g.remove_vertex(1)
    assert g.vertices() == [0, 2, 3]
    assert sorted(g.edges()) == [(0, 3), (2, 3)]
    assert g.neighbors(0) == {3}
    with pytest.raises(InputError):
        g.remove_vertex(1)


def test_copy_is_independent():
    g = Graph.from_edges(range(3), [(0, 1)])
    h = g.copy()
    h.add_edge(1, 2)
    h.remove_vertex(0)
    assert g.has_edge(0, 1)
    assert not g.has_edge(1, 2)


def test_induced_subgraph():
    g = cycle(5)
    h = induced_subgraph(g, [0, 1, 2, 4])
    assert h.vertices() == [0, 1, 2, 4]
    assert sorted(h.edges()) == [(0, 1), (0, 4), (1, 2)]


def test_connected_components():
    g = Graph.from_edges(range(6), [(0, 1), (1, 2), (4, 5)])
    comps = connected_components(g)
    assert sorted(map(sorted, comps)) == [[0, 1, 2], [3], [4, 5]]
    within = connected_components(g, within=[0, 2, 4, 5])
    assert sorted(map(sorted, within)) == [[0], [2], [4, 5]]


def test_bipartition():
    assert bipartition(cycle(4)) is not None
    assert bipartition(cycle(5)) is None
    sides = bipartition(Graph.from_edges(range(3), [(0, 1), (1, 2)]))
    assert sides == ({0, 2}, {1})
    # restricted view ignores odd structure outside
    g = cycle(5)
    assert bipartition(g, within=[0, 1, 2]) is not None


def test_common_neighbors():
    g = Graph.from_edges(range(4), [(0, 1), (0, 2), (3, 1), (3, 2), (1, 2)])
    assert common_neighbors(g, 0, 3) == {1, 2}
    assert common_neighbors(g, 0, 1) == {2}


def test_complement_components():
    # two disjoint edges: the complement is C4, hence one block
    g = Graph.from_edges(range(4), [(0, 1), (2, 3)])
    assert complement_components(g) == [{0, 1, 2, 3}]
    # a join splits in the complement
    k22 = Graph.from_edges(range(4), [(0, 2), (0, 3), (1, 2), (1, 3)])
    assert sorted(map(sorted, complement_components(k22))) == [[0, 1], [2, 3]]


def test_shortest_odd_cycle():
    assert shortest_odd_cycle(cycle(4)) is None
    got = shortest_odd_cycle(cycle(5))
    assert got is not None and len(got) == 5
    tri = Graph.from_edges(range(5), [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)])
    got = shortest_odd_cycle(tri)
    assert sorted(got) == [0, 1, 2]
    # within filter can exclude the only odd cycle
    assert shortest_odd_cycle(tri, within=[2, 3, 4]) is None


def test_shortest_odd_cycle_prefers_short():
    # C5 sharing a chord path that creates a triangle
    g = cycle(5)
    g.add_edge(0, 2)
    got = shortest_odd_cycle(g)
    assert len(got) == 3
