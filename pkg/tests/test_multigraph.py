import networkx as nx
import pytest
from hypothesis import given

from conftest import multigraphs
from mgcolor.errors import InputError
from mgcolor.multigraph import (
    Multigraph,
    bipartite_between,
    complete_graph,
    cycle_graph,
    deficiency,
    degree_profile,
    disjoint_union,
    induced_subgraph,
    petersen_minus_vertex,
    subset_edge_counts,
)


def test_degree_profile_examples():
    assert degree_profile(complete_graph(3), 0) == (2, 2, 1)
    assert degree_profile(Multigraph(2, [(0, 1, 3)]), 0) == (3, 1, 3)
    assert degree_profile(Multigraph(1), 0) == (0, 0, 0)


def test_loops_and_bad_vertices_rejected():
    with pytest.raises(InputError):
        Multigraph(3, [(1, 1)])
    with pytest.raises(InputError):
        Multigraph(3, [(0, 3)])
    with pytest.raises(InputError):
        Multigraph(-1)


def test_induced_subgraph_examples():
    k4 = complete_graph(4)
    h, relabel = induced_subgraph(k4, [0, 2, 3])
    assert h == complete_graph(3)
    assert relabel == {0: 0, 2: 1, 3: 2}
    g = complete_graph(3)
    g.add_vertex()
    g.add_edge(2, 3)
    assert induced_subgraph(g, [0, 1, 2])[0] == complete_graph(3)
    assert induced_subgraph(k4, range(4))[0] == k4


def test_deficiency_examples():
    assert deficiency(complete_graph(4)) == 0
    star = Multigraph(4, [(0, 1), (0, 2), (0, 3)])
    assert [deficiency(star, v) for v in range(4)] == [0, 2, 2, 2]
    assert deficiency(star) == 6
    g = complete_graph(6)
    g.remove_edge(0, 1)
    assert sorted(deficiency(g, v) for v in range(6)) == [0, 0, 0, 0, 1, 1]
    assert deficiency(g) == 2


def test_bipartite_between_examples():
    h = bipartite_between(complete_graph(4), [0, 1], [2, 3])
    assert h.edge_count() == 4 and all(h.degree(v) == 2 for v in range(4))
    assert bipartite_between(complete_graph(4), [0, 1], []).edge_count() == 0
    path = bipartite_between(complete_graph(3), [0], [1, 2])
    assert path.edge_count() == 2 and path.degree(0) == 2
    with pytest.raises(InputError):
        bipartite_between(complete_graph(3), [0, 1], [1])


def test_petersen_minus_vertex_shape():
    g = petersen_minus_vertex()
    assert (g.n, g.edge_count()) == (9, 12)
    assert sorted(g.degrees()) == [2, 2, 2] + [3] * 6


def test_text_round_trip_and_comments():
    g = Multigraph(4, [(0, 1, 2), (2, 3)])
    assert Multigraph.from_text(g.to_text()) == g
    assert Multigraph.from_text("# header\n2 1\n0 1 3  # triple\n") == Multigraph(2, [(0, 1, 3)])
    with pytest.raises(InputError):
        Multigraph.from_text("3 2\n0 1 1\n")


def test_dot_export_lists_every_pair():
    dot = cycle_graph(4).to_dot()
    assert dot.count("--") == 4 and dot.startswith("graph G {")


@given(multigraphs())
def test_handshake_and_counts(g):
    assert sum(g.degrees()) == 2 * g.edge_count()
    assert g.edge_count() == len(g.edge_instances())
    for v in range(g.n):
        assert g.simple_degree(v) == len(g.neighbors(v))
        assert g.degree(v) == sum(g.neighbors(v).values())
        assert g.vertex_multiplicity(v) <= g.mu


@given(multigraphs())
def test_text_round_trip(g):
    assert Multigraph.from_text(g.to_text()) == g


@given(multigraphs(max_n=6))
def test_subset_counts_match_networkx(g):
    nxg = nx.MultiGraph()
    nxg.add_nodes_from(range(g.n))
    for u, v, _ in g.edge_instances():
        nxg.add_edge(u, v)
    counts = subset_edge_counts(g)
    for mask in range(1 << g.n):
        xs = [v for v in range(g.n) if mask >> v & 1]
        assert counts[mask] == nxg.subgraph(xs).number_of_edges() == g.e_within(xs)


@given(multigraphs(max_n=6))
def test_cut_identity(g):
    xs = list(range(g.n // 2))
    rest = [v for v in range(g.n) if v not in xs]
    assert g.cut(xs) == g.e_between(xs, rest)
    assert g.e_within(xs) + g.e_within(rest) + g.cut(xs) == g.edge_count()


def test_disjoint_union_offsets():
    g = disjoint_union(cycle_graph(3), Multigraph(2, [(0, 1, 2)]))
    assert g.n == 5 and g.multiplicity(3, 4) == 2 and g.multiplicity(0, 2) == 1
