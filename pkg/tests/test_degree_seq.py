import itertools

import networkx as nx
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import simple_graphs
from mgcolor.degree_seq import (
    DegreeSequence,
    RealizationGap,
    build_regular_circulant,
    format_sequences,
    is_graphic,
    parse_sequences,
    realize_admissible_bipartite,
    realize_graphic,
    realize_near_regular,
    split_realization_holds,
    verify_split_realization,
)
from mgcolor.errors import DomainError, InputError
from mgcolor.multigraph import Multigraph, cycle_graph

FIGURE_SEQUENCE = (14, 8, 8, 7, 7, 5, 5, 4, 3, 3, 3, 2, 1, 0)


def brute_force_graphic(seq):
    n = len(seq)
    pairs = list(itertools.combinations(range(n), 2))
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        deg = [0] * n
        for (u, v), b in zip(pairs, bits):
            deg[u] += b
            deg[v] += b
        if sorted(deg, reverse=True) == sorted(seq, reverse=True):
            return True
    return False


def test_sequence_is_sorted_and_admissibility():
    s = DegreeSequence([1, 3, 2])
    assert s.values == (3, 2, 1)
    assert s.admissible
    assert DegreeSequence([3, 3]).admissible
    assert not DegreeSequence([4, 1, 1]).admissible
    assert not DegreeSequence([3, 1, 1]).admissible


def test_parse_and_format_round_trip():
    seqs = parse_sequences("3 3 2 2\n# comment\n1 1\n")
    assert [s.values for s in seqs] == [(3, 3, 2, 2), (1, 1)]
    assert parse_sequences(format_sequences([[3, 3, 2, 2]]))[0].values == (3, 3, 2, 2)


def test_circulant_examples():
    assert nx.is_isomorphic(_nx(build_regular_circulant(5, 2)), _nx(cycle_graph(5)))
    g = build_regular_circulant(6, 4)
    assert all(set(g.neighbors(v)) == {(v + s) % 6 for s in (1, 2, 4, 5)} for v in range(6))
    with pytest.raises(InputError):
        build_regular_circulant(4, 3)


def _nx(g: Multigraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((u, v) for u, v, _ in g.pairs())
    return h


def test_graphic_examples_against_brute_force():
    assert is_graphic([3, 3, 3, 3])[0] and brute_force_graphic([3, 3, 3, 3])
    assert is_graphic([3, 1, 1, 1])[0]
    assert not is_graphic([3, 2, 1])[0] and not brute_force_graphic([3, 2, 1])


def test_realize_graphic_examples():
    assert realize_graphic([2, 2, 2]).degrees() == [2, 2, 2]
    g = realize_graphic([3, 3, 2, 2])
    assert sorted(g.degrees()) == [2, 2, 3, 3] and g.is_simple()
    with pytest.raises(DomainError):
        realize_graphic([1, 1, 1])


def test_near_regular_examples():
    assert realize_near_regular(4, 3, 2).degrees() == [3, 3, 2, 2]
    assert realize_near_regular(5, 2, 5).degrees() == [2] * 5
    with pytest.raises(InputError):
        realize_near_regular(3, 3, 1)


@given(st.lists(st.integers(0, 7), min_size=1, max_size=8))
def test_is_graphic_matches_networkx(values):
    assert is_graphic(values)[0] == nx.is_graphical(values)


@given(simple_graphs(max_n=8))
def test_realize_graphic_hits_targets(h):
    values = h.degrees()
    g = realize_graphic(values)
    assert g.is_simple() and sorted(g.degrees()) == sorted(values)


@given(st.integers(3, 12), st.integers(1, 11), st.data())
def test_near_regular_degrees(m, d, data):
    assume(d < m and d >= 2)
    t = data.draw(st.integers(1, m))
    assume((m * (d - 1) + t) % 2 == 0)
    g = realize_near_regular(m, d, t)
    assert g.is_simple() and g.degrees() == [d] * t + [d - 1] * (m - t)


def test_two_equal_entries_give_empty_split():
    r = realize_admissible_bipartite([3, 3])
    assert r.p == 2 and r.graph.edge_count() == 0 and not r.has_next


def test_figure_sequence_split_index():
    r = realize_admissible_bipartite(FIGURE_SEQUENCE)
    assert r.p == 8
    assert split_realization_holds(verify_split_realization(FIGURE_SEQUENCE, r))


def test_small_hand_traced_split():
    r = realize_admissible_bipartite([2, 1, 1])
    assert r.p == 2
    assert sorted(r.graph.pairs()) == [(0, 2, 1)]


def test_constant_sequence_has_no_split_edges():
    r = realize_admissible_bipartite([4, 4, 4, 4])
    assert r.p == 4 and r.graph.edge_count() == 0
    assert split_realization_holds(verify_split_realization([4, 4, 4, 4], r))


def test_spurious_edge_inside_prefix_is_caught():
    r = realize_admissible_bipartite(FIGURE_SEQUENCE)
    r.graph.add_edge(0, 2)
    verdict = verify_split_realization(FIGURE_SEQUENCE, r)
    assert not verdict["c"].passed and verdict["c"].witness is not None


def test_non_admissible_is_domain_error():
    with pytest.raises(DomainError) as exc:
        realize_admissible_bipartite([4, 0, 0, 0, 0, 0])
    assert not isinstance(exc.value, RealizationGap)


@pytest.mark.parametrize("values", [(5, 5, 5, 3), (5, 5, 4, 2, 0)])
def test_known_gaps_raise(values):
    with pytest.raises(RealizationGap):
        realize_admissible_bipartite(values)


@given(st.lists(st.integers(0, 9), min_size=2, max_size=12))
def test_split_realization_verified_or_gap(values):
    s = DegreeSequence(values)
    assume(s.admissible)
    try:
        r = realize_admissible_bipartite(s)
    except RealizationGap:
        return
    assert split_realization_holds(verify_split_realization(s, r))
    assert r.p % 2 == 0 and 2 <= r.p <= len(values)


def _balance_feasible(d):
    m = len(d)
    at = lambda i: d[i - 1] if 1 <= i <= m else 0  # noqa: E731
    return any(
        sum(at(i) for i in range(p + 2, m + 1))
        <= sum(at(i) - at(i + 1) for i in range(1, p + 1, 2))
        <= sum(at(i) for i in range(p + 1, m + 1))
        for p in range(2, m + 1, 2)
    )


def test_smallest_degree_count_obstruction():
    # admissible, but no even split balances: left sums are 1 and 2, right sums 4 and 0
    assert DegreeSequence([8, 7, 5, 4]).admissible
    assert not _balance_feasible([8, 7, 5, 4])
    with pytest.raises(RealizationGap):
        realize_admissible_bipartite([8, 7, 5, 4])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 20), min_size=2, max_size=12))
def test_gap_exactly_when_degree_count_fails(values):
    seq = DegreeSequence(values)
    if not seq.admissible:
        return
    try:
        realize_admissible_bipartite(seq)
        realized = True
    except RealizationGap:
        realized = False
    assert realized == _balance_feasible(list(seq.values))
