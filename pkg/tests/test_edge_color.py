import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import multigraphs
from mgcolor.edge_color import (
    EdgeColoring,
    bipartition,
    check_proper,
    chromatic_index_exact,
    color_bipartite_konig,
    color_bounded,
    color_nearly_bipartite,
    color_vizing_bound,
    density_rho,
    equalize,
    kempe_chain,
    parity_check,
    swap_alternating_path,
    swap_chain,
)
from mgcolor.errors import DomainError, InputError
from mgcolor.multigraph import (
    Multigraph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    petersen_minus_vertex,
)

DOUBLED_TRIANGLE = Multigraph(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)])


def path3() -> Multigraph:
    return Multigraph(4, [(0, 1), (1, 2), (2, 3)])


def test_check_proper_examples():
    k3 = complete_graph(3)
    good = EdgeColoring(k3, 3, {(0, 1, 0): 1, (0, 2, 0): 2, (1, 2, 0): 3})
    assert check_proper(k3, good).passed
    bad = EdgeColoring(k3, 3, {(0, 1, 0): 1, (0, 2, 0): 1})
    verdict = check_proper(k3, bad)
    assert not verdict.passed and verdict.witness is not None
    assert check_proper(k3, EdgeColoring(k3, 3)).passed


def test_assign_refuses_conflicts():
    k3 = complete_graph(3)
    c = EdgeColoring(k3, 3, {(0, 1, 0): 1})
    with pytest.raises(InputError):
        c.assign((0, 2, 0), 1)
    with pytest.raises(InputError):
        c.assign((0, 2, 0), 4)


def test_parity_examples():
    k4 = complete_graph(4)
    c = EdgeColoring(k4, 3, {(0, 1, 0): 1, (2, 3, 0): 1, (0, 2, 0): 2, (1, 3, 0): 2, (0, 3, 0): 3, (1, 2, 0): 3})
    assert parity_check(k4, c).passed
    # both proper 2-colorings of the 3-edge path
    p = path3()
    for a, b in ((1, 2), (2, 1)):
        c = EdgeColoring(p, 2, {(0, 1, 0): a, (1, 2, 0): b, (2, 3, 0): a})
        assert parity_check(p, c).passed
        assert all(sum(1 for v in range(4) if c.misses(v, i)) % 2 == 0 for i in (1, 2))


def test_parity_on_c5_every_proper_three_coloring():
    c5 = cycle_graph(5)
    edges = c5.edge_instances()
    seen = 0
    for cols in itertools.product((1, 2, 3), repeat=5):
        c = EdgeColoring(c5, 3, dict(zip(edges, cols)))
        if not check_proper(c5, c).passed:
            continue
        seen += 1
        assert parity_check(c5, c).passed
        assert all(sum(1 for v in range(5) if c.misses(v, i)) % 2 == 1 for i in (1, 2, 3))
    assert seen == 30  # proper 3-colorings of C5, counted by this enumeration


def test_konig_examples():
    c6 = cycle_graph(6)
    c = color_bipartite_konig(c6)
    assert c.k == 2 and c.is_total() and check_proper(c6, c).passed
    triple = Multigraph(2, [(0, 1, 3)])
    c = color_bipartite_konig(triple)
    assert sorted(c.color(e) for e in triple.edge_instances()) == [1, 2, 3]
    with pytest.raises(DomainError) as exc:
        color_bipartite_konig(complete_graph(3))
    assert exc.value.witness


def test_vizing_examples():
    assert max(color_vizing_bound(complete_graph(3)).colors_used()) == 3
    assert max(color_vizing_bound(cycle_graph(6)).colors_used()) <= 3
    c = color_vizing_bound(DOUBLED_TRIANGLE)
    assert c.is_total() and max(c.colors_used()) <= 6
    assert chromatic_index_exact(DOUBLED_TRIANGLE).chromatic_index == 6


def test_equalize_examples():
    p = path3()
    c = equalize(p, EdgeColoring(p, 2, {(0, 1, 0): 1, (1, 2, 0): 2, (2, 3, 0): 1}))
    assert sorted(c.class_size(i) for i in (1, 2)) == [1, 2]
    star = Multigraph(4, [(0, 1), (0, 2), (0, 3)])
    c = equalize(star, EdgeColoring(star, 3, {(0, 1, 0): 1, (0, 2, 0): 2, (0, 3, 0): 3}))
    assert [c.class_size(i) for i in (1, 2, 3)] == [1, 1, 1]
    k4 = complete_graph(4)
    c = equalize(k4, EdgeColoring(k4, 4, dict(color_vizing_bound(k4).items())))
    assert sorted(c.class_size(i) for i in range(1, 5)) == [1, 1, 2, 2]
    assert check_proper(k4, c).passed


def test_density_examples():
    r = density_rho(complete_graph(5))
    assert r.value == 5 and sorted(r.witness) == [0, 1, 2, 3, 4]
    r = density_rho(cycle_graph(5))
    assert r.value == Fraction(5, 2) and len(r.witness) == 5
    assert density_rho(DOUBLED_TRIANGLE).value == 6


def test_exact_examples():
    assert chromatic_index_exact(petersen_minus_vertex()).chromatic_index == 4
    assert chromatic_index_exact(complete_graph(4)).chromatic_index == 3
    assert chromatic_index_exact(cycle_graph(5)).chromatic_index == 3


def test_color_bounded_examples():
    k4 = complete_graph(4)
    assert check_proper(k4, color_bounded(k4, 4)).passed
    c = color_bounded(DOUBLED_TRIANGLE, 6)
    assert c.is_total() and check_proper(DOUBLED_TRIANGLE, c).passed
    with pytest.raises(InputError):
        color_bounded(cycle_graph(6), 1)


def test_nearly_bipartite_examples():
    res = color_nearly_bipartite(cycle_graph(5))
    assert not res.colorable and res.certificate.found
    assert res.certificate.recheck(cycle_graph(5))
    res = color_nearly_bipartite(cycle_graph(6))
    assert res.colorable and max(res.coloring.colors_used()) == 2


def test_nearly_bipartite_apex_agrees_with_exact():
    g = complete_bipartite(3, 3)
    apex = g.add_vertex()
    for v in range(3):
        g.add_edge(apex, v)
    res = color_nearly_bipartite(g)
    exact = chromatic_index_exact(g).chromatic_index
    assert g.max_degree == 4
    assert res.colorable == (exact == 4)
    if res.colorable:
        assert res.coloring.is_total() and check_proper(g, res.coloring).passed


def test_swap_alternating_path_examples():
    g = Multigraph(2, [(0, 1)])
    c = swap_alternating_path(EdgeColoring(g, 1), [(0, 1, 0)], 1)
    assert c.color((0, 1, 0)) == 1
    # a - b1 - b2 - a2 with b1 b2 colored 1
    g = Multigraph(4, [(0, 1), (1, 2), (2, 3)])
    c = EdgeColoring(g, 1, {(1, 2, 0): 1})
    out = swap_alternating_path(c, [(0, 1, 0), (1, 2, 0), (2, 3, 0)], 1)
    assert [out.color(e) for e in g.edge_instances()] == [1, 0, 1]
    assert c.color((1, 2, 0)) == 1
    with pytest.raises(InputError):
        swap_alternating_path(c, [(0, 1, 0), (2, 3, 0), (1, 2, 0)], 1)


def test_kempe_swap_keeps_properness():
    c6 = cycle_graph(6)
    c = color_bipartite_konig(c6)
    c.uncolor((0, 1, 0))
    a = c.color((1, 2, 0))
    b = 3 - a
    path, _ = kempe_chain(c, 1, a, b)
    swap_chain(c, path, a, b)
    assert check_proper(c6, c).passed


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_n=7, max_mu=3))
def test_vizing_bound_and_sandwich(g):
    c = color_vizing_bound(g)
    assert c.is_total() and check_proper(g, c).passed
    assert max(c.colors_used(), default=0) <= g.max_degree + g.mu
    assert parity_check(g, c).passed


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_n=6, max_mu=2))
def test_exact_within_bounds(g):
    res = chromatic_index_exact(g)
    assert g.max_degree <= res.chromatic_index <= g.max_degree + g.mu
    if g.n >= 3:
        assert density_rho(g).value <= res.chromatic_index
    assert res.coloring.is_total() and check_proper(g, res.coloring).passed


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_n=7, max_mu=2))
def test_equalized_classes_differ_by_at_most_one(g):
    k = g.max_degree + g.mu
    c = equalize(g, EdgeColoring(g, k, dict(color_vizing_bound(g).items())))
    sizes = [c.class_size(i) for i in range(1, k + 1)]
    assert check_proper(g, c).passed and c.is_total()
    if sizes:
        assert max(sizes) - min(sizes) <= 1


@settings(max_examples=60, deadline=None)
@given(multigraphs(max_n=8, max_mu=3))
def test_konig_on_bipartite_inputs(g):
    side, _ = bipartition(g)
    if side is None:
        return
    c = color_bipartite_konig(g)
    assert c.is_total() and check_proper(g, c).passed
    assert max(c.colors_used(), default=0) <= g.max_degree
