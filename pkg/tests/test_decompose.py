import json
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgcolor.augment import regularize
from mgcolor.decompose import (
    Partition,
    _hall_witness,
    color_gab,
    compute_params,
    form_gab,
    palette_constants,
    partition_modification,
    partner_pairs,
    random_balanced_partition,
    run_pipeline,
    select_special_edge_sets,
)
from mgcolor.edge_color import check_proper, color_class_is_perfect_matching
from mgcolor.errors import InputError, ResourceError
from mgcolor.multigraph import (
    Multigraph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    petersen_minus_vertex,
)


def k6_state():
    return regularize(complete_graph(6), eta=Fraction(1, 6))


def test_partition_k6_any_split_balances():
    part = random_balanced_partition(complete_graph(6), [(0, 1), (2, 3), (4, 5)], 2, seed=3)
    assert len(part.A) == len(part.B) == 3
    for x, y in part.partner_pairs:
        assert (x in part.A) != (y in part.A)
    assert part.imbalance == 1


def test_partition_c6_single_pair():
    part = random_balanced_partition(cycle_graph(6), [(0, 3)], 2)
    assert part.imbalance <= 2 and (0 in part.A) != (3 in part.A)


def test_partition_tolerance_zero_on_k6():
    with pytest.raises(ResourceError) as exc:
        random_balanced_partition(complete_graph(6), [(0, 1), (2, 3), (4, 5)], 0, tries=50)
    assert exc.value.best.imbalance == 1


def test_partition_rejects_odd_order_and_bad_pairs():
    with pytest.raises(InputError):
        random_balanced_partition(complete_graph(5), [], 2)
    with pytest.raises(InputError):
        random_balanced_partition(complete_graph(6), [(0, 1), (1, 2)], 2)


@pytest.mark.parametrize("a, swaps", [([0, 2, 4], 0), ([1, 2, 4], 1), ([1, 3, 5], 3)])
def test_partition_modification_swaps(a, swaps):
    s = k6_state()
    pairs, u_map, h = partner_pairs(s)
    assert pairs == [(0, 1), (2, 3), (4, 5)]
    b = sorted(set(range(6)) - set(a))
    part = Partition(a, b, pairs, 2, 1)
    out = partition_modification(part, s, u_map, h)
    assert out.swaps == swaps and out.A == [0, 2, 4]
    assert out.imbalance <= out.tolerance


def test_partition_modification_needs_required_pairs():
    s = k6_state()
    part = Partition([0, 2, 4], [1, 3, 5], [(0, 3), (2, 1), (4, 5)], 2, 1)
    with pytest.raises(InputError):
        partition_modification(part, s, {}, 0)


def test_palette_constants_arithmetic():
    assert palette_constants(100, 110, Fraction(1, 100)) == (56, 64)


def test_compute_params_eta_too_small():
    s = k6_state()
    with pytest.raises(InputError) as exc:
        compute_params(s, Fraction(1, 12))
    assert "1/6" in str(exc.value)


def test_compute_params_marker_has_no_special_edges():
    s = k6_state()
    params = compute_params(s, Fraction(1, 6))
    assert params.e_p == 0 and params.ell1 == 0
    assert params.k == params.k_formula == 11 and params.k > params.delta_prime
    part = Partition([0, 2, 4], [1, 3, 5], [(0, 1), (2, 3), (4, 5)], 2, 1)
    sets = select_special_edge_sets(s, part, params, {})
    assert not any((sets.E1, sets.E2, sets.F1, sets.F2, sets.F21, sets.F22))


def test_gab_on_k6_is_inside_edges():
    s = k6_state()
    params = compute_params(s, Fraction(1, 6))
    part = Partition([0, 2, 4], [1, 3, 5], [(0, 1), (2, 3), (4, 5)], 2, 1)
    sets = select_special_edge_sets(s, part, params, {})
    gab = form_gab(s, part, sets)
    inside = {e for e in s.g3.edge_instances() if (e[0] in part.A) == (e[1] in part.A)}
    assert gab.edges == inside and gab.graph.edge_count() == 6


def test_color_gab_equalized_and_bounds():
    two_triangles = Multigraph(6, [(0, 2), (2, 4), (0, 4), (1, 3), (3, 5), (1, 5)])
    c = color_gab(two_triangles, 6)
    sizes = [c.class_size(i) for i in range(1, 7)]
    assert c.is_total() and check_proper(two_triangles, c).passed
    assert max(sizes) - min(sizes) <= 1
    with pytest.raises(InputError):
        color_gab(two_triangles, 1)
    c = color_gab(complete_bipartite(2, 3), 4)
    assert c.is_total() and max(c.class_size(i) for i in range(1, 5)) - min(c.class_size(i) for i in range(1, 5)) <= 1


def test_hall_witness_on_disconnected_graph():
    h = nx.Graph()
    left, right = ["a1", "a2", "a3"], ["b1", "b2", "b3"]
    h.add_nodes_from(left + right)
    h.add_edges_from([("a1", "b1"), ("a2", "b1"), ("a3", "b2"), ("a3", "b3")])
    match = nx.bipartite.hopcroft_karp_matching(h, top_nodes=left)
    z = _hall_witness(h, left, match)
    nbrs = {r for v in z for r in h.neighbors(v)}
    assert len(nbrs) < len(z) and set(z) == {"a1", "a2"}


def test_k6_with_rescue_completes():
    res = run_pipeline(complete_graph(6), Fraction(1, 6), rescue=True)
    assert res.complete
    c = res.coloring_g
    assert c.is_total() and check_proper(complete_graph(6), c).passed
    assert c.colors_used() == set(range(1, 6))
    assert all(color_class_is_perfect_matching(res.coloring, i) for i in range(1, 6))


def test_k6_without_rescue_fails_structurally():
    res = run_pipeline(complete_graph(6), Fraction(1, 6))
    assert not res.complete
    assert res.step == "inside-coloring" and res.condition == "k exceeds Delta at this order"
    assert res.params.k == 11 and res.params.delta == 5


def test_k5_is_rejected_with_certificate():
    res = run_pipeline(complete_graph(5), Fraction(1, 5), rescue=True)
    assert res.step == "regularize" and res.diagnostics["witness"]["mode"] == "found"


@pytest.mark.parametrize("rescue", [False, True])
def test_petersen_minus_vertex_fails_or_verifies(rescue):
    g = petersen_minus_vertex()
    res = run_pipeline(g, Fraction(1, 9), rescue=rescue)
    if res.complete:
        assert check_proper(g, res.coloring_g).passed and res.coloring_g.is_total()
    else:
        assert res.step and res.condition


def test_eta_too_small_raises():
    with pytest.raises(InputError):
        run_pipeline(complete_graph(6), Fraction(1, 100))
    with pytest.raises(InputError):
        run_pipeline(Multigraph(0), 1)


def test_empty_edge_set_is_trivial():
    res = run_pipeline(Multigraph(4), Fraction(1, 4))
    assert res.complete and res.coloring_g.k == 0


def test_report_is_deterministic():
    g = complete_bipartite(5, 5)
    one = run_pipeline(g, Fraction(1, 10), seed=4, rescue=True).to_json()
    two = run_pipeline(g, Fraction(1, 10), seed=4, rescue=True).to_json()
    assert one == two
    assert json.loads(one)["outcome"] == "complete"


@pytest.mark.parametrize("g", [complete_graph(8), complete_graph(12), complete_bipartite(4, 4)],
                         ids=["K8", "K12", "K44"])
def test_families_complete_with_rescue(g):
    res = run_pipeline(g, Fraction(1, g.n), rescue=True)
    assert res.complete
    assert res.coloring_g.colors_used() == set(range(1, g.max_degree + 1))
    kl = res.params.k + res.params.ell
    assert all(color_class_is_perfect_matching(res.coloring, i) for i in range(1, kl + 1))


@st.composite
def small_graphs(draw):
    n = draw(st.integers(4, 10))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Multigraph(n, [e for e in pairs if draw(st.booleans())])


@settings(max_examples=40, deadline=None)
@given(small_graphs(), st.booleans(), st.integers(0, 5))
def test_pipeline_never_emits_invalid_coloring(g, rescue, seed):
    if g.edge_count() == 0:
        return
    res = run_pipeline(g, Fraction(1, g.n), seed=seed, rescue=rescue)
    if res.complete:
        assert res.coloring_g.is_total() and check_proper(g, res.coloring_g).passed
        assert max(res.coloring_g.colors_used()) <= g.max_degree
    else:
        assert res.step in {"inside-coloring", "one-factor-extension", "residual-coloring", "finish", "lift",
                            "regularize", "setup", "internal"} or res.step.startswith("residual-coloring/")
