"""Supergraph constructions that make a graph regular without overfullness.

Two families live here.  The dense-deficiency constructions add a fresh
vertex set ``W`` and wire deficient vertices to it (``build_case_a1_supergraph``
and ``build_case_a2_supergraph``).  The regularization chain
``G -> G0 -> G1 -> G2 -> G3`` pads to even order, adds the split bipartite
realization of the deficiency sequence, identifies low-degree triples, and
closes the remaining deficiencies with parallel edges.

From ``G1`` on, graphs are labelled by sorted position: vertex ``i`` is
``v_{i+1}`` in the ascending-degree order of ``G0``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import networkx as nx

from .degree_seq import (
    RealizationGap,
    build_regular_circulant,
    realize_admissible_bipartite,
    realize_near_regular,
)
from .errors import DomainError, InputError, InternalError
from .multigraph import EdgeInstance, Multigraph, deficiency
from .overfull import find_delta_overfull_subgraph, min_degree_no_overfull, robust_expander_check


@dataclass
class AugmentedGraph:
    """Supergraph ``graph`` whose first ``len(original_vertices)`` vertices are the input."""

    graph: Multigraph
    original_vertices: list[int]
    W: list[int]
    checks: dict[str, bool] = field(default_factory=dict)
    params: dict[str, object] = field(default_factory=dict)
    removed_matching: list[tuple[int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "original_vertices": len(self.original_vertices),
            "W": list(self.W),
            "checks": dict(self.checks),
            "params": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in self.params.items()},
            "removed_matching": [list(e) for e in self.removed_matching],
        }


def _require(checks: dict[str, bool], name: str, ok: bool, witness=None) -> None:
    checks[name] = bool(ok)
    if not ok:
        raise DomainError(f"construction inequality fails: {name}", witness={"inequality": name, "detail": witness})


def _deficient_list(g: Multigraph, delta: int) -> list[int]:
    """Each deficient vertex repeated ``df(v)`` times, consecutively, by vertex index."""
    out: list[int] = []
    for v in range(g.n):
        out.extend([v] * (delta - g.degree(v)))
    return out


def _w_index(i: int, size: int) -> int:
    """0-based position of ``w_i`` with the 1-based index ``i`` taken modulo ``size``."""
    return (i - 1) % size


def build_case_a1_supergraph(g: Multigraph, eta) -> AugmentedGraph:
    """Simple supergraph with the same maximum degree and at least two minimum-degree vertices.

    A ``d``-regular circulant on the new set ``W`` absorbs the deficiency,
    with the deficient edges distributed cyclically over ``W``.
    """
    if not g.is_simple():
        raise InputError("the dense-deficiency construction needs a simple graph")
    if g.n == 0:
        raise InputError("graph is empty")
    eta = Fraction(eta)
    n, delta = g.n, g.max_degree
    df = deficiency(g)
    checks: dict[str, bool] = {}
    base = math.floor(2 * delta - n - eta * eta * n)
    size = base if (base - n) % 2 == 0 else base - 1
    _require(checks, "|W| >= 3", size >= 3, {"|W|": size})
    q = math.floor(Fraction(delta) - Fraction(df, size))
    d = q - 3 if (q - 3) % 2 == 0 else q - 2
    _require(checks, "d >= 2", d >= 2, {"d": d})
    _require(checks, "d < |W|", d < size, {"d": d, "|W|": size})
    worst = max(delta - x for x in g.degrees())
    _require(checks, "df(v) <= |W| - 2", worst <= size - 2, {"max df": worst, "|W|": size})

    h = Multigraph(n + size)
    for u, v, m in g.pairs():
        h.add_edge(u, v, m)
    inner = build_regular_circulant(size, d)
    for u, v, m in inner.pairs():
        h.add_edge(n + u, n + v, m)
    ends = _deficient_list(g, delta)
    for i, v in enumerate(ends, start=1):
        if i == df and df % size == size - 1:
            w = 0
        else:
            w = _w_index(i, size)
        h.add_edge(v, n + w)

    _require(checks, "H simple", h.is_simple())
    _require(checks, "Delta(H) = Delta", h.max_degree == delta)
    wdeg = [h.degree(n + i) for i in range(size)]
    _require(checks, "W degrees in [Delta-4, Delta]", all(delta - 4 <= x <= delta for x in wdeg),
             {"W degrees": wdeg})
    _require(checks, "original vertices reach Delta", all(h.degree(v) == delta for v in range(n)))
    low = h.min_degree
    _require(checks, "two minimum-degree vertices", h.degrees().count(low) >= 2)
    checks["even order"] = h.n % 2 == 0
    checks["min-degree lemma applies"] = min_degree_no_overfull(h)
    return AugmentedGraph(
        h, list(range(n)), list(range(n, n + size)), checks,
        {"eta": eta, "delta": delta, "df": df, "|W|": size, "d": d},
    )


def _matching_saturating_top(g: Multigraph) -> list[tuple[int, int]]:
    """A matching covering every maximum-degree vertex, or DomainError."""
    delta = g.max_degree
    top = {v for v in range(g.n) if g.degree(v) == delta}
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    for u, v, _ in g.pairs():
        h.add_edge(u, v, weight=(u in top) + (v in top))
    match = nx.max_weight_matching(h, maxcardinality=False)
    covered = {x for e in match for x in e}
    missed = sorted(top - covered)
    if missed:
        raise DomainError("no matching covers every maximum-degree vertex", witness={"uncovered": missed})
    return sorted(tuple(sorted(e)) for e in match)


def build_case_a2_supergraph(g: Multigraph, eta, remove_matching: bool = False,
                             expander_check: bool = False, seed: int = 0) -> AugmentedGraph:
    """Regular simple supergraph on ``n + |W|`` vertices.

    ``W`` is the smallest size of the parity of ``n`` with
    ``|W| >= (Delta+1)/2`` and ``|W| >= Delta - ceil(df/|W|) + 2``.  An odd
    maximum degree is rejected unless ``remove_matching`` asks for a matching
    covering the maximum-degree vertices to be deleted first.
    """
    if not g.is_simple():
        raise InputError("the regular supergraph construction needs a simple graph")
    if g.n == 0:
        raise InputError("graph is empty")
    eta = Fraction(eta)
    checks: dict[str, bool] = {}
    removed: list[tuple[int, int]] = []
    if g.max_degree % 2:
        if not remove_matching:
            raise DomainError("maximum degree is odd; enable matching removal first",
                              witness={"inequality": "Delta even", "delta": g.max_degree})
        removed = _matching_saturating_top(g)
        g = g.copy()
        for u, v in removed:
            g.remove_edge(u, v)
    n, delta = g.n, g.max_degree
    df = deficiency(g)
    _require(checks, "df > 0", df > 0, {"df": df})
    checks["df > Delta + 1"] = df > delta + 1

    size = None
    for w in range(1, 2 * delta + 4):
        if (w - n) % 2 == 0 and 2 * w >= delta + 1 and w >= delta - math.ceil(Fraction(df, w)) + 2:
            size = w
            break
    _require(checks, "W exists", size is not None)
    ell = df % size
    if ell:
        d = delta - math.ceil(Fraction(df, size)) + 1
        targets = [d - 1] * ell + [d] * (size - ell)
    else:
        # every w receives exactly df/|W| edges, so all targets coincide
        d = delta - df // size
        targets = [d] * size
    _require(checks, "d >= 2", d >= 2, {"d": d})
    _require(checks, "|W| >= d + 1", size >= d + 1, {"d": d, "|W|": size})
    checks["|W| >= 5/6 Delta"] = 6 * size >= 5 * delta
    _require(checks, "delta + |W| >= Delta", g.min_degree + size >= delta,
             {"delta": g.min_degree, "|W|": size, "Delta": delta})

    # realize_near_regular puts the degree-d vertices first; w_1..w_ell are the low ones
    if ell:
        r = realize_near_regular(size, d, size - ell)
        wpos = [size - ell + i for i in range(ell)] + list(range(size - ell))
    else:
        r = realize_near_regular(size, d, size)
        wpos = list(range(size))
    h = Multigraph(n + size)
    for u, v, m in g.pairs():
        h.add_edge(u, v, m)
    for u, v, m in r.pairs():
        h.add_edge(n + u, n + v, m)
    for i, v in enumerate(_deficient_list(g, delta), start=1):
        h.add_edge(v, n + wpos[_w_index(i, size)])
    _require(checks, "R realizes the targets", [r.degree(wpos[i]) for i in range(size)] == targets)
    _require(checks, "H simple", h.is_simple())
    _require(checks, "H Delta-regular", h.is_regular() and h.max_degree == delta)
    if expander_check:
        verdict = robust_expander_check(h, eta * eta, eta, mode="sampled", seed=seed)
        checks["robust expander (sampled)"] = verdict.expander
    return AugmentedGraph(
        h, list(range(n)), list(range(n, n + size)), checks,
        {"eta": eta, "delta": delta, "df": df, "|W|": size, "d": d, "ell": ell},
        removed,
    )


# -- regularization chain ----------------------------------------------------------
@dataclass
class PipelineState:
    """Everything the regularization chain produces, in position labels from ``g1`` on.

    ``members[i]`` lists the ``g0`` vertices merged into position ``i``;
    ``pad`` is the ``g0`` label of the padding vertex or None.
    """

    g: Multigraph
    delta: int
    g0: Multigraph
    pad: int | None
    order: list[int]
    g1: Multigraph | None = None
    L: Multigraph | None = None
    p1: int = 0
    g2: Multigraph | None = None
    g3: Multigraph | None = None
    p: int = 0
    members: list[list[int]] = field(default_factory=list)
    identification_log: list[dict] = field(default_factory=list)
    added: dict[str, list] = field(default_factory=dict)
    diagnostics: dict[str, object] = field(default_factory=dict)
    U: set[int] = field(default_factory=set)
    U_star: set[int] = field(default_factory=set)
    g_idx: int = 0
    h_idx: int = 0
    eta: Fraction | None = None

    @property
    def m(self) -> int:
        cur = self.g3 or self.g2 or self.g1
        return cur.n if cur is not None else self.g0.n

    @property
    def p_is_m(self) -> bool:
        return self.p >= self.m

    @property
    def L_star(self) -> Multigraph:
        """Copies beyond the first on every pair of ``g3``."""
        if self.g3 is None:
            raise InputError("L* needs the regular graph g3")
        return Multigraph(self.g3.n, [(u, v, m - 1) for u, v, m in self.g3.pairs() if m > 1])

    def g0_degree(self, pos: int) -> int:
        """Degree in ``g0`` of the original occupant of position ``pos`` (0-based)."""
        return self.g0.degree(self.members[pos][0])

    def vertex_map(self) -> dict[int, int]:
        """``g0`` label -> current position."""
        return {x: i for i, ms in enumerate(self.members) for x in ms}

    def lift_edges(self) -> tuple[dict[EdgeInstance, EdgeInstance], list[EdgeInstance]]:
        """Map each edge instance of ``g0`` into ``g3``; edges collapsed to loops are listed apart."""
        target = self.g3 or self.g2
        where = self.vertex_map()
        used: dict[tuple[int, int], int] = {}
        out: dict[EdgeInstance, EdgeInstance] = {}
        lost: list[EdgeInstance] = []
        for e in self.g0.edge_instances():
            a, b = where[e[0]], where[e[1]]
            if a == b:
                lost.append(e)
                continue
            a, b = min(a, b), max(a, b)
            k = used.get((a, b), 0)
            if k >= target.multiplicity(a, b):
                raise InternalError("an edge of g0 has no image in the regular graph", trace={"edge": e})
            used[(a, b)] = k + 1
            out[e] = (a, b, k)
        return out, lost

    def to_dict(self, out_dir: str | Path | None = None) -> dict:
        stages = {}
        for name in ("g0", "g1", "g2", "g3"):
            gr = getattr(self, name)
            if gr is None:
                continue
            if out_dir is not None:
                path = Path(out_dir) / f"{name}.txt"
                path.write_text(gr.to_text())
                stages[name] = {"file": str(path), "n": gr.n, "edges": gr.edge_count()}
            else:
                stages[name] = {"n": gr.n, "edges": [list(x) for x in gr.pairs()]}
        return {
            "delta": self.delta,
            "pad": self.pad,
            "order": list(self.order),
            "p_initial": self.p1,
            "p": self.p,
            "p_is_m": self.p_is_m,
            "members": [list(x) for x in self.members],
            "identification_log": list(self.identification_log),
            "added": {k: [list(x) for x in v] for k, v in self.added.items()},
            "U": sorted(self.U),
            "U_star": sorted(self.U_star),
            "g_idx": self.g_idx,
            "h_idx": self.h_idx,
            "diagnostics": self.diagnostics,
            "stages": stages,
        }

    def to_json(self, out_dir: str | Path | None = None) -> str:
        return json.dumps(self.to_dict(out_dir), indent=2, default=str)


def build_g0(g: Multigraph) -> Multigraph:
    """``g`` itself for even order, else ``g`` plus one isolated vertex."""
    g0 = g.copy()
    if g0.n % 2:
        g0.add_vertex()
    return g0


def _positions(g0: Multigraph, pad: int | None) -> list[int]:
    return sorted(range(g0.n), key=lambda v: (g0.degree(v), 0 if v == pad else 1, v))


def build_g1(g: Multigraph, check_overfull: bool = True, overfull_cap: int = 16) -> PipelineState:
    """Pad, sort by degree, and add the split bipartite realization of the deficiencies."""
    if g.n == 0:
        raise InputError("graph is empty")
    g0 = build_g0(g)
    pad = g.n if g0.n != g.n else None
    delta = g0.max_degree
    if check_overfull and g0.n <= overfull_cap and delta > 0:
        cert = find_delta_overfull_subgraph(g0, cap=overfull_cap)
        if cert.found:
            raise DomainError("input has a Delta-overfull subgraph", witness=cert.to_dict())
    order = _positions(g0, pad)
    state = PipelineState(g, delta, g0, pad, order)
    m = g0.n
    defs = [delta - g0.degree(v) for v in order]
    g1 = Multigraph(m)
    where = {v: i for i, v in enumerate(order)}
    for u, v, mult in g0.pairs():
        g1.add_edge(where[u], where[v], mult)
    if sum(defs) == 0:
        L = Multigraph(m)
        p = m
    else:
        try:
            r = realize_admissible_bipartite(defs)
        except RealizationGap:
            raise
        except DomainError as exc:
            raise DomainError(f"deficiency sequence is not admissible: {exc}",
                              witness={"deficiencies": defs, "reason": exc.witness}) from exc
        if r.order != list(range(m)):
            raise InternalError("deficiencies were not presented in sorted order", trace=r.order)
        L, p = r.graph, r.p
    for u, v, mult in L.pairs():
        g1.add_edge(u, v, mult)
    if g1.max_degree != delta:
        raise InternalError("adding L raised the maximum degree", trace=g1.degrees())
    low = [i for i in range(m) if g1.degree(i) < delta]
    if any(i > p for i in low):
        raise InternalError("a vertex after v_{p+1} is still deficient", trace={"p": p, "low": low})
    if p < m and (delta - g1.degree(p)) % 2:
        raise InternalError("df(v_{p+1}) is odd in G1", trace={"p": p})
    state.g1, state.L, state.p1, state.p = g1, L, p, p
    state.members = [[v] for v in order]
    return state


def _triple_cut(gr: Multigraph, p: int) -> int:
    return gr.cut([p - 2, p - 1, p])


def vertex_identification(state: PipelineState) -> PipelineState:
    """While fewer than Delta edges leave ``{v_{p-1}, v_p, v_{p+1}}``, merge the triple into ``v_{p-1}``."""
    if state.g1 is None:
        raise InputError("run build_g1 first")
    gr = state.g1.copy()
    members = [list(x) for x in state.members]
    p = state.p
    log: list[dict] = []
    while p < gr.n and _triple_cut(gr, p) < state.delta:
        if p - 2 < 2:
            raise InternalError("identification would push p below 2", trace={"log": log, "p": p})
        a, b, c = p - 2, p - 1, p
        cut = _triple_cut(gr, p)
        new = Multigraph(gr.n - 2)
        remap = lambda x: a if x in (b, c) else (x - 2 if x > c else x)  # noqa: E731
        loops = 0
        for u, v, mult in gr.pairs():
            x, y = remap(u), remap(v)
            if x == y:
                loops += mult
            else:
                new.add_edge(x, y, mult)
        members = members[:a] + [members[a] + members[b] + members[c]] + members[c + 1:]
        log.append({"triple": [a + 1, b + 1, c + 1], "survivor": a + 1, "cut": cut,
                    "loops_removed": loops, "p_after": p - 2})
        gr = new
        p -= 2
    state.g2 = gr
    state.p = p
    state.members = members
    state.identification_log = log
    diag = {}
    if p < gr.n:
        diag["triple cut >= Delta"] = _triple_cut(gr, p) >= state.delta
        rest = gr.degree(p) - gr.multiplicity(p, p - 2) - gr.multiplicity(p, p - 1)
        diag["d(v_{p+1}) outside v_{p-1}, v_p >= Delta/3"] = 3 * rest >= state.delta
    diag["paired deficiencies equal"] = all(
        gr.degree(2 * i) == gr.degree(2 * i + 1) for i in range(min(p, gr.n) // 2)
    )
    state.diagnostics.update(diag)
    return state


def edge_addition(state: PipelineState) -> PipelineState:
    """Close every deficiency with parallel edges inside the pairs and the final triple."""
    if state.g2 is None:
        raise InputError("run vertex_identification first")
    gr = state.g2.copy()
    delta, p = state.delta, state.p
    df = lambda i: delta - gr.degree(i)  # noqa: E731
    added: dict[str, list] = {"triple": [], "pairs": []}
    last_pair = p // 2 if p >= gr.n else p // 2 - 1
    if p < gr.n:
        a, b, c = p - 2, p - 1, p
        dc = df(c)
        if dc % 2:
            raise InternalError("df(v_{p+1}) is odd in G2", trace={"p": p, "df": dc})
        if df(a) != df(b):
            raise InternalError("df(v_{p-1}) and df(v_p) differ", trace={"p": p})
        mid = df(a) - dc // 2
        if mid < 0:
            raise DomainError("df(v_{p-1}) < df(v_{p+1})/2; the closing triple cannot be completed",
                              witness={"inequality": "df(v_{p-1}) >= df(v_{p+1})/2",
                                       "df(v_{p-1})": df(a), "df(v_{p+1})": dc})
        for x, y, k in ((c, a, dc // 2), (c, b, dc // 2), (a, b, mid)):
            if k:
                gr.add_edge(x, y, k)
                added["triple"].append((min(x, y), max(x, y), k))
    for i in range(last_pair):
        x, y = 2 * i, 2 * i + 1
        if df(x) != df(y):
            raise InternalError("paired deficiencies differ", trace={"pair": (x + 1, y + 1)})
        if df(x):
            k = df(x)
            gr.add_edge(x, y, k)
            added["pairs"].append((x, y, k))
    bad = [v for v in range(gr.n) if gr.degree(v) != delta]
    if bad:
        raise InternalError("G3 is not Delta-regular", trace={"vertices": bad, "degrees": gr.degrees()})
    state.g3 = gr
    state.added = added
    if p < gr.n:
        state.diagnostics["e(G3[triple]) <= Delta"] = gr.e_within([p - 2, p - 1, p]) <= delta
    return state


@dataclass
class G3Verdict:
    status: str
    regular: bool
    contains_g2: bool
    overfull: dict | None
    cross_check: dict | None = None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "regular": self.regular,
            "contains_g2": self.contains_g2,
            "overfull": self.overfull,
            "cross_check": self.cross_check,
        }


def verify_g3(state: PipelineState, cap: int = 16) -> G3Verdict:
    """Regularity, containment of ``g2``, and overfull status of ``g3``.

    A found overfull set is reported as ``diagnostic-fail``, never raised.
    Above ``cap`` vertices the exhaustive cross-check is skipped and the
    verdict is ``partial`` unless the cut criterion already settled it.
    """
    g3 = state.g3
    if g3 is None:
        raise InputError("run edge_addition first")
    regular = g3.is_regular() and g3.max_degree == state.delta
    contains = state.g2.is_subgraph_of(g3)
    if not regular:
        return G3Verdict("diagnostic-fail", False, contains, None)
    cert = find_delta_overfull_subgraph(g3, mode="regular-cut")
    cross = None
    if g3.n <= cap:
        cross = find_delta_overfull_subgraph(g3, cap=cap, mode="exhaustive").to_dict()
        if (cross["mode"] == "found") != cert.found:
            raise InternalError("cut criterion and exhaustive search disagree", trace=cross)
    status = "pass" if contains and not cert.found else "diagnostic-fail"
    return G3Verdict(status, regular, contains, cert.to_dict(), cross)


def classify_vertices(state: PipelineState, eta) -> PipelineState:
    """Fill ``U``, ``U_star``, ``g_idx`` and ``h_idx`` (1-based indices) for threshold ``eta``."""
    if state.g3 is None:
        raise InputError("run edge_addition first")
    eta = Fraction(eta)
    n = state.g.n
    delta = state.delta
    U = set()
    for i, ms in enumerate(state.members):
        if any(x != state.pad and delta - state.g.degree(x) >= eta * n for x in ms):
            U.add(i)
    state.U = U
    state.U_star = U | {0}
    state.eta = eta
    state.g_idx = max((i + 1 for i in range(state.m) if state.g0_degree(i) < delta), default=0)
    h = 0
    while h < state.m and h in state.U_star:
        h += 1
    state.h_idx = min(h, state.g_idx) if state.g_idx else h
    return state


def regularize(g: Multigraph, eta=None, check_overfull: bool = True) -> PipelineState:
    """Run the whole chain ``G -> G3`` and, when ``eta`` is given, classify vertices."""
    state = build_g1(g, check_overfull=check_overfull)
    vertex_identification(state)
    edge_addition(state)
    if eta is not None:
        classify_vertices(state, eta)
    return state


__all__ = [
    "AugmentedGraph", "build_case_a1_supergraph", "build_case_a2_supergraph", "PipelineState",
    "build_g0", "build_g1", "vertex_identification", "edge_addition", "G3Verdict", "verify_g3",
    "classify_vertices", "regularize",
]
