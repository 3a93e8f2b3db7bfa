"""Decompose the regular graph ``G3`` into perfect matchings plus a nearly bipartite rest.

The pipeline has five steps.  It splits the vertices into balanced halves
``A`` and ``B``, colors the inside graph ``G_AB`` with ``k`` colors, and
extends every class to a perfect matching by alternating-path exchanges.  It
then colors the uncolored inside edges with ``l`` further classes, each
extended by a perfect matching of the uncolored cross edges.  The last step
colors what remains, which is bipartite apart from the edges at one vertex.

All edge instances are ``(u, v, copy)`` triples of ``G3``; vertices are the
sorted positions used by ``augment`` (vertex ``i`` is ``v_{i+1}``).
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .augment import PipelineState, regularize, verify_g3
from .edge_color import (
    EdgeColoring,
    _Budget,
    _heuristic_coloring,
    _search_coloring,
    bipartition,
    check_proper,
    color_bipartite_konig,
    color_bounded,
    color_class_is_perfect_matching,
    color_nearly_bipartite,
    color_vizing_bound,
    equalize,
    parity_check,
    submultigraph,
)
from .errors import DomainError, InputError, InternalError, MgColorError, ResourceError
from .multigraph import EdgeInstance, Multigraph, norm


class StepFailure(DomainError):
    """A pipeline step could not meet one of its conditions."""

    def __init__(self, step: str, condition: str, diagnostics: dict | None = None):
        super().__init__(f"step {step}: {condition}", witness=diagnostics)
        self.step = step
        self.condition = condition
        self.diagnostics = diagnostics or {}


def _ceil_sqrt(x: int) -> int:
    r = math.isqrt(x)
    return r if r * r == x else r + 1


def _audit(log: list, name: str, passed: bool, value=None, bound=None) -> bool:
    log.append({"name": name, "passed": bool(passed), "value": _plain(value), "bound": _plain(bound)})
    return passed


def _plain(x):
    if isinstance(x, Fraction):
        return float(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    return x


# -- Step 1: partition ----------------------------------------------------------------
@dataclass
class Partition:
    A: list[int]
    B: list[int]
    partner_pairs: list[tuple[int, int]]
    tolerance: float
    imbalance: int
    swaps: int = 0

    def side(self) -> dict[int, int]:
        """Vertex -> 0 for ``A``, 1 for ``B``."""
        out = {v: 0 for v in self.A}
        out.update({v: 1 for v in self.B})
        return out

    def to_dict(self) -> dict:
        return {
            "A": list(self.A),
            "B": list(self.B),
            "partner_pairs": [list(x) for x in self.partner_pairs],
            "tolerance": self.tolerance,
            "imbalance": self.imbalance,
            "swaps": self.swaps,
        }


def _imbalance(g: Multigraph, a: set[int]) -> int:
    worst = 0
    for v in range(g.n):
        ns = g.neighbors(v)
        da = sum(1 for u in ns if u in a)
        worst = max(worst, abs(2 * da - len(ns)))
    return worst


def random_balanced_partition(g: Multigraph, pairs, tolerance, seed: int = 0, tries: int = 200) -> Partition:
    """Equal halves splitting every pair, with ``|d^s(v,A) - d^s(v,B)| <= tolerance``."""
    if g.n % 2:
        raise InputError(f"partition needs an even vertex count, got {g.n}")
    pairs = [tuple(p) for p in pairs]
    seen: set[int] = set()
    for x, y in pairs:
        for v in (x, y):
            if not 0 <= v < g.n or v in seen:
                raise InputError(f"partner pairs must be disjoint vertices of the graph, bad vertex {v}")
            seen.add(v)
        if x == y:
            raise InputError(f"pair ({x}, {y}) repeats a vertex")
    rest = [v for v in range(g.n) if v not in seen]
    rng = random.Random(seed)
    best: Partition | None = None
    for _ in range(max(1, tries)):
        a = {x if rng.random() < 0.5 else y for x, y in pairs}
        free = list(rest)
        rng.shuffle(free)
        a.update(free[: len(free) // 2])
        score = _imbalance(g, a)
        part = Partition(sorted(a), sorted(set(range(g.n)) - a), list(pairs), tolerance, score)
        if best is None or score < best.imbalance:
            best = part
        if score <= tolerance:
            return part
    raise ResourceError(
        f"no balanced partition within tolerance {tolerance} after {tries} tries "
        f"(best imbalance {best.imbalance})",
        best=best,
    )


def _pairing(state: PipelineState, h_eff: int, any_partner: bool):
    m, p = state.m, state.p
    g_eff = max(state.g_idx, h_eff)
    pairs = [(2 * i, 2 * i + 1) for i in range(p // 2)]
    tail = []
    for i in range(1, math.ceil((g_eff - h_eff) / 2) + 1):
        x, y = h_eff + 2 * i - 2, h_eff + 2 * i - 1
        if y >= m:
            return None
        tail.append((x, y))
    used = {v for pr in pairs + tail for v in pr} | set(range(p, h_eff))
    pool = [v for v in range(m - 1, -1, -1)
            if v not in used and v != g_eff
            and (any_partner or (state.g3.degree(v) == state.delta and state.g0_degree(v) == state.delta))]
    if len(pool) < h_eff - p:
        return None
    u_map = dict(zip(range(p, h_eff), pool))
    return pairs + sorted(u_map.items()) + tail, u_map


def partner_pairs(state: PipelineState, relax: bool = False) -> tuple[list[tuple[int, int]], dict[int, int], int]:
    """Partner pairs for the partition, the map ``j -> u_j`` and the effective ``h``.

    Positions are 0-based.  When ``v_{p+1}`` exists but lies outside ``U*``,
    it is still paired with a maximum-degree partner (effective ``h`` is
    at least ``p+1``).  With ``relax``, a shorter prefix and then any unused
    vertex are accepted when maximum-degree partners run out.
    """
    m, p = state.m, state.p
    if p >= m:
        return [(2 * i, 2 * i + 1) for i in range(m // 2)], {}, state.h_idx
    h_eff = max(state.h_idx, p + 1)
    tries = [(h_eff, False)]
    if relax:
        tries += [(h, False) for h in range(h_eff - 1, p, -1)] + [(p + 1, True)]
    for h, any_partner in tries:
        got = _pairing(state, h, any_partner)
        if got is not None:
            return got[0], got[1], h
    if relax:
        # last resort: the top vertex partners v_{p+1}, the rest pair up in order
        pairs = [(2 * i, 2 * i + 1) for i in range(p // 2)] + [(p, m - 1)]
        rest = list(range(p + 1, m - 1))
        pairs += [(rest[j], rest[j + 1]) for j in range(0, len(rest), 2)]
        return pairs, {p: m - 1}, p + 1
    raise DomainError("not enough maximum-degree vertices to partner v_{p+1}..v_h",
                      witness={"h": h_eff, "p": p, "m": m})


def partition_modification(part: Partition, state: PipelineState, u_map: dict[int, int] | None = None,
                           h_eff: int | None = None, eta=None) -> Partition:
    """Swap partner pairs so ``v_{2i-1} in A``, ``v_{2i} in B`` and ``v_{p+1}..v_h in B``."""
    if u_map is None or h_eff is None:
        _, u_map, h_eff = partner_pairs(state)
    eta = Fraction(state.eta if eta is None else eta)
    partner = {}
    for x, y in part.partner_pairs:
        partner[x] = y
        partner[y] = x
    a = set(part.A)
    swaps = 0
    p = min(state.p, state.m)
    for i in range(p // 2):
        x, y = 2 * i, 2 * i + 1
        if partner.get(x) != y:
            raise InputError(f"required pair (v_{x + 1}, v_{y + 1}) is missing")
        if x not in a:
            a.discard(y)
            a.add(x)
            swaps += 1
    if state.p < state.m:
        for j in range(state.p, h_eff):
            u = u_map.get(j)
            if u is None or partner.get(j) != u:
                raise InputError(f"required pair for v_{j + 1} is missing")
            if j in a:
                a.discard(j)
                a.add(u)
                swaps += 1
    tol = part.tolerance + 4 * float(eta) * state.g.n + 2
    score = _imbalance(state.g3.underlying_simple(), a)
    return Partition(sorted(a), sorted(set(range(state.m)) - a), part.partner_pairs, tol, score, swaps)


# -- parameters ------------------------------------------------------------------------
def palette_constants(delta: int, n: int, eta) -> tuple[int, int]:
    """``Delta' = ceil(Delta/2 + 5.3 eta n)`` and ``k = Delta' + ceil(sqrt(Delta'))``."""
    eta = Fraction(eta)
    dp = math.ceil(Fraction(delta, 2) + Fraction(53, 10) * eta * n)
    return dp, dp + _ceil_sqrt(max(dp, 0))


@dataclass
class DecompositionParams:
    eta: Fraction
    n: int
    delta: int
    delta_prime: int
    k_formula: int
    k: int
    e_p: int
    tolerance: float
    ell1: int = 0
    ell2: int = 0
    k_clamped: bool = False
    caps: dict[str, float] = field(default_factory=dict)
    inequalities: list[dict] = field(default_factory=list)

    @property
    def ell(self) -> int:
        return self.ell1 + self.ell2

    def to_dict(self) -> dict:
        return {
            "eta": str(self.eta),
            "n": self.n,
            "delta": self.delta,
            "delta_prime": self.delta_prime,
            "k_formula": self.k_formula,
            "k": self.k,
            "k_clamped": self.k_clamped,
            "e_p": self.e_p,
            "ell1": self.ell1,
            "ell2": self.ell2,
            "ell": self.ell,
            "tolerance": self.tolerance,
            "caps": dict(self.caps),
            "inequalities": list(self.inequalities),
        }


def _e_p(g3: Multigraph, p: int, k: int, eta: Fraction, n: int) -> int:
    if p >= g3.n:
        return 0
    e = g3.multiplicity(p - 1, p)
    half_up = (e + 1) // 2
    # ceil(e/2) < 6 sqrt(eta) n, compared on squares
    if half_up * half_up < 36 * eta * n * n:
        return 0
    tri = g3.multiplicity(p - 2, p - 1) // 2 + g3.multiplicity(p - 2, p) // 2 + e // 2
    return max(0, min(k - tri, math.floor(6 * eta * n)))


def compute_params(state: PipelineState, eta, k: int | None = None) -> DecompositionParams:
    """Constants for this instance; ``k`` overrides the palette for fallback retries."""
    eta = Fraction(eta)
    n = state.g.n
    if eta <= 0 or eta * n < 1:
        need = Fraction(1, max(n, 1))
        raise InputError(f"eta*n = {float(eta * n):.3f} < 1; use eta >= {need} for n = {n}")
    if state.g3 is None:
        raise InputError("state must be complete through g3")
    delta = state.delta
    dp, k_formula = palette_constants(delta, n, eta)
    k_used = k_formula if k is None else k
    e_p = _e_p(state.g3, state.p, k_used, eta, n)
    caps = {
        "tolerance": n ** (2 / 3),
        "s31_edges": float(18 * eta * n * n),
        "good_degree": 5 * math.sqrt(eta) * n,
        "missing": float(9 * eta * n - 2),
        "path_length": 13,
        "r_edges_per_pair": 4,
    }
    params = DecompositionParams(eta, n, delta, dp, k_formula, k_used, e_p, caps["tolerance"],
                                 k_clamped=k_used != k_formula, caps=caps)
    log = params.inequalities
    _audit(log, "k > Delta'", k_formula > dp, k_formula, dp)
    _audit(log, "k <= Delta", k_used <= delta, k_used, delta)
    if state.p < state.m:
        g3, p = state.g3, state.p
        tri = g3.multiplicity(p - 2, p - 1) // 2 + g3.multiplicity(p - 2, p) // 2 + g3.multiplicity(p - 1, p) // 2
        _audit(log, "k - sum floor(e/2) over the triple > 5.3 eta n", k_used - tri > Fraction(53, 10) * eta * n,
               k_used - tri, Fraction(53, 10) * eta * n)
    _audit(log, "e_p = 0 or e_p > 5.3 eta n", e_p == 0 or e_p > Fraction(53, 10) * eta * n, e_p)
    return params


# -- Step 2: special edge sets and G_AB -------------------------------------------------
@dataclass
class SpecialEdgeSets:
    E1: list[EdgeInstance] = field(default_factory=list)
    E2: list[EdgeInstance] = field(default_factory=list)
    F1: list[EdgeInstance] = field(default_factory=list)
    F2: list[EdgeInstance] = field(default_factory=list)
    F21: list[EdgeInstance] = field(default_factory=list)
    F22: list[EdgeInstance] = field(default_factory=list)
    u_next: int | None = None

    def to_dict(self) -> dict:
        out = {k: [list(e) for e in getattr(self, k)] for k in ("E1", "E2", "F1", "F2", "F21", "F22")}
        out["u_next"] = self.u_next
        return out


def _g0_copies(state: PipelineState) -> dict[tuple[int, int], int]:
    lifted, _ = state.lift_edges()
    out: dict[tuple[int, int], int] = {}
    for a, b, _ in lifted.values():
        out[(a, b)] = out.get((a, b), 0) + 1
    return out


def select_special_edge_sets(state: PipelineState, part: Partition, params: DecompositionParams,
                             u_map: dict[int, int]) -> SpecialEdgeSets:
    """``E1, E2`` at the partner of ``v_{p+1}``, the split ``F1/F2`` and the sets ``F21, F22``."""
    g3, p = state.g3, state.p
    if p >= state.m:
        return SpecialEdgeSets()
    side = part.side()
    vp, vq = p - 1, p
    e = g3.multiplicity(vp, vq)
    size = max(e - e // 2 - params.e_p, 0)
    u = u_map.get(p)
    sets = SpecialEdgeSets(u_next=u)
    if size:
        if u is None or side[u] != 0:
            raise DomainError("the partner of v_{p+1} is missing or not in A", witness={"u": u})
        inside = sorted(w for w in g3.neighbors(u) if side[w] == 0)
        cross = sorted(w for w in g3.neighbors(u) if side[w] == 1 and w not in state.U)
        if len(inside) < size or len(cross) < size:
            raise DomainError(
                "not enough simple neighbors of u_{p+1} for E1/E2",
                witness={"need": size, "inside": len(inside), "cross": len(cross)},
            )
        sets.E1 = [(min(u, w), max(u, w), 0) for w in inside[:size]]
        sets.E2 = [(min(u, w), max(u, w), 0) for w in cross[:size]]
        added = e - _g0_copies(state).get((vp, vq), 0)
        if added < size:
            raise DomainError("F1 would remove an edge of the input graph",
                              witness={"F1": size, "non-input copies": added})
    sets.F1 = [(vp, vq, e - 1 - j) for j in range(size)]
    sets.F2 = [(vp, vq, j) for j in range(e - size)]
    if params.e_p:
        ep = params.e_p
        bad = state.U_star | {vp, vq}
        n21 = sorted(w for w in g3.neighbors(vp) if side[w] == 1 and w not in bad)
        n22 = sorted(w for w in g3.neighbors(vq) if side[w] == 1 and w not in bad)
        pick21 = n21[:ep]
        pick22 = [w for w in n22 if w not in pick21][:ep]
        if len(pick21) < ep or len(pick22) < ep:
            raise DomainError("not enough B-neighbors outside U* for F21/F22",
                              witness={"e_p": ep, "F21": len(pick21), "F22": len(pick22)})
        sets.F21 = [(*norm(vp, w), 0) for w in pick21]
        sets.F22 = [(*norm(vq, w), 0) for w in pick22]
    return sets


@dataclass
class GabForm:
    graph: Multigraph
    back: dict[EdgeInstance, EdgeInstance]
    edges: set[EdgeInstance]
    audits: list[dict] = field(default_factory=list)


def form_gab(state: PipelineState, part: Partition, sets: SpecialEdgeSets) -> GabForm:
    """Inside edges minus the special sets, plus ``E2`` and half of the extra copies at odd positions."""
    g3 = state.g3
    side = part.side()
    drop_a = set(sets.E1)
    drop_b = set(sets.F1) | set(sets.F21) | set(sets.F22)
    chosen: list[EdgeInstance] = []
    for e in g3.edge_instances():
        su, sv = side[e[0]], side[e[1]]
        if su == sv == 0 and e not in drop_a:
            chosen.append(e)
        elif su == sv == 1 and e not in drop_b:
            chosen.append(e)
    chosen.extend(sets.E2)
    half_total = 0
    top = min(state.p, state.m)
    for i in range(top // 2):
        v = 2 * i
        extra = []
        for u, mult in sorted(g3.neighbors(v).items()):
            if side.get(u) == 1 and u in state.U_star and mult > 1:
                extra.append((u, mult - 1))
        target = sum(c for _, c in extra) // 2
        counts = {u: c // 2 for u, c in extra}
        spare = target - sum(counts.values())
        for u, c in extra:
            if spare and c % 2:
                counts[u] += 1
                spare -= 1
        for u, c in counts.items():
            a, b = norm(v, u)
            chosen.extend((a, b, j) for j in range(c))
        half_total += target
    gab, back = submultigraph(g3, chosen)
    form = GabForm(gab, back, set(chosen))
    ea = sum(1 for e in chosen if side[e[0]] == side[e[1]] == 0)
    eb = sum(1 for e in chosen if side[e[0]] == side[e[1]] == 1)
    if ea != eb + len(sets.F21) + len(sets.F22):
        raise InternalError("inside edge counts of G_AB are unbalanced",
                            trace={"A": ea, "B": eb, "F21": len(sets.F21), "F22": len(sets.F22)})
    _audit(form.audits, "e(G_AB[A]) = e(G_AB[B]) + |F21| + |F22|", True, ea, eb)
    n, eta = state.g.n, state.eta or Fraction(0)
    lo, hi = Fraction(state.delta, 2) - Fraction(36, 10) * eta * n, Fraction(state.delta, 2) + Fraction(51, 10) * eta * n
    outside = [v for v in range(g3.n) if v not in state.U_star]
    bad = [v for v in outside if not lo <= gab.degree(v) <= hi]
    _audit(form.audits, "degree window for vertices outside U*", not bad, bad[:5], [lo, hi])
    _audit(form.audits, "extra copies moved across", True, half_total)
    return form


def color_gab(gab: Multigraph, params: DecompositionParams | int, seed: int = 0) -> EdgeColoring:
    """Equalized proper ``k``-coloring of ``G_AB``."""
    k = params if isinstance(params, int) else params.k
    if gab.edge_count() == 0:
        return EdgeColoring(gab, k)
    delta = gab.max_degree
    if k < delta:
        raise InputError(f"k = {k} is below Delta(G_AB) = {delta}")
    side, _ = bipartition(gab)
    if side is not None:
        c = color_bipartite_konig(gab)
    elif k >= delta + gab.mu:
        c = color_vizing_bound(gab)
    else:
        try:
            c = color_bounded(gab, k, seed)
        except InputError:
            # below the guaranteed bound; try anyway before giving up
            c = _heuristic_coloring(gab, k, seed)
            if c is None:
                try:
                    c = _search_coloring(gab, k, 200_000)
                except _Budget:
                    c = None
            if c is None:
                raise StepFailure("inside-coloring", f"no {k}-coloring of G_AB found", {"delta": delta, "mu": gab.mu})
    c = EdgeColoring(gab, k, dict(c.items()))
    return equalize(gab, c)


# -- Steps 3 to 5: working state ------------------------------------------------------------
class _Work:
    """Global coloring of ``G3`` with the bookkeeping shared by Steps 3-5."""

    def __init__(self, state: PipelineState, part: Partition, params: DecompositionParams,
                 sets: SpecialEdgeSets, gab: GabForm, rescue: bool):
        self.state = state
        self.g3 = state.g3
        self.part = part
        self.params = params
        self.sets = sets
        self.gab = gab
        self.rescue = rescue
        self.side = part.side()
        self.reserved = set(sets.E1) | set(sets.F1)
        self.c = EdgeColoring(self.g3, max(state.delta, params.k))
        self.audits: list[dict] = []
        self.trace: dict[str, object] = {
            "initial_stage": 0, "pre_exchanges": 0, "pre_exchange_misses": 0,
            "paths": {"direct": 0, "cross": 0, "same_side": 0}, "rescued_classes": [], "matching_fallbacks": 0,
        }
        u = sets.u_next
        self.U_A = {v for v in state.U_star if self.side[v] == 0} | ({u} if u is not None else set())
        self.U_B = {v for v in state.U_star if self.side[v] == 1}

    # -- edge categories
    def inside(self, e: EdgeInstance) -> bool:
        return self.side[e[0]] == self.side[e[1]]

    def r_edges(self, s: int) -> list[EdgeInstance]:
        """Uncolored inside edges on side ``s`` (``R_A`` or ``R_B``), reserved sets excluded."""
        return [e for e, col in self.c.items()
                if not col and e not in self.reserved and self.side[e[0]] == self.side[e[1]] == s]

    def r_degree(self) -> dict[int, int]:
        deg = {v: 0 for v in range(self.g3.n)}
        for e, col in self.c.items():
            if not col and e not in self.reserved and self.inside(e):
                deg[e[0]] += 1
                deg[e[1]] += 1
        return deg

    def free_h(self, x: int, y: int) -> EdgeInstance | None:
        if self.side[x] == self.side[y]:
            return None
        a, b = norm(x, y)
        for j in range(self.g3.multiplicity(a, b)):
            e = (a, b, j)
            if not self.c.color(e):
                return e
        return None

    def slack(self, v: int) -> int:
        return sum(1 for u in self.g3.neighbors(v) if self.free_h(v, u) is not None)

    def order(self, vs) -> list[int]:
        return sorted(vs, key=lambda v: (-self.slack(v), v))

    def candidates(self, x: int, i: int, target: int, forbid: set[int], rdeg: dict[int, int]) -> dict[int, tuple[int, EdgeInstance]]:
        """``y`` on side ``target`` joined to ``x`` by an uncolored cross edge whose ``i``-edge is good."""
        cap = self.params.caps["good_degree"]
        out = {}
        for y in self.g3.neighbors(x):
            if self.side[y] != target or self.free_h(x, y) is None:
                continue
            f = self.c.edge_at(y, i)
            if f is None or not self.inside(f):
                continue
            z = f[1] if f[0] == y else f[0]
            if y in forbid or z in forbid:
                continue
            if rdeg[y] >= cap or rdeg[z] >= cap:
                continue
            out[y] = (z, f)
        return out

    def exchange(self, colored: list[EdgeInstance], uncolored: list[EdgeInstance], i: int) -> None:
        changes = {e: 0 for e in uncolored}
        changes.update({e: i for e in colored})
        self.c.recolor_many(changes)


def _initial_stage(w: _Work) -> None:
    """Give the padding vertex every color ``1..k`` using its parallel edges to ``v_2``."""
    st = w.state
    if st.pad is None or st.members[0] != [st.pad] or st.m < 2:
        return
    v1, v2 = 0, 1
    if w.side[v1] == w.side[v2]:
        return
    for i in range(1, w.params.k + 1):
        if not w.c.misses(v1, i):
            continue
        e = w.free_h(v1, v2)
        if e is None:
            break
        if w.c.misses(v2, i):
            w.exchange([e], [], i)
            w.trace["initial_stage"] += 1
            continue
        f = w.c.edge_at(v2, i)
        if not w.inside(f):
            continue
        x0 = f[1] if f[0] == v2 else f[0]
        if x0 not in st.U_star:
            w.exchange([e], [f], i)
            w.trace["initial_stage"] += 1
            continue
        done = False
        for j in range(1, w.params.k + 1):
            if j == i:
                continue
            fx, fy = w.c.edge_at(v2, j), w.c.edge_at(x0, j)
            if fx is None or fy is None or fx == fy or not (w.inside(fx) and w.inside(fy)):
                continue
            x = fx[1] if fx[0] == v2 else fx[0]
            y = fy[1] if fy[0] == x0 else fy[0]
            if x == y or x in st.U or y in st.U:
                continue
            w.c.recolor_many({f: 0, fx: 0, fy: 0})
            w.c.assign(f, j)
            w.c.assign(e, i)
            w.trace["initial_stage"] += 1
            done = True
            break
        if not done:
            w.trace.setdefault("initial_stage_skipped", []).append(i)


def _pre_exchange(w: _Work, x: int, i: int, rdeg: dict[int, int]) -> bool:
    other = 1 - w.side[x]
    forbid = w.U_B if other == 1 else w.U_A
    cand = w.candidates(x, i, other, forbid, rdeg)
    if not cand:
        return False
    y = w.order(cand)[0]
    z, f = cand[y]
    w.exchange([w.free_h(x, y)], [f], i)
    return True


def _template_cross(w: _Work, a: int, b: int, i: int) -> bool:
    """Path ``a b1 b2 a2 a1 b`` for ``a`` in ``A`` and ``b`` in ``B``."""
    rdeg = w.r_degree()
    n_a_of_b = w.candidates(b, i, 0, w.U_A, rdeg)
    n_b_of_a = w.candidates(a, i, 1, w.U_B, rdeg)
    m_b_of_a = {z: y for y, (z, _) in n_b_of_a.items()}
    for a1 in w.order(n_a_of_b):
        a2, fa = n_a_of_b[a1]
        for b2 in w.order(v for v in m_b_of_a if w.free_h(a2, v) is not None):
            b1 = m_b_of_a[b2]
            fb = n_b_of_a[b1][1]
            w.exchange([w.free_h(a, b1), w.free_h(b2, a2), w.free_h(a1, b)], [fa, fb], i)
            return True
    return False


def _template_same(w: _Work, x: int, xs: int, i: int) -> bool:
    """Path ``x y1 y2 x2 x2* y2* y1* x*`` for ``x, x*`` on the same side."""
    s = w.side[x]
    o = 1 - s
    own_forbid, other_forbid = (w.U_A, w.U_B) if s == 0 else (w.U_B, w.U_A)
    rdeg = w.r_degree()
    n_o_of_xs = w.candidates(xs, i, o, other_forbid, rdeg)
    n_o_of_x = w.candidates(x, i, o, other_forbid, rdeg)
    m_o_of_x = {z: y for y, (z, _) in n_o_of_x.items()}
    for y1s in w.order(n_o_of_xs):
        y2s, f1 = n_o_of_xs[y1s]
        n_s_of_y2s = w.candidates(y2s, i, s, own_forbid, rdeg)
        for x2s in w.order(n_s_of_y2s):
            x2, f2 = n_s_of_y2s[x2s]
            for y2 in w.order(v for v in m_o_of_x if v not in (y1s, y2s) and w.free_h(x2, v) is not None):
                y1 = m_o_of_x[y2]
                f3 = n_o_of_x[y1][1]
                w.exchange(
                    [w.free_h(x, y1), w.free_h(y2, x2), w.free_h(x2s, y2s), w.free_h(y1s, xs)],
                    [f1, f2, f3], i,
                )
                return True
    return False


def _join_pair(w: _Work, x: int, y: int, i: int) -> bool:
    """Give color ``i`` to both ``x`` and ``y`` by the shortest applicable template."""
    if w.side[x] != w.side[y]:
        a, b = (x, y) if w.side[x] == 0 else (y, x)
        e = w.free_h(a, b)
        if e is not None:
            w.exchange([e], [], i)
            w.trace["paths"]["direct"] += 1
            return True
        if _template_cross(w, a, b, i):
            w.trace["paths"]["cross"] += 1
            return True
        return False
    if _template_same(w, x, y, i):
        w.trace["paths"]["same_side"] += 1
        return True
    return False


def _complete_class(w: _Work, i: int) -> None:
    """Rescue fallback: replace class ``i`` by a perfect matching of its edges plus uncolored ones."""
    h = nx.Graph()
    h.add_nodes_from(range(w.g3.n))
    pick: dict[tuple[int, int], EdgeInstance] = {}
    for e, col in w.c.items():
        if e in w.reserved or col not in (0, i):
            continue
        key = (e[0], e[1])
        weight = 4 if col == i else (3 if not w.inside(e) else 1)
        if key not in pick or weight > h[e[0]][e[1]]["weight"]:
            pick[key] = e
            h.add_edge(e[0], e[1], weight=weight)
    match = nx.max_weight_matching(h, maxcardinality=True)
    if 2 * len(match) < w.g3.n:
        covered = {v for pr in match for v in pr}
        raise StepFailure("one-factor-extension", "class cannot be completed to a perfect matching",
                          {"color": i, "uncovered": sorted(set(range(w.g3.n)) - covered)})
    keep = {pick[norm(*pr)] for pr in match}
    changes = {e: 0 for e, col in w.c.items() if col == i and e not in keep}
    changes.update({e: i for e in keep if w.c.color(e) != i})
    w.c.recolor_many(changes)
    w.trace["rescued_classes"].append(i)


@dataclass
class ResidualPair:
    R_A: list[EdgeInstance]
    R_B: list[EdgeInstance]
    audits: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"R_A": len(self.R_A), "R_B": len(self.R_B), "audits": list(self.audits)}


def extend_to_one_factors(w: _Work) -> ResidualPair:
    """Make every class ``1..k`` a perfect matching of ``G3`` by alternating-path exchanges."""
    k = w.params.k
    _initial_stage(w)
    for x in sorted(w.U_A | w.U_B):
        for i in range(1, k + 1):
            if w.c.misses(x, i):
                if _pre_exchange(w, x, i, w.r_degree()):
                    w.trace["pre_exchanges"] += 1
                else:
                    w.trace["pre_exchange_misses"] += 1
    for i in range(1, k + 1):
        miss_a = [v for v in w.part.A if w.c.misses(v, i)]
        miss_b = [v for v in w.part.B if w.c.misses(v, i)]
        if (len(miss_a) - len(miss_b)) % 2:
            raise InternalError("missing-vertex counts of a color differ by an odd number",
                                trace={"color": i, "A": miss_a, "B": miss_b})
        while miss_a or miss_b:
            x = miss_a[0] if miss_a else miss_b[0]
            # A-B partners first, then same side
            others = [y for y in (miss_b if w.side[x] == 0 else miss_a)]
            others += [y for y in (miss_a if w.side[x] == 0 else miss_b) if y != x]
            if not any(_join_pair(w, x, y, i) for y in others):
                if not w.rescue:
                    raise StepFailure("one-factor-extension", "no alternating path for an MCC-pair", {
                        "color": i, "vertex": x, "side": w.side[x],
                        "missing_A": miss_a, "missing_B": miss_b,
                        "uncolored_cross_degree": w.slack(x),
                    })
                _complete_class(w, i)
                break
            miss_a = [v for v in miss_a if w.c.misses(v, i)]
            miss_b = [v for v in miss_b if w.c.misses(v, i)]
        if not color_class_is_perfect_matching(w.c, i):
            raise InternalError("a class is not a perfect matching after Step 3", trace={"color": i})
    ra, rb = w.r_edges(0), w.r_edges(1)
    res = ResidualPair(ra, rb)
    if len(ra) != len(rb):
        raise InternalError("uncolored inside edge counts differ after Step 3",
                            trace={"R_A": len(ra), "R_B": len(rb)})
    caps = w.params.caps
    _audit(res.audits, "residual sizes e(R_A) = e(R_B) < 18 eta n^2", len(ra) < caps["s31_edges"], len(ra), caps["s31_edges"])
    deg_a = max((Multigraph(w.g3.n, [e[:2] for e in ra]).max_degree if ra else 0), 0)
    deg_b = max((Multigraph(w.g3.n, [e[:2] for e in rb]).max_degree if rb else 0), 0)
    _audit(res.audits, "residual degrees below 5 sqrt(eta) n", max(deg_a, deg_b) < caps["good_degree"],
           max(deg_a, deg_b), caps["good_degree"])
    ustar_a = [v for v in w.state.U_star if any(v in e[:2] for e in ra)]
    _audit(res.audits, "U* avoids R_A", not ustar_a, ustar_a)
    return res


# -- Step 4 -----------------------------------------------------------------------------------
def _hall_witness(h: nx.Graph, left: list[int], match: dict) -> list[int]:
    """Left vertices reachable by alternating paths from an unmatched one; ``|N(Z)| < |Z|``."""
    start = next(v for v in left if v not in match)
    z, seen_r = {start}, set()
    frontier = [start]
    while frontier:
        nxt = []
        for v in frontier:
            for r in h.neighbors(v):
                if r in seen_r:
                    continue
                seen_r.add(r)
                mate = match.get(r)
                if mate is not None and mate not in z:
                    z.add(mate)
                    nxt.append(mate)
        frontier = nxt
    return sorted(z)


def _extend_by_h_matching(w: _Work, color: int, prefer: list[tuple[int, int]], stage: str) -> None:
    """Color a perfect matching of the uncolored cross edges avoiding vertices that already have ``color``."""
    busy = {v for v in range(w.g3.n) if not w.c.misses(v, color)}
    left = [v for v in w.part.A if v not in busy]
    right = [v for v in w.part.B if v not in busy]
    if len(left) != len(right):
        raise InternalError("unbalanced sides before matching extension", trace={"color": color})
    h = nx.Graph()
    h.add_nodes_from(left)
    h.add_nodes_from(right)
    for a in left:
        for b in w.g3.neighbors(a):
            if b in right and w.free_h(a, b) is not None:
                h.add_edge(a, b)

    def solve(graph: nx.Graph, lv: list[int]) -> dict:
        return nx.bipartite.hopcroft_karp_matching(graph, top_nodes=lv) if lv else {}

    fixed: list[tuple[int, int]] = []
    sub = h.copy()
    for a, b in prefer:
        if sub.has_edge(a, b):
            fixed.append((a, b))
            sub.remove_nodes_from([a, b])
    lv = [v for v in left if v in sub]
    match = solve(sub, lv)
    if sum(1 for v in lv if v in match) < len(lv):
        w.trace["matching_fallbacks"] += 1
        fixed = []
        match = solve(h, left)
        if sum(1 for v in left if v in match) < len(left):
            raise StepFailure(f"residual-coloring/stage-{stage}", "Hall condition fails for the cross matching",
                              {"color": color, "deficient_set": _hall_witness(h, left, match)})
    pairs = fixed + [(a, match[a]) for a in left if a in match]
    for a, b in pairs:
        w.c.assign(w.free_h(a, b), color)
    if not color_class_is_perfect_matching(w.c, color):
        raise InternalError("matching extension left a vertex uncovered", trace={"color": color})


def _preferred(w: _Work) -> list[tuple[int, int]]:
    """Pairs to match first: the padding vertex and ``v_{p-1}`` toward their partners."""
    st = w.state
    out = []
    ep = w.params.e_p
    if st.p >= st.m:
        if st.pad is not None:
            out.append((0, 1))
        return [pr for pr in out if w.side[pr[0]] != w.side[pr[1]]]
    p = st.p
    if p == 2:
        if ep:
            out.append((0, 2))
        elif st.pad is not None:
            out.append((0, 1))
    else:
        if st.pad is not None:
            out.append((0, 1))
        if ep:
            out.append((p - 2, p))
    fixed = []
    for a, b in out:
        if w.side[a] == 1:
            a, b = b, a
        if w.side[a] == 0 and w.side[b] == 1:
            fixed.append((a, b))
    return fixed


def _color_side(g: Multigraph, edges: list[EdgeInstance], colors: int, seed: int) -> dict[EdgeInstance, int] | None:
    h, back = submultigraph(g, edges)
    if h.edge_count() == 0:
        return {}
    if colors < h.max_degree:
        return None
    side, _ = bipartition(h)
    if side is not None:
        c = color_bipartite_konig(h)
    elif colors >= h.max_degree + h.mu:
        c = color_vizing_bound(h)
    else:
        c = _heuristic_coloring(h, colors, seed)
        if c is None:
            try:
                c = _search_coloring(h, colors, 100_000)
            except _Budget:
                c = None
        if c is None:
            return None
    c = equalize(h, EdgeColoring(h, colors, dict(c.items())))
    return {back[e]: col for e, col in c.items()}


def color_residual(w: _Work, residual: ResidualPair, seed: int = 0) -> None:
    """Colors ``k+1..k+l``: Stage 1 on the edges at ``v_2, v_p``, Stage 2 on the rest of ``R_A, R_B``."""
    st, k, delta = w.state, w.params.k, w.state.delta
    ra, rb = list(residual.R_A), list(residual.R_B)
    F: list[EdgeInstance] = []
    if st.p < st.m:
        special = {1, st.p - 1}
        F = [e for e in rb if special & set(e[:2])]
    ell1 = len(F)
    f_star = sorted(ra)[:ell1]
    rest_a = [e for e in ra if e not in set(f_star)]
    rest_b = [e for e in rb if e not in set(F)]
    both = Multigraph(w.g3.n, [e[:2] for e in rest_a + rest_b])
    ell2 = both.max_degree + both.mu if both.edge_count() else 0
    plan_a = plan_b = None
    if ell2:
        low = max(both.max_degree, 1)
        options = [ell2] if not w.rescue else list(range(low, ell2 + 1))
        for colors in options:
            if k + ell1 + colors > delta:
                break
            plan_a = _color_side(w.g3, rest_a, colors, seed)
            plan_b = _color_side(w.g3, rest_b, colors, seed)
            if plan_a is not None and plan_b is not None:
                if colors != ell2:
                    w.trace["ell2_reduced"] = {"formula": ell2, "used": colors}
                ell2 = colors
                break
            plan_a = plan_b = None
    w.params.ell1, w.params.ell2 = ell1, ell2
    if k + ell1 + ell2 > delta:
        raise StepFailure("residual-coloring", "palette overflow: k + l exceeds Delta",
                          {"k": k, "ell1": ell1, "ell2": ell2, "delta": delta})
    if ell2 and (plan_a is None or plan_b is None):
        raise StepFailure("residual-coloring", "no equalized coloring of the residual layers", {"ell2": ell2})
    prefer = _preferred(w)
    for j, (f, fs) in enumerate(zip(F, f_star)):
        col = k + 1 + j
        w.c.assign(f, col)
        w.c.assign(fs, col)
        _extend_by_h_matching(w, col, prefer, "1")
    if ell2:
        size_a: dict[int, list[EdgeInstance]] = {c: [] for c in range(1, ell2 + 1)}
        size_b: dict[int, list[EdgeInstance]] = {c: [] for c in range(1, ell2 + 1)}
        for e, c in plan_a.items():
            size_a[c].append(e)
        for e, c in plan_b.items():
            size_b[c].append(e)
        order_a = sorted(size_a, key=lambda c: (len(size_a[c]), c))
        order_b = sorted(size_b, key=lambda c: (len(size_b[c]), c))
        for j, (ca, cb) in enumerate(zip(order_a, order_b)):
            if len(size_a[ca]) != len(size_b[cb]):
                raise InternalError("paired residual classes differ in size",
                                    trace={"A": len(size_a[ca]), "B": len(size_b[cb])})
            col = k + ell1 + 1 + j
            for e in size_a[ca] + size_b[cb]:
                w.c.assign(e, col)
            _extend_by_h_matching(w, col, prefer, "2")
    for col in range(k + 1, k + ell1 + ell2 + 1):
        if not color_class_is_perfect_matching(w.c, col):
            raise InternalError("a residual class is not a perfect matching", trace={"color": col})
    colored = sum(1 for _, c in w.c.items() if c)
    if colored != (k + ell1 + ell2) * w.g3.n // 2:
        raise InternalError("colored edge count does not match (k + l) * m / 2", trace={"colored": colored})
    left = [e for e in w.c.uncolored_edges()]
    r = Multigraph(w.g3.n, [e[:2] for e in left])
    dr = delta - k - ell1 - ell2
    if st.p < st.m:
        tri = r.e_within([st.p - 2, st.p - 1, st.p])
        _audit(w.audits, "e(R[{v_{p-1}, v_p, v_{p+1}}]) <= Delta(R)", tri <= dr, tri, dr)


def finish_nearly_bipartite(w: _Work, seed: int = 0) -> None:
    """Color ``R - F1`` with the last ``Delta - k - l`` colors."""
    delta = w.state.delta
    base = w.params.k + w.params.ell
    dr = delta - base
    left = w.c.uncolored_edges()
    r = Multigraph(w.g3.n, [e[:2] for e in left])
    if any(r.degree(v) != dr for v in range(r.n)):
        raise InternalError("the uncolored rest is not regular", trace={"expected": dr, "degrees": r.degrees()})
    f1 = set(w.sets.F1)
    star = [e for e in left if e not in f1]
    if not star:
        return
    h, back = submultigraph(w.g3, star)
    side, _ = bipartition(h)
    if side is not None:
        c = color_bipartite_konig(h)
        w.trace["finish"] = "koenig"
    else:
        res = color_nearly_bipartite(h, seed=seed)
        if not res.colorable:
            raise StepFailure("finish", "the rest has an overfull subgraph",
                              {"certificate": res.certificate.to_dict() if res.certificate else None})
        c = res.coloring
        w.trace["finish"] = "nearly-bipartite"
    if max(c.colors_used(), default=0) > dr:
        raise StepFailure("finish", "the rest needs more than Delta(R) colors",
                          {"used": max(c.colors_used()), "delta_R": dr})
    for e, col in c.items():
        w.c.assign(back[e], base + col)


# -- orchestration -----------------------------------------------------------------------------
@dataclass
class DecompositionResult:
    outcome: str
    step: str | None = None
    condition: str | None = None
    diagnostics: dict = field(default_factory=dict)
    params: DecompositionParams | None = None
    state: PipelineState | None = None
    partition: Partition | None = None
    sets: SpecialEdgeSets | None = None
    coloring: EdgeColoring | None = None
    coloring_g: EdgeColoring | None = None
    trace: dict = field(default_factory=dict)
    audits: list[dict] = field(default_factory=list)
    attempts: list[dict] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.outcome == "complete"

    def to_dict(self) -> dict:
        out = {
            "outcome": self.outcome,
            "step": self.step,
            "condition": self.condition,
            "diagnostics": self.diagnostics,
            "params": self.params.to_dict() if self.params else None,
            "partition": self.partition.to_dict() if self.partition else None,
            "special_sets": self.sets.to_dict() if self.sets else None,
            "trace": self.trace,
            "audits": self.audits,
            "attempts": self.attempts,
        }
        if self.state is not None:
            st = self.state.to_dict()
            st.pop("stages", None)
            out["state"] = st
        if self.coloring is not None:
            out["colors_used"] = len(self.coloring.colors_used())
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, default=_plain)


def _verify(w: _Work, g: Multigraph) -> tuple[EdgeColoring, list[dict]]:
    audits: list[dict] = []
    c, st = w.c, w.state
    if not check_proper(st.g3, c).passed:
        raise InternalError("final coloring of G3 is improper")
    f1 = set(w.sets.F1)
    unc = set(c.uncolored_edges())
    if unc != f1:
        raise InternalError("uncolored edges differ from F1", trace={"extra": sorted(unc - f1)[:5]})
    _audit(audits, "coloring of G3 - F1 is total and proper", True)
    used = c.colors_used()
    _audit(audits, "exactly Delta colors", used == set(range(1, st.delta + 1)) or not used, len(used), st.delta)
    kl = w.params.k + w.params.ell
    pm = all(color_class_is_perfect_matching(c, col) for col in range(1, kl + 1))
    if not pm:
        raise InternalError("a class among 1..k+l is not a perfect matching")
    _audit(audits, "classes 1..k+l are perfect matchings", True, kl)
    rest, back = submultigraph(st.g3, [e for e in c.edges() if e not in f1])
    sub = EdgeColoring(rest, st.delta, {e: c.color(back[e]) for e in rest.edge_instances()})
    if rest.edge_count():
        _audit(audits, "parity check on G3 - F1", parity_check(rest, sub).passed)
    lifted, lost = st.lift_edges()
    if lost:
        raise StepFailure("lift", "identification collapsed input edges", {"edges": lost})
    assign = {}
    for e in g.edge_instances():
        col = c.color(lifted[e])
        if not col:
            raise StepFailure("lift", "an input edge maps into F1", {"edge": list(e)})
        assign[e] = col
    cg = EdgeColoring(g, st.delta, assign)
    if not (cg.is_total() and check_proper(g, cg).passed):
        raise InternalError("restriction to the input graph is not a proper total coloring")
    _audit(audits, "restriction to the input is a proper Delta-coloring", True)
    return cg, audits


def _attempt(state: PipelineState, eta: Fraction, seed: int, rescue: bool, k: int | None,
             trace: dict) -> DecompositionResult:
    params = compute_params(state, eta, k)
    res = DecompositionResult("failed", params=params, state=state)
    try:
        if params.k > state.delta:
            raise StepFailure("inside-coloring", "k exceeds Delta at this order", {"k": params.k, "delta": state.delta})
        pairs, u_map, h_eff = partner_pairs(state, relax=rescue)
        if h_eff != max(state.h_idx, state.p + 1) and state.p < state.m:
            trace = dict(trace, partner_prefix_shortened=h_eff)
        simple = state.g3.underlying_simple()
        part = random_balanced_partition(simple, pairs, params.tolerance, seed)
        part = partition_modification(part, state, u_map, h_eff, eta)
        res.partition = part
        _audit(res.audits, "partition balance after modification", part.imbalance <= part.tolerance,
               part.imbalance, part.tolerance)
        sets = select_special_edge_sets(state, part, params, u_map)
        res.sets = sets
        gab = form_gab(state, part, sets)
        res.audits.extend(gab.audits)
        _audit(res.audits, "Delta(G_AB) <= Delta'", gab.graph.max_degree <= params.delta_prime,
               gab.graph.max_degree, params.delta_prime)
        try:
            phi0 = color_gab(gab.graph, params, seed)
        except InputError as exc:
            raise StepFailure("inside-coloring", "k is below Delta(G_AB)", {"k": params.k, "delta_gab": gab.graph.max_degree}) from exc
        w = _Work(state, part, params, sets, gab, rescue)
        for e, col in phi0.items():
            if col:
                w.c.assign(gab.back[e], col)
        missing = max((sum(1 for v in range(state.m) if w.c.misses(v, i)) for i in range(1, params.k + 1)), default=0)
        _audit(res.audits, "missing-count bound after Step 2", missing < params.caps["missing"], missing,
               params.caps["missing"])
        residual = extend_to_one_factors(w)
        res.audits.extend(residual.audits)
        color_residual(w, residual, seed)
        finish_nearly_bipartite(w, seed)
        cg, audits = _verify(w, state.g)
        res.audits.extend(w.audits + audits)
        res.outcome = "complete"
        res.coloring, res.coloring_g = w.c, cg
        res.trace = dict(trace, **w.trace)
        return res
    except MgColorError as exc:
        exc.partial = res
        raise


def _k_candidates(state: PipelineState, eta: Fraction) -> list[int]:
    _, k_formula = palette_constants(state.delta, state.g.n, eta)
    top = min(k_formula, state.delta - 1)
    out = [k_formula] if k_formula <= state.delta - 1 else []
    out += [k for k in range(top, -1, -1) if k not in out]
    return out


def run_pipeline(g: Multigraph, eta, seed: int = 0, rescue: bool = False, partition_seeds: int = 3,
                 check_overfull: bool = True) -> DecompositionResult:
    """Regularize ``g`` and decompose; always returns a result unless ``eta`` is invalid.

    Without ``rescue`` a single attempt with the formula ``k`` is made.  With
    ``rescue``, stuck classes are completed by a general matching, ``k`` is
    lowered below ``Delta`` when needed, and a few partition seeds are tried.
    """
    eta = Fraction(eta)
    if g.n == 0:
        raise InputError("graph is empty")
    if eta <= 0 or eta * g.n < 1:
        raise InputError(f"eta*n = {float(eta * g.n):.3f} < 1; use eta >= {Fraction(1, g.n)} for n = {g.n}")
    trace: dict = {"rescue": rescue}
    try:
        state = regularize(g, eta, check_overfull=check_overfull)
    except MgColorError as exc:
        return DecompositionResult("failed", "regularize", str(exc),
                                   {"error": type(exc).__name__, "witness": getattr(exc, "witness", None)},
                                   trace=trace)
    verdict = verify_g3(state)
    trace["g3"] = verdict.to_dict()
    if state.delta == 0:
        return DecompositionResult("complete", state=state, coloring=EdgeColoring(state.g3, 0),
                                   coloring_g=EdgeColoring(g, 0), trace=trace)
    if rescue:
        plan = [(k, s) for s in range(partition_seeds) for k in _k_candidates(state, eta)]
    else:
        plan = [(None, 0)]
    attempts: list[dict] = []
    last = None
    for k, s in plan:
        try:
            res = _attempt(state, eta, seed + s, rescue, k, trace)
            attempts.append({"k": res.params.k, "seed": seed + s, "outcome": "complete"})
            res.attempts = attempts
            return res
        except MgColorError as exc:
            step = getattr(exc, "step", "internal" if isinstance(exc, InternalError) else "setup")
            info = {"k": k, "seed": seed + s, "outcome": "failed", "step": step,
                    "error": type(exc).__name__, "condition": getattr(exc, "condition", str(exc))}
            attempts.append(info)
            last = exc
    exc = last
    diag = getattr(exc, "diagnostics", None) or {"witness": _plain(getattr(exc, "witness", None) or getattr(exc, "trace", None))}
    step = getattr(exc, "step", "internal" if isinstance(exc, InternalError) else "setup")
    partial = getattr(exc, "partial", None)
    return DecompositionResult("failed", step, getattr(exc, "condition", str(exc)), diag,
                               params=partial.params if partial else None,
                               partition=partial.partition if partial else None,
                               sets=partial.sets if partial else None,
                               state=state, trace=trace,
                               audits=partial.audits if partial else [], attempts=attempts)


__all__ = [
    "StepFailure", "Partition", "random_balanced_partition", "partner_pairs", "partition_modification",
    "palette_constants", "DecompositionParams", "compute_params", "SpecialEdgeSets",
    "select_special_edge_sets", "GabForm", "form_gab", "color_gab", "ResidualPair",
    "extend_to_one_factors", "color_residual", "finish_nearly_bipartite", "DecompositionResult",
    "run_pipeline",
]
