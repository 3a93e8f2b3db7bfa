"""Edge colorings of multigraphs and the engines that produce them.

Colors are ``1 .. k``; ``UNCOLORED`` (0) marks an edge instance without a
color.  Edge instances are ``(u, v, copy)`` triples with ``u < v``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, InputError, InternalError, ResourceError
from .multigraph import EdgeInstance, Multigraph, subset_edge_counts

UNCOLORED = 0


class EdgeColoring:
    """Partial or total assignment of colors ``1..k`` to edge instances.

    Mutations through ``assign``/``uncolor`` keep the coloring proper and
    maintain a vertex -> color -> edge index so missing-color queries are
    cheap.  Colorings loaded from raw data may be improper; ``check_proper``
    inspects the assignment itself and never trusts the index.
    """

    def __init__(self, g: Multigraph, k: int, assignment: dict | None = None):
        if k < 0:
            raise InputError(f"palette size must be non-negative, got {k}")
        self.g = g
        self.k = k
        self._color: dict[EdgeInstance, int] = {e: UNCOLORED for e in g.edge_instances()}
        self._at: list[dict[int, EdgeInstance]] = [dict() for _ in range(g.n)]
        for e, c in (assignment or {}).items():
            e = tuple(e)
            if e not in self._color:
                raise InputError(f"edge instance {e} is not in the graph")
            if not 0 <= c <= k:
                raise InputError(f"color {c} outside palette 1..{k}")
            self._color[e] = c
            if c:
                self._at[e[0]][c] = e
                self._at[e[1]][c] = e

    # -- queries ------------------------------------------------------------
    def color(self, e: EdgeInstance) -> int:
        try:
            return self._color[e]
        except KeyError:
            raise InputError(f"edge instance {e} is not in the graph") from None

    def edges(self) -> list[EdgeInstance]:
        return list(self._color)

    def items(self):
        return self._color.items()

    def edge_at(self, v: int, c: int) -> EdgeInstance | None:
        return self._at[v].get(c)

    def present(self, v: int) -> set[int]:
        return set(self._at[v])

    def missing(self, v: int) -> set[int]:
        at = self._at[v]
        return {c for c in range(1, self.k + 1) if c not in at}

    def misses(self, v: int, c: int) -> bool:
        return c not in self._at[v]

    def uncolored_edges(self) -> list[EdgeInstance]:
        return [e for e, c in self._color.items() if c == UNCOLORED]

    def is_total(self) -> bool:
        return all(self._color.values())

    def classes(self) -> dict[int, list[EdgeInstance]]:
        out: dict[int, list[EdgeInstance]] = {c: [] for c in range(1, self.k + 1)}
        for e, c in self._color.items():
            if c:
                out[c].append(e)
        return out

    def class_size(self, c: int) -> int:
        return sum(1 for x in self._color.values() if x == c)

    def colors_used(self) -> set[int]:
        return {c for c in self._color.values() if c}

    def copy(self) -> "EdgeColoring":
        return EdgeColoring(self.g, self.k, {e: c for e, c in self._color.items() if c})

    # -- mutation -------------------------------------------------------------
    def assign(self, e: EdgeInstance, c: int) -> None:
        """Color ``e`` with ``c`` (recoloring if needed); refuses conflicts."""
        old = self.color(e)
        if c == old:
            return
        if not 0 <= c <= self.k:
            raise InputError(f"color {c} outside palette 1..{self.k}")
        u, v, _ = e
        if c:
            for x in (u, v):
                other = self._at[x].get(c)
                if other is not None and other != e:
                    raise InputError(f"color {c} already used at vertex {x} by {other}")
        if old:
            del self._at[u][old]
            del self._at[v][old]
        self._color[e] = c
        if c:
            self._at[u][c] = e
            self._at[v][c] = e

    def uncolor(self, e: EdgeInstance) -> None:
        self.assign(e, UNCOLORED)

    def recolor_many(self, changes: dict[EdgeInstance, int]) -> None:
        """Apply several recolorings atomically (all uncolored first)."""
        for e in changes:
            self.uncolor(e)
        done = []
        try:
            for e, c in changes.items():
                self.assign(e, c)
                done.append(e)
        except InputError:
            for e in done:
                self.uncolor(e)
            raise

    def extend_palette(self, k: int) -> None:
        if k < self.k:
            raise InputError("palette can only grow")
        self.k = k

    # -- text format ------------------------------------------------------------
    def to_text(self) -> str:
        return "".join(f"{u} {v} {i} {c}\n" for (u, v, i), c in sorted(self._color.items()))

    @classmethod
    def from_text(cls, g: Multigraph, k: int, text: str) -> "EdgeColoring":
        assignment = {}
        for ln in text.splitlines():
            ln = ln.split("#", 1)[0].strip()
            if not ln:
                continue
            try:
                u, v, i, c = (int(x) for x in ln.split())
            except ValueError as exc:
                raise InputError(f"malformed coloring line {ln!r}") from exc
            if u > v:
                u, v = v, u
            assignment[(u, v, i)] = c
        return cls(g, k, assignment)


@dataclass
class Verdict:
    passed: bool
    witness: object = None
    detail: str = ""


def check_proper(g: Multigraph, c: EdgeColoring) -> Verdict:
    """Proper means no two colored edge instances at a vertex share a color."""
    seen: dict[tuple[int, int], EdgeInstance] = {}
    for e, col in c.items():
        if e not in c._color or e[0] >= g.n or e[1] >= g.n or g.multiplicity(e[0], e[1]) <= e[2]:
            raise InputError(f"coloring references nonexistent edge instance {e}")
        if not col:
            continue
        for x in e[:2]:
            prev = seen.get((x, col))
            if prev is not None:
                return Verdict(False, (prev, e), f"color {col} twice at vertex {x}")
            seen[(x, col)] = e
    return Verdict(True)


def parity_check(g: Multigraph, c: EdgeColoring) -> Verdict:
    """For each color, the number of vertices missing it has the parity of n."""
    if not c.is_total():
        raise InputError("parity check needs a total coloring")
    if c.k < g.max_degree:
        raise InputError(f"palette {c.k} is below the maximum degree {g.max_degree}")
    if not check_proper(g, c).passed:
        raise InputError("parity check needs a proper coloring")
    for col in range(1, c.k + 1):
        count = sum(1 for v in range(g.n) if c.misses(v, col))
        if count % 2 != g.n % 2:
            return Verdict(False, col, f"{count} vertices miss color {col} but n = {g.n}")
    return Verdict(True)


# -- alternating paths ---------------------------------------------------------
def kempe_chain(c: EdgeColoring, v: int, a: int, b: int) -> tuple[list[EdgeInstance], int]:
    """Maximal path from ``v`` whose edges alternate ``a, b, a, ...``.

    Returns the edges and the far endpoint.  ``v`` should miss ``b`` so the
    path is well defined from that end.
    """
    path: list[EdgeInstance] = []
    x, want = v, a
    used: set[EdgeInstance] = set()
    while True:
        e = c.edge_at(x, want)
        if e is None or e in used:
            return path, x
        used.add(e)
        path.append(e)
        x = e[1] if e[0] == x else e[0]
        want = b if want == a else a


def swap_chain(c: EdgeColoring, path: Sequence[EdgeInstance], a: int, b: int) -> None:
    c.recolor_many({e: (b if c.color(e) == a else a) for e in path})


def swap_alternating_path(c: EdgeColoring, path: Sequence[EdgeInstance], i: int) -> EdgeColoring:
    """Exchange uncolored and color-``i`` edges along ``path``.

    The path must start and end with uncolored edges and alternate, its two
    ends must miss ``i``, and consecutive edges must share a vertex.  The
    input is left untouched; a new coloring is returned.
    """
    if not path or len(path) % 2 == 0:
        raise InputError("path must have odd length")
    for idx, e in enumerate(path):
        want = UNCOLORED if idx % 2 == 0 else i
        if c.color(e) != want:
            raise InputError(f"edge {idx} of the path has color {c.color(e)}, expected {want}")
    # walk the vertex sequence
    first = path[0]
    if len(path) == 1:
        ends = [first[0], first[1]]
    else:
        nxt = set(path[1][:2])
        start = first[0] if first[1] in nxt else first[1]
        if first[0] not in nxt and first[1] not in nxt:
            raise InputError("consecutive path edges must share a vertex")
        x = start
        walk = [x]
        for e in path:
            if x not in e[:2]:
                raise InputError("consecutive path edges must share a vertex")
            x = e[1] if e[0] == x else e[0]
            walk.append(x)
        if len(set(walk)) != len(walk):
            raise InputError("path repeats a vertex")
        ends = [walk[0], walk[-1]]
    for x in ends:
        if not c.misses(x, i):
            raise InputError(f"path end {x} does not miss color {i}")
    out = c.copy()
    out.recolor_many({e: (i if out.color(e) == UNCOLORED else UNCOLORED) for e in path})
    return out


# -- bipartite / Koenig --------------------------------------------------------
def bipartition(g: Multigraph, skip: int | None = None) -> tuple[list[int] | None, list[int] | None]:
    """Two-coloring of ``g`` (ignoring ``skip``) or an odd cycle as witness."""
    side = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if s == skip or side[s] != -1:
            continue
        side[s] = 0
        queue = [s]
        for x in queue:
            for y in g.neighbors(x):
                if y == skip:
                    continue
                if side[y] == -1:
                    side[y] = 1 - side[x]
                    parent[y] = x
                    queue.append(y)
                elif side[y] == side[x]:
                    return None, _odd_cycle(parent, x, y)
    return side, None


def _odd_cycle(parent: list[int], x: int, y: int) -> list[int]:
    px, py = [x], [y]
    while parent[px[-1]] != -1:
        px.append(parent[px[-1]])
    anc = set(px)
    while py[-1] not in anc:
        py.append(parent[py[-1]])
    top = py[-1]
    return px[: px.index(top) + 1] + py[-2::-1]


def _koenig_fill(c: EdgeColoring, edges: Iterable[EdgeInstance]) -> None:
    for e in edges:
        u, v, _ = e
        a = min(c.missing(u))
        if c.misses(v, a):
            c.assign(e, a)
            continue
        b = min(c.missing(v))
        path, end = kempe_chain(c, v, a, b)
        if end == u:
            raise InternalError("alternating path closed an odd cycle in a bipartite graph")
        swap_chain(c, path, a, b)
        c.assign(e, a)


def color_bipartite_konig(g: Multigraph) -> EdgeColoring:
    """Proper ``Delta``-coloring of a bipartite multigraph."""
    _, cycle = bipartition(g)
    if cycle is not None:
        raise DomainError("graph is not bipartite", witness=cycle)
    c = EdgeColoring(g, g.max_degree)
    _koenig_fill(c, g.edge_instances())
    return c


# -- fans (palette at least Delta + mu) ----------------------------------------
def _fan_extend(c: EdgeColoring, e0: EdgeInstance) -> None:
    """Color the uncolored ``e0`` using a multi-fan at its smaller end.

    Needs every vertex to miss at least ``mu`` colors and the ends of ``e0``
    at least ``mu + 1``, which holds whenever ``k >= Delta + mu``.
    """
    x, y0, _ = e0
    fan_v = [y0]
    fan_e: list[EdgeInstance | None] = [None]
    pred = [-1]
    miss_x = c.missing(x)
    miss = [c.missing(y0)]
    while True:
        j = len(fan_v) - 1
        yj = fan_v[j]
        common = miss_x & miss[j]
        if common:
            _shift_fan(c, fan_e, pred, j, e0)
            c.assign(e0 if j == 0 else fan_e[j], min(common))
            return
        shared = next((i for i in range(j) if miss[i] & miss[j]), None)
        if shared is not None:
            alpha = min(miss_x)
            beta = min(miss[shared] & miss[j])
            path, end = kempe_chain(c, yj, alpha, beta)
            if end == x:
                path, _ = kempe_chain(c, fan_v[shared], alpha, beta)
                target = shared
            elif end == fan_v[shared]:
                target = shared
            else:
                target = j
            swap_chain(c, path, alpha, beta)
            _shift_fan(c, fan_e, pred, target, e0)
            c.assign(e0 if target == 0 else fan_e[target], alpha)
            return
        # grow: a colored edge at x to a new vertex, colored by a fan-missing color
        in_fan = set(fan_v)
        grown = False
        for col in sorted(set().union(*miss)):
            e = c.edge_at(x, col)
            if e is None:
                continue
            z = e[1] if e[0] == x else e[0]
            if z in in_fan:
                continue
            fan_v.append(z)
            fan_e.append(e)
            pred.append(next(i for i in range(len(miss)) if col in miss[i]))
            miss.append(c.missing(z))
            grown = True
            break
        if not grown:
            raise InternalError(
                f"maximal fan at {x} is elementary; palette {c.k} is below Delta + mu",
                trace={"fan": fan_v},
            )


def _shift_fan(c: EdgeColoring, fan_e, pred, j: int, e0: EdgeInstance) -> None:
    """Move the uncolored edge from ``e0`` to fan edge ``j`` along predecessors."""
    if j == 0:
        return
    chain = [j]
    while chain[-1] != 0:
        chain.append(pred[chain[-1]])
    chain.reverse()
    changes: dict[EdgeInstance, int] = {}
    for r in range(len(chain) - 1):
        here = e0 if chain[r] == 0 else fan_e[chain[r]]
        changes[here] = c.color(fan_e[chain[r + 1]])
    changes[fan_e[j]] = UNCOLORED
    c.recolor_many(changes)


def color_vizing_bound(g: Multigraph) -> EdgeColoring:
    """Proper coloring with palette ``Delta + mu`` built edge by edge with fans."""
    c = EdgeColoring(g, g.max_degree + g.mu)
    for e in g.edge_instances():
        common = c.missing(e[0]) & c.missing(e[1])
        if common:
            c.assign(e, min(common))
        else:
            _fan_extend(c, e)
    return c


# -- equalization ----------------------------------------------------------------
def equalize(g: Multigraph, c: EdgeColoring) -> EdgeColoring:
    """Balance class sizes to within one using two-colored path exchanges."""
    if not check_proper(g, c).passed:
        raise InputError("equalize needs a proper coloring")
    out = c.copy()
    if out.k == 0:
        return out
    sizes = {col: 0 for col in range(1, out.k + 1)}
    for _, col in out.items():
        if col:
            sizes[col] += 1
    while True:
        big = max(sizes, key=lambda col: (sizes[col], -col))
        small = min(sizes, key=lambda col: (sizes[col], col))
        if sizes[big] - sizes[small] <= 1:
            return out
        # a component of the big/small subgraph with one more big edge is a
        # path starting and ending with big edges at vertices missing small
        for e in [e for e, col in out.items() if col == big]:
            u = e[0]
            if not out.misses(u, small):
                continue
            path, _ = kempe_chain(out, u, big, small)
            nb = sum(1 for f in path if out.color(f) == big)
            if nb > len(path) - nb:
                swap_chain(out, path, big, small)
                sizes[big] -= 1
                sizes[small] += 1
                break
        else:
            raise InternalError("no unbalanced two-colored path found")


# -- density ----------------------------------------------------------------------
@dataclass
class DensityValue:
    value: Fraction
    witness: tuple[int, ...]


def density_rho(g: Multigraph, cap: int = 20) -> DensityValue:
    """Maximum of ``e(H) / floor(|H|/2)`` over odd vertex subsets of size >= 3."""
    if g.n < 3:
        raise InputError("density needs at least 3 vertices")
    if g.n > cap:
        raise ResourceError(f"exhaustive density search capped at {cap} vertices, got {g.n}")
    counts = subset_edge_counts(g)
    best = Fraction(-1)
    wit = 0
    for mask in range(1, 1 << g.n):
        size = bin(mask).count("1")
        if size >= 3 and size % 2:
            val = Fraction(counts[mask], size // 2)
            if val > best:
                best, wit = val, mask
    return DensityValue(best, tuple(i for i in range(g.n) if wit >> i & 1))


# -- exact search -------------------------------------------------------------------
class _Budget(Exception):
    pass


def _search_coloring(g: Multigraph, k: int, node_limit: int = 2_000_000,
                     fixed: dict[EdgeInstance, int] | None = None) -> EdgeColoring | None:
    """Backtracking ``k``-coloring; None proves there is none.

    Most-constrained edge first, new colors introduced in order, and parallel
    copies take increasing colors.  Raises ``_Budget`` past ``node_limit``.
    """
    fixed = fixed or {}
    edges = [e for e in g.edge_instances() if e not in fixed]
    n = g.n
    full = (1 << (k + 1)) - 2
    used = [0] * n
    rem = [0] * n
    pair_max: dict[tuple[int, int], int] = {}
    top = 0
    for e, col in fixed.items():
        bit = 1 << col
        if used[e[0]] & bit or used[e[1]] & bit:
            return None
        used[e[0]] |= bit
        used[e[1]] |= bit
        top = max(top, col)
    for u, v, _ in edges:
        rem[u] += 1
        rem[v] += 1
    if any(rem[v] + bin(used[v]).count("1") > k for v in range(n)):
        return None
    assign: dict[EdgeInstance, int] = {}
    left = set(range(len(edges)))
    nodes = 0
    sym_ok = not fixed

    def bound_ok() -> bool:
        # each color can still cover at most half the open vertices missing it
        if not left:
            return True
        cap = 0
        open_v = [v for v in range(n) if rem[v]]
        for col in range(1, k + 1):
            bit = 1 << col
            cap += sum(1 for v in open_v if not used[v] & bit) // 2
        return cap >= len(left)

    def rec(top: int) -> bool:
        nonlocal nodes
        if not left:
            return True
        nodes += 1
        if nodes > node_limit:
            raise _Budget
        best, best_avail, best_cnt = -1, 0, k + 2
        for idx in left:
            u, v, _ = edges[idx]
            avail = full & ~(used[u] | used[v])
            cnt = bin(avail).count("1")
            if cnt < best_cnt or (cnt == best_cnt and rem[u] + rem[v] > rem[edges[best][0]] + rem[edges[best][1]]):
                best, best_avail, best_cnt = idx, avail, cnt
                if cnt == 0:
                    return False
        u, v, _ = edges[best]
        floor = pair_max.get((u, v), 0)
        left.discard(best)
        rem[u] -= 1
        rem[v] -= 1
        limit = min(k, top + 1) if sym_ok else k
        for col in range(floor + 1, limit + 1):
            bit = 1 << col
            if not best_avail & bit:
                continue
            used[u] |= bit
            used[v] |= bit
            pair_max[(u, v)] = col
            assign[edges[best]] = col
            if bound_ok() and rec(max(top, col)):
                return True
            used[u] &= ~bit
            used[v] &= ~bit
            del assign[edges[best]]
        if floor:
            pair_max[(u, v)] = floor
        else:
            pair_max.pop((u, v), None)
        left.add(best)
        rem[u] += 1
        rem[v] += 1
        return False

    if not bound_ok() or not rec(top):
        return None
    assign.update(fixed)
    return EdgeColoring(g, k, assign)


@dataclass
class ExactResult:
    chromatic_index: int
    coloring: EdgeColoring
    lower_bound: int


def chromatic_index_exact(g: Multigraph, max_edges: int = 40, max_n: int = 12,
                          node_limit: int = 2_000_000) -> ExactResult:
    """Exact chromatic index by backtracking between the density and Vizing bounds."""
    if g.edge_count() > max_edges and g.n > max_n:
        raise ResourceError(
            f"exact search capped at {max_edges} edges or {max_n} vertices "
            f"(got {g.edge_count()} edges, {g.n} vertices)"
        )
    delta, mu = g.max_degree, g.mu
    if g.edge_count() == 0:
        return ExactResult(0, EdgeColoring(g, 0), 0)
    lower = delta
    if 3 <= g.n <= 20:
        lower = max(lower, math.ceil(density_rho(g).value))
    upper = color_vizing_bound(g)
    for k in range(lower, delta + mu):
        try:
            found = _search_coloring(g, k, node_limit)
        except _Budget:
            raise ResourceError(f"exact search exceeded {node_limit} nodes at k = {k}") from None
        if found is not None:
            return ExactResult(k, found, lower)
    used = max(upper.colors_used(), default=0)
    if used < delta + mu:
        # the fan coloring may happen to use fewer colors than the palette
        upper = EdgeColoring(g, delta + mu, dict(upper.items()))
    return ExactResult(delta + mu, upper, lower)


# -- heuristic repair ----------------------------------------------------------------
def _kempe_insert(c: EdgeColoring, e: EdgeInstance, rng: random.Random, tries: int) -> bool:
    """Color ``e`` by direct choice or one alternating-path swap, with random restarts."""
    u, v, _ = e
    for attempt in range(tries):
        mu_, mv = c.missing(u), c.missing(v)
        common = mu_ & mv
        if common:
            c.assign(e, min(common))
            return True
        if not mu_ or not mv:
            return False
        pairs = [(a, b) for a in sorted(mu_) for b in sorted(mv)]
        if attempt:
            rng.shuffle(pairs)
        for a, b in pairs[:8]:
            path, end = kempe_chain(c, v, a, b)
            if end != u:
                swap_chain(c, path, a, b)
                c.assign(e, a)
                return True
            path, end = kempe_chain(c, u, b, a)
            if end != v:
                swap_chain(c, path, a, b)
                c.assign(e, b)
                return True
        # perturb: swap a random two-colored chain through one end
        x = rng.choice((u, v))
        a = rng.choice(sorted(c.missing(x)))
        present = sorted(c.present(x))
        if not present:
            return False
        b = rng.choice(present)
        path, _ = kempe_chain(c, x, b, a)
        swap_chain(c, path, a, b)
    return False


def _heuristic_coloring(g: Multigraph, k: int, seed: int = 0, start: EdgeColoring | None = None,
                        tries: int = 60) -> EdgeColoring | None:
    rng = random.Random(seed)
    c = EdgeColoring(g, k, dict(start.items()) if start is not None else None)
    if k >= g.max_degree + g.mu:
        for e in c.uncolored_edges():
            common = c.missing(e[0]) & c.missing(e[1])
            if common:
                c.assign(e, min(common))
            else:
                _fan_extend(c, e)
        return c
    pending = c.uncolored_edges()
    rng.shuffle(pending)
    for e in pending:
        if c.color(e):
            continue
        if not _kempe_insert(c, e, rng, tries):
            return None
    return c


def color_bounded(g: Multigraph, k: int, seed: int = 0, density_cap: int = 20,
                  node_limit: int = 500_000) -> EdgeColoring:
    """Proper ``k``-coloring when ``k`` meets the density/degree bound.

    The bound is checked exactly (density only up to ``density_cap``
    vertices).  Greedy insertion with alternating-path repair is tried
    first, then exact search.
    """
    delta = g.max_degree
    if k < delta or (k - delta) ** 2 * 2 < delta - 1:
        raise InputError(f"k = {k} is below Delta + sqrt((Delta-1)/2) for Delta = {delta}")
    if 3 <= g.n <= density_cap:
        rho = density_rho(g, density_cap).value
        if k < rho:
            raise InputError(f"k = {k} is below the density {rho}")
    for attempt in range(4):
        c = _heuristic_coloring(g, k, seed + attempt)
        if c is not None:
            return c
    try:
        found = _search_coloring(g, k, node_limit)
    except _Budget:
        raise ResourceError(f"no {k}-coloring found within the search budget") from None
    if found is None:
        raise InternalError(f"no {k}-coloring exists although k meets the bound")
    return found


# -- nearly bipartite --------------------------------------------------------------
@dataclass
class NearlyBipartiteResult:
    coloring: EdgeColoring | None
    certificate: object = None
    apex: int | None = None

    @property
    def colorable(self) -> bool:
        return self.coloring is not None


def find_apex(g: Multigraph) -> tuple[int | None, bool]:
    """``(apex, ok)``: ``apex`` is None when ``g`` is already bipartite."""
    side, _ = bipartition(g)
    if side is not None:
        return None, True
    for a in range(g.n):
        side, _ = bipartition(g, skip=a)
        if side is not None:
            return a, True
    return None, False


def color_nearly_bipartite(g: Multigraph, seed: int = 0, node_limit: int = 500_000,
                           overfull_cap: int = 16) -> NearlyBipartiteResult:
    """A ``Delta``-coloring, or a ``Delta``-overfull subgraph showing none exists."""
    from .overfull import find_delta_overfull_subgraph

    apex, ok = find_apex(g)
    if not ok:
        raise DomainError("graph is not nearly bipartite: no single vertex deletion makes it bipartite")
    delta = g.max_degree
    if apex is None:
        return NearlyBipartiteResult(color_bipartite_konig(g))
    base = EdgeColoring(g, delta)
    _koenig_fill(base, [e for e in g.edge_instances() if apex not in e[:2]])
    for attempt in range(4):
        c = _heuristic_coloring(g, delta, seed + attempt, start=base)
        if c is not None:
            return NearlyBipartiteResult(c, apex=apex)
    if g.n <= overfull_cap:
        cert = find_delta_overfull_subgraph(g, cap=overfull_cap)
        if cert.found:
            return NearlyBipartiteResult(None, cert, apex)
    try:
        found = _search_coloring(g, delta, node_limit)
    except _Budget:
        raise ResourceError("nearly-bipartite coloring search exceeded its budget") from None
    if found is not None:
        return NearlyBipartiteResult(found, apex=apex)
    cert = find_delta_overfull_subgraph(g, cap=max(overfull_cap, g.n))
    if not cert.found:
        raise InternalError("no Delta-coloring and no overfull subgraph in a nearly-bipartite graph")
    return NearlyBipartiteResult(None, cert, apex)


def color_class_is_perfect_matching(c: EdgeColoring, col: int) -> bool:
    return all(not c.misses(v, col) for v in range(c.g.n))


def submultigraph(g: Multigraph, edges: Iterable[EdgeInstance]) -> tuple[Multigraph, dict[EdgeInstance, EdgeInstance]]:
    """Spanning subgraph on the given instances plus the new -> old instance map."""
    h = Multigraph(g.n)
    back: dict[EdgeInstance, EdgeInstance] = {}
    for u, v, i in sorted(edges):
        j = h.multiplicity(u, v)
        h.add_edge(u, v)
        back[(u, v, j)] = (u, v, i)
    return h, back


__all__ = [
    "UNCOLORED", "EdgeColoring", "Verdict", "check_proper", "parity_check", "kempe_chain",
    "swap_chain", "swap_alternating_path", "bipartition", "color_bipartite_konig",
    "color_vizing_bound", "equalize", "DensityValue", "density_rho", "ExactResult",
    "chromatic_index_exact", "color_bounded", "NearlyBipartiteResult", "find_apex",
    "color_nearly_bipartite", "color_class_is_perfect_matching", "submultigraph",
]
