"""Overfull subgraphs, criticality checks and related verdicts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .edge_color import _Budget, _search_coloring, chromatic_index_exact
from .errors import DomainError, InputError, ResourceError
from .multigraph import Multigraph, subset_edge_counts

FOUND = "found"
ABSENT = "certified-absent"


@dataclass
class OverfullCertificate:
    """A ``Delta``-overfull vertex set, or a tag recording how absence was shown.

    ``proof`` is one of ``exhaustive``, ``regular-cut``, ``min-degree-lemma``
    or ``parity``.
    """

    mode: str
    proof: str
    subset: tuple[int, ...] = ()
    edge_count: int = 0
    threshold: int = 0
    delta: int = 0

    @property
    def found(self) -> bool:
        return self.mode == FOUND

    def recheck(self, g: Multigraph) -> bool:
        """Re-verify a found certificate from scratch."""
        if not self.found:
            return True
        xs = list(self.subset)
        return (
            len(xs) % 2 == 1
            and len(xs) >= 3
            and g.e_within(xs) == self.edge_count
            and self.threshold == g.max_degree * (len(xs) // 2)
            and self.edge_count > self.threshold
        )

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "proof": self.proof,
            "subset": list(self.subset),
            "edge_count": self.edge_count,
            "threshold": self.threshold,
            "delta": self.delta,
        }


def is_overfull(g: Multigraph) -> bool:
    if g.n == 0:
        raise InputError("overfullness is undefined on the empty graph")
    return g.edge_count() > g.max_degree * (g.n // 2)


def min_degree_no_overfull(g: Multigraph) -> bool:
    """Even order, minimum degree above n/2, and two minimum-degree vertices.

    True certifies that ``g`` has no ``Delta``-overfull subgraph.  Only
    applies to simple graphs; returns False otherwise.
    """
    if g.n == 0 or g.n % 2 or not g.is_simple():
        return False
    low = g.min_degree
    return 2 * low > g.n and g.degrees().count(low) >= 2


def _found(g: Multigraph, xs, proof: str) -> OverfullCertificate:
    xs = tuple(sorted(xs))
    delta = g.max_degree
    return OverfullCertificate(FOUND, proof, xs, g.e_within(xs), delta * (len(xs) // 2), delta)


def _regular_cut(g: Multigraph) -> OverfullCertificate:
    """Regular graphs: an odd set is overfull iff fewer than ``Delta - 1`` edges leave it."""
    delta = g.max_degree
    if g.n % 2:
        return _found(g, range(g.n), "regular-cut")
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    for u, v, m in g.pairs():
        h.add_edge(u, v, capacity=m)
    best: tuple[int, set[int]] | None = None
    for comp in nx.connected_components(h):
        if len(comp) % 2:
            if len(comp) >= 3:
                return _found(g, comp, "regular-cut")
            continue
        if len(comp) < 2:
            continue
        tree = nx.gomory_hu_tree(h.subgraph(comp))
        # fundamental cuts of the cut tree that are odd contain a minimum odd cut
        for a, b, w in list(tree.edges(data="weight")):
            tree.remove_edge(a, b)
            side = nx.node_connected_component(tree, a)
            tree.add_edge(a, b, weight=w)
            if len(side) % 2 and (best is None or w < best[0]):
                best = (w, set(side))
    if best is not None and best[0] <= delta - 2:
        side = best[1]
        if len(side) < 3:
            raise DomainError("minimum odd cut isolates a vertex; graph is not regular")
        return _found(g, side, "regular-cut")
    return OverfullCertificate(ABSENT, "regular-cut", delta=delta)


def _exhaustive(g: Multigraph) -> OverfullCertificate:
    delta = g.max_degree
    counts = subset_edge_counts(g)
    best = None
    for mask in range(1, 1 << g.n):
        size = bin(mask).count("1")
        if size >= 3 and size % 2 and counts[mask] > delta * (size // 2):
            if best is None or size < best[0]:
                best = (size, mask)
    if best is None:
        return OverfullCertificate(ABSENT, "exhaustive", delta=delta)
    return _found(g, [i for i in range(g.n) if best[1] >> i & 1], "exhaustive")


def find_delta_overfull_subgraph(g: Multigraph, cap: int = 16, mode: str = "auto") -> OverfullCertificate:
    """Search for an odd vertex set ``X`` with ``e(G[X]) > Delta * floor(|X|/2)``.

    ``mode`` is ``auto``, ``exhaustive`` or ``regular-cut``.  Auto uses the
    cut criterion on regular graphs, the minimum-degree lemma when it
    applies, and otherwise exhaustive search up to ``cap`` vertices.
    """
    if g.n == 0:
        raise InputError("overfull search needs a non-empty graph")
    if mode not in ("auto", "exhaustive", "regular-cut"):
        raise InputError(f"unknown overfull search mode {mode!r}")
    if g.max_degree == 0:
        return OverfullCertificate(ABSENT, "parity", delta=0)
    if mode == "regular-cut" or (mode == "auto" and g.is_regular()):
        if not g.is_regular():
            raise InputError("the cut criterion needs a regular graph")
        return _regular_cut(g)
    if mode == "auto" and min_degree_no_overfull(g):
        return OverfullCertificate(ABSENT, "min-degree-lemma", delta=g.max_degree)
    if g.n > cap:
        raise ResourceError(f"exhaustive overfull search capped at {cap} vertices, got {g.n}")
    return _exhaustive(g)


@dataclass
class ValVerdict:
    passed: bool
    degree_sum_ok: bool
    neighbor_counts: dict[tuple[int, int], tuple[int, int]] = field(default_factory=dict)


def val_check(g: Multigraph, x: int, y: int) -> ValVerdict:
    """Adjacency-lemma conditions for the edge ``xy`` in both orientations.

    ``neighbor_counts[(a, b)]`` is (degree-Delta neighbors of ``a`` other
    than ``b``, required count ``Delta - d(b) + 1``).
    """
    if not g.is_simple():
        raise InputError("the adjacency check needs a simple graph")
    if g.multiplicity(x, y) == 0:
        raise InputError(f"{x}-{y} is not an edge")
    delta = g.max_degree
    counts = {}
    ok = True
    for a, b in ((x, y), (y, x)):
        have = sum(1 for w in g.neighbors(a) if w != b and g.degree(w) == delta)
        need = delta - g.degree(b) + 1
        counts[(a, b)] = (have, need)
        ok = ok and have >= need
    sum_ok = g.degree(x) + g.degree(y) >= delta + 2
    return ValVerdict(ok and sum_ok, sum_ok, counts)


def _connected(g: Multigraph) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        for w in g.neighbors(stack.pop()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def is_edge_chromatic_critical(g: Multigraph, max_edges: int = 40, node_limit: int = 2_000_000) -> bool:
    """Class 2, connected, and deleting any edge leaves a ``Delta``-colorable graph."""
    if not g.is_simple():
        raise InputError("criticality is checked for simple graphs")
    if g.edge_count() == 0 or not _connected(g):
        return False
    if g.edge_count() > max_edges:
        raise ResourceError(f"criticality check capped at {max_edges} edges")
    delta = g.max_degree
    if chromatic_index_exact(g, max_edges=max_edges, node_limit=node_limit).chromatic_index != delta + 1:
        return False
    for u, v, _ in list(g.pairs()):
        h = g.copy()
        h.remove_edge(u, v)
        try:
            if _search_coloring(h, delta, node_limit) is None:
                return False
        except _Budget:
            raise ResourceError("criticality search exceeded its node budget") from None
    return True


@dataclass
class BoundVerdict:
    hypothesis: bool
    overfull: bool
    consistent: bool
    lhs: Fraction
    rhs: Fraction


def critical_overfull_bound(g: Multigraph, assume_critical: bool = False) -> BoundVerdict:
    """If ``Delta - 7 delta / 4 >= (3n - 17) / 4`` a critical graph must be overfull."""
    if not assume_critical and not is_edge_chromatic_critical(g):
        raise DomainError("graph is not edge-chromatic critical")
    lhs = Fraction(g.max_degree) - Fraction(7 * g.min_degree, 4)
    rhs = Fraction(3 * g.n - 17, 4)
    hyp = lhs >= rhs
    over = is_overfull(g)
    return BoundVerdict(hyp, over, (not hyp) or over, lhs, rhs)


@dataclass
class AverageDegreeVerdict:
    passed: bool
    average: Fraction
    bound: Fraction
    edge_identity: bool


def average_degree_criterion(g: Multigraph, assume_critical: bool = False) -> AverageDegreeVerdict:
    """Check ``2e/n >= Delta - 1 + 3/n`` with exact arithmetic.

    ``edge_identity`` reports whether ``2e = Delta (n - 1) + 2``, the value
    forced for critical overfull graphs.
    """
    if not assume_critical and not is_edge_chromatic_critical(g):
        raise DomainError("average-degree criterion needs an edge-chromatic critical graph")
    n, e, delta = g.n, g.edge_count(), g.max_degree
    avg = Fraction(2 * e, n)
    bound = delta - 1 + Fraction(3, n)
    return AverageDegreeVerdict(avg >= bound, avg, bound, 2 * e == delta * (n - 1) + 2)


@dataclass
class ExpanderVerdict:
    expander: bool
    mode: str
    violation: tuple[int, ...] | None = None
    checked: int = 0


def robust_expander_check(g: Multigraph, nu: Fraction, tau: Fraction, mode: str = "auto",
                          cap: int = 18, samples: int = 200, seed: int = 0) -> ExpanderVerdict:
    """Every ``S`` with ``tau n <= |S| <= (1-tau) n`` has ``|RN(S)| >= |S| + nu n``.

    ``RN(S)`` holds the vertices with at least ``nu n`` neighbors in ``S``.
    Sampled mode only reports that no violation was seen.
    """
    nu, tau = Fraction(nu), Fraction(tau)
    n = g.n
    if mode == "auto":
        mode = "exhaustive" if n <= cap else "sampled"
    if mode == "exhaustive" and n > cap:
        raise ResourceError(f"exhaustive expander check capped at {cap} vertices, got {n}")
    if mode not in ("exhaustive", "sampled"):
        raise InputError(f"unknown expander mode {mode!r}")
    nbr = [0] * n
    for u, v, _ in g.pairs():
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    need_nbrs = nu * n
    sizes = [s for s in range(n + 1) if tau * n <= s <= (1 - tau) * n]

    def violates(mask: int, size: int) -> bool:
        rn = sum(1 for v in range(n) if bin(nbr[v] & mask).count("1") >= need_nbrs)
        return rn < size + nu * n

    checked = 0
    if mode == "exhaustive":
        allowed = set(sizes)
        for mask in range(1 << n):
            size = bin(mask).count("1")
            if size not in allowed:
                continue
            checked += 1
            if violates(mask, size):
                return ExpanderVerdict(False, mode, tuple(i for i in range(n) if mask >> i & 1), checked)
        return ExpanderVerdict(True, mode, None, checked)
    rng = random.Random(seed)
    for size in sizes:
        for _ in range(samples):
            members = rng.sample(range(n), size)
            mask = sum(1 << v for v in members)
            checked += 1
            if violates(mask, size):
                return ExpanderVerdict(False, mode, tuple(sorted(members)), checked)
    return ExpanderVerdict(True, mode, None, checked)


@dataclass
class ConjectureReport:
    n: int
    delta: int
    chromatic_index: int
    class_one: bool
    certificate: OverfullCertificate
    biconditional_holds: bool
    degree_hypothesis: bool
    third_hypothesis: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "delta": self.delta,
            "chromatic_index": self.chromatic_index,
            "class_one": self.class_one,
            "overfull": self.certificate.to_dict(),
            "biconditional_holds": self.biconditional_holds,
            "degree_hypothesis": self.degree_hypothesis,
            "delta_above_third": self.third_hypothesis,
        }


def conjecture_verdict(g: Multigraph, eps: Fraction, cap: int = 16) -> ConjectureReport:
    """Compare ``chi' = Delta`` with absence of overfull subgraphs, independently computed."""
    eps = Fraction(eps)
    exact = chromatic_index_exact(g)
    cert = find_delta_overfull_subgraph(g, cap=cap, mode="exhaustive" if g.n <= cap else "auto")
    delta = g.max_degree
    class_one = exact.chromatic_index == delta
    return ConjectureReport(
        n=g.n,
        delta=delta,
        chromatic_index=exact.chromatic_index,
        class_one=class_one,
        certificate=cert,
        biconditional_holds=class_one == (not cert.found),
        degree_hypothesis=delta >= (1 - eps) * g.n,
        third_hypothesis=3 * delta > g.n,
    )
