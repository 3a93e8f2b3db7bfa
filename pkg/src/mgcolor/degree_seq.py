"""Degree sequences: classification and constructive realizations.

Covers the circulant regular graph, Havel-Hakimi realization, the
two-value near-regular realization, and the split bipartite realization of
an admissible sequence (``realize_admissible_bipartite``) together with its
property checker.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DomainError, InputError
from .multigraph import Multigraph


class DegreeSequence:
    """Non-increasing sequence of non-negative integers.

    Unsorted input is accepted; ``order[i]`` is the caller's index of the
    entry that landed at sorted position ``i`` (ties keep caller order).
    """

    def __init__(self, values: Iterable[int]):
        raw = [int(x) for x in values]
        if any(x < 0 for x in raw):
            raise InputError(f"degree sequence has a negative entry: {raw}")
        self.order = sorted(range(len(raw)), key=lambda i: (-raw[i], i))
        self.values = tuple(raw[i] for i in self.order)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __repr__(self) -> str:
        return f"DegreeSequence({list(self.values)})"

    @property
    def total(self) -> int:
        return sum(self.values)

    def admissibility_failure(self) -> str | None:
        """Name the failed admissibility condition, or None if admissible."""
        if len(self.values) < 2:
            return "length must be at least 2"
        if self.total % 2:
            return f"sum {self.total} is odd"
        if self.values[0] > self.total - self.values[0]:
            return f"largest entry {self.values[0]} exceeds the sum of the rest {self.total - self.values[0]}"
        return None

    @property
    def admissible(self) -> bool:
        return self.admissibility_failure() is None


def _as_seq(seq) -> DegreeSequence:
    return seq if isinstance(seq, DegreeSequence) else DegreeSequence(seq)


def parse_sequences(text: str) -> list[DegreeSequence]:
    """One whitespace-separated sequence per non-empty line."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            try:
                out.append(DegreeSequence(int(x) for x in line.split()))
            except ValueError as exc:
                raise InputError(f"bad sequence line {line!r}") from exc
    return out


def format_sequences(seqs: Iterable[Sequence[int]]) -> str:
    return "".join(" ".join(str(x) for x in s) + "\n" for s in seqs)


def build_regular_circulant(m: int, d: int) -> Multigraph:
    """Simple d-regular graph on m vertices joining j to j +- i for i <= d/2."""
    if m < 3:
        raise InputError(f"need m >= 3, got m={m}")
    if d % 2 or d < 2:
        raise InputError(f"degree must be even and at least 2, got d={d}")
    if d >= m:
        raise InputError(f"degree must be below the vertex count, got d={d}, m={m}")
    g = Multigraph(m)
    for i in range(1, d // 2 + 1):
        for j in range(m):
            g.add_edge(j, (j + i) % m)
    return g


@dataclass
class GraphicTrace:
    graphic: bool
    steps: list[dict] = field(default_factory=list)
    failure: dict | None = None


def _havel_hakimi(values: Sequence[int]) -> tuple[GraphicTrace, list[tuple[int, int]]]:
    residual = list(values)
    trace = GraphicTrace(True)
    edges: list[tuple[int, int]] = []
    if sum(residual) % 2:
        trace.graphic = False
        trace.failure = {"reason": "odd sum", "sum": sum(residual)}
        return trace, edges
    while True:
        live = [i for i, x in enumerate(residual) if x > 0]
        if not live:
            return trace, edges
        v = min(live, key=lambda i: (-residual[i], i))
        s = residual[v]
        others = sorted((i for i in range(len(residual)) if i != v and residual[i] > 0),
                        key=lambda i: (-residual[i], i))
        if len(others) < s:
            trace.graphic = False
            trace.failure = {"reason": "not enough positive entries", "vertex": v, "need": s,
                             "available": len(others), "residual": list(residual)}
            return trace, edges
        targets = others[:s]
        trace.steps.append({"vertex": v, "degree": s, "targets": targets})
        residual[v] = 0
        for t in targets:
            residual[t] -= 1
            edges.append((v, t))


def is_graphic(seq) -> tuple[bool, GraphicTrace]:
    """Havel-Hakimi test; the trace lists every reduction step."""
    s = _as_seq(seq)
    trace, _ = _havel_hakimi(s.values)
    return trace.graphic, trace


def realize_graphic(seq) -> Multigraph:
    """Simple graph realizing ``seq``; vertex ``i`` gets the caller's i-th entry."""
    s = _as_seq(seq)
    trace, edges = _havel_hakimi(s.values)
    if not trace.graphic:
        raise DomainError(f"sequence is not graphic: {trace.failure}", witness=trace.failure)
    g = Multigraph(len(s))
    for a, b in edges:
        g.add_edge(s.order[a], s.order[b])
    return g


def realize_near_regular(m: int, d: int, t: int) -> Multigraph:
    """Simple graph with vertices 0..t-1 of degree d and the rest of degree d-1."""
    if not (m >= d + 1 >= 3):
        raise InputError(f"need m >= d + 1 >= 3, got m={m}, d={d}")
    if not (1 <= t <= m):
        raise InputError(f"t must lie in [1, m], got t={t}")
    if (t * d + (m - t) * (d - 1)) % 2:
        raise InputError("degree sum is odd")
    return realize_graphic([d] * t + [d - 1] * (m - t))


class RealizationGap(DomainError):
    """Admissible input for which no split bipartite realization exists."""


@dataclass
class BipartiteRealization:
    """Multigraph ``graph`` on sorted positions plus the even split index ``p``.

    Vertex ``i`` of ``graph`` is the sequence position ``i + 1``.  When
    ``p == m`` there is no vertex after the split (``has_next`` is False).
    """

    graph: Multigraph
    p: int
    order: list[int]

    @property
    def m(self) -> int:
        return self.graph.n

    @property
    def has_next(self) -> bool:
        return self.p < self.m


def _realize(d: list[int], base: int, edges: list[tuple[int, int, int]]) -> int:
    """Recursive construction on ``d`` (positions base+1 .. base+len(d)); returns p."""
    m = len(d)
    if m == 2:
        if d[0] != d[1]:
            raise RealizationGap(f"two-entry tail {d} is unequal", witness=list(d))
        return 2
    at = lambda i: d[i - 1] if 1 <= i <= m else 0  # noqa: E731
    i0 = next((i for i in range(1, m + 1, 2) if at(i) > at(i + 1)), None)
    if i0 is None:
        # odd m forces d_m = 0 here; the last vertex is an isolated v_{p+1}
        return m if m % 2 == 0 else m - 1
    if i0 == m:
        return m - 1
    gap = at(i0) - at(i0 + 1)
    dm = at(m)
    if gap >= dm:
        if dm:
            edges.append((base + i0, base + m, dm))
        f = list(d[: m - 1])
        f[i0 - 1] -= dm
        return _realize(f, base, edges)
    edges.append((base + i0, base + m, gap))
    f = list(d)
    f[i0 - 1] = d[i0]
    f[m - 1] = dm - gap
    fat = lambda i: f[i - 1] if 1 <= i <= m else 0  # noqa: E731
    j0 = next((j for j in range(i0 + 2, m + 1, 2) if fat(j) > fat(j + 1)), None)
    if j0 is None:
        raise RealizationGap(
            "admissible sequence has no split bipartite realization: the last pair "
            f"({d[m - 2]}, {d[m - 1]}) at the end of {d} cannot be balanced",
            witness=list(d),
        )
    if j0 == m:
        return m - 1
    gap2 = fat(j0) - fat(j0 + 1)
    fm = fat(m)
    if gap2 >= fm:
        edges.append((base + j0, base + m, fm))
        g = list(f[: m - 1])
        g[j0 - 1] -= fm
        return _realize(g, base, edges)
    edges.append((base + j0, base + m, gap2))
    g = list(f)
    g[j0 - 1] = f[j0]
    g[m - 1] = fm - gap2
    q = _realize(g[j0 - 1:], base + j0 - 1, edges)
    return q + j0 - 1


def realize_admissible_bipartite(seq) -> BipartiteRealization:
    """Split bipartite realization ``(L, p)`` built by the deterministic recursion."""
    s = _as_seq(seq)
    why = s.admissibility_failure()
    if why:
        raise DomainError(f"sequence is not admissible: {why}", witness=why)
    edges: list[tuple[int, int, int]] = []
    p = _realize(list(s.values), 0, edges)
    g = Multigraph(len(s))
    for a, b, c in edges:
        g.add_edge(a - 1, b - 1, c)
    r = BipartiteRealization(g, p, list(s.order))
    verdict = verify_split_realization(s, r)
    if not split_realization_holds(verdict):
        failed = {k: v.witness for k, v in verdict.items() if not v.passed}
        raise RealizationGap(
            f"recursion output violates properties {sorted(failed)} for {list(s.values)}",
            witness={"p": p, "failed": failed},
        )
    return r


@dataclass
class PropertyResult:
    passed: bool
    witness: object = None


def verify_split_realization(seq, r: BipartiteRealization) -> dict[str, PropertyResult]:
    """Check each structural property (a)-(f) independently."""
    s = _as_seq(seq)
    m = len(s)
    L = r.graph
    if L.n != m:
        raise InputError(f"realization has {L.n} vertices but the sequence has {m}")
    p = r.p
    d = lambda i: s.values[i - 1] if 1 <= i <= m else 0  # noqa: E731
    dl = lambda i: L.degree(i - 1)  # noqa: E731
    nb = lambda i: sorted(u + 1 for u in L.neighbors(i - 1))  # noqa: E731
    out: dict[str, PropertyResult] = {}

    bad = None
    if p % 2 or not (2 <= p <= m):
        bad = {"p": p}
    for i in range(1, p + 1, 2):
        if bad:
            break
        if dl(i) != d(i) - d(i + 1):
            bad = {"vertex": i, "degree": dl(i), "expected": d(i) - d(i + 1)}
        elif i + 1 <= m and dl(i + 1) != 0:
            bad = {"vertex": i + 1, "degree": dl(i + 1), "expected": 0}
    out["a"] = PropertyResult(bad is None, bad)

    bad = None
    if p + 1 <= m and dl(p + 1) > d(p + 1):
        bad = {"vertex": p + 1, "degree": dl(p + 1), "bound": d(p + 1)}
    for i in range(p + 2, m + 1):
        if bad:
            break
        if dl(i) != d(i):
            bad = {"vertex": i, "degree": dl(i), "expected": d(i)}
    out["b"] = PropertyResult(bad is None, bad)

    bad = None
    for u, v, _ in L.pairs():
        if (u + 1 <= p) == (v + 1 <= p):
            bad = {"edge": (u + 1, v + 1)}
            break
    out["c"] = PropertyResult(bad is None, bad)

    out["d"] = _check_forest(L)

    bad = None
    left = [i for i in range(1, p + 1, 2) if nb(i)]
    for i in left:
        ns = nb(i)
        if ns != list(range(ns[0], ns[-1] + 1)):
            bad = {"vertex": i, "neighbors": ns}
            break
    if bad is None:
        for x in range(len(left)):
            for y in range(x + 1, len(left)):
                if nb(left[x])[0] < nb(left[y])[-1]:
                    bad = {"pair": (left[x], left[y])}
                    break
            if bad:
                break
    out["e"] = PropertyResult(bad is None, bad)

    bad = None
    right = [i for i in range(p + 1, m + 1) if nb(i)]
    for x in range(len(right)):
        for y in range(x + 1, len(right)):
            if nb(right[x])[0] < nb(right[y])[-1]:
                bad = {"pair": (right[x], right[y])}
                break
        if bad:
            break
    out["f"] = PropertyResult(bad is None, bad)
    return out


def _check_forest(L: Multigraph) -> PropertyResult:
    parent = list(range(L.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in L.pairs():
        ru, rv = find(u), find(v)
        if ru == rv:
            return PropertyResult(False, {"cycle_edge": (u + 1, v + 1)})
        parent[ru] = rv
    for v in range(L.n):
        inner = [u for u in L.neighbors(v) if L.simple_degree(u) > 1]
        if len(inner) > 2:
            return PropertyResult(False, {"vertex": v + 1, "non_leaf_neighbors": [u + 1 for u in inner]})
    return PropertyResult(True)


def split_realization_holds(verdict: dict[str, PropertyResult]) -> bool:
    return all(r.passed for r in verdict.values())
