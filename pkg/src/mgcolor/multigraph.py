"""Loopless undirected multigraph on dense integer vertices.

Multiplicities are stored sparsely per unordered pair.  Every other module
builds on this type, so it also houses the degree, deficiency and subgraph
queries and the edge-list text format.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import InputError

Pair = tuple[int, int]
EdgeInstance = tuple[int, int, int]


def norm(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


class Multigraph:
    """Loopless multigraph with per-pair multiplicities.

    Vertices are ``0 .. n-1``.  ``edges`` may hold ``(u, v)`` pairs (one copy
    each) or ``(u, v, mult)`` triples.
    """

    def __init__(self, n: int, edges: Iterable = ()):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self._adj: list[dict[int, int]] = [dict() for _ in range(n)]
        self._deg = [0] * n
        self._m = 0
        self._cache: dict[str, int] = {}
        for e in edges:
            if len(e) == 2:
                self.add_edge(e[0], e[1])
            else:
                self.add_edge(e[0], e[1], e[2])

    # -- mutation ---------------------------------------------------------
    def _check(self, v: int) -> None:
        if not isinstance(v, int) or v < 0 or v >= self.n:
            raise InputError(f"invalid vertex {v!r} for graph on {self.n} vertices")

    def add_edge(self, u: int, v: int, count: int = 1) -> None:
        self._check(u)
        self._check(v)
        if u == v:
            raise InputError(f"loop at vertex {u} is not allowed")
        if count < 0:
            raise InputError("edge count must be non-negative")
        if count == 0:
            return
        self._adj[u][v] = self._adj[u].get(v, 0) + count
        self._adj[v][u] = self._adj[v].get(u, 0) + count
        self._deg[u] += count
        self._deg[v] += count
        self._m += count
        self._cache.clear()

    def remove_edge(self, u: int, v: int, count: int = 1) -> None:
        self._check(u)
        self._check(v)
        have = self._adj[u].get(v, 0)
        if count > have:
            raise InputError(f"cannot remove {count} copies of {u}-{v}; only {have} present")
        if count == 0:
            return
        if have == count:
            del self._adj[u][v]
            del self._adj[v][u]
        else:
            self._adj[u][v] = have - count
            self._adj[v][u] = have - count
        self._deg[u] -= count
        self._deg[v] -= count
        self._m -= count
        self._cache.clear()

    def add_vertex(self) -> int:
        self._adj.append(dict())
        self._deg.append(0)
        self.n += 1
        self._cache.clear()
        return self.n - 1

    # -- queries ------------------------------------------------------------
    def multiplicity(self, u: int, v: int) -> int:
        self._check(u)
        self._check(v)
        return self._adj[u].get(v, 0)

    def degree(self, v: int) -> int:
        self._check(v)
        return self._deg[v]

    def simple_degree(self, v: int) -> int:
        self._check(v)
        return len(self._adj[v])

    def vertex_multiplicity(self, v: int) -> int:
        self._check(v)
        return max(self._adj[v].values(), default=0)

    def neighbors(self, v: int) -> dict[int, int]:
        """Neighbor -> multiplicity map (read-only view by convention)."""
        self._check(v)
        return self._adj[v]

    def degrees(self) -> list[int]:
        return list(self._deg)

    def edge_count(self) -> int:
        return self._m

    def pair_count(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    @property
    def max_degree(self) -> int:
        if "max" not in self._cache:
            self._cache["max"] = max(self._deg, default=0)
        return self._cache["max"]

    @property
    def min_degree(self) -> int:
        if "min" not in self._cache:
            self._cache["min"] = min(self._deg, default=0)
        return self._cache["min"]

    @property
    def mu(self) -> int:
        if "mu" not in self._cache:
            self._cache["mu"] = max((max(a.values(), default=0) for a in self._adj), default=0)
        return self._cache["mu"]

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(u, v, mult)`` with ``u < v`` in lexicographic order."""
        for u in range(self.n):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield u, v, self._adj[u][v]

    def edge_instances(self) -> list[EdgeInstance]:
        return [(u, v, c) for u, v, m in self.pairs() for c in range(m)]

    def is_regular(self) -> bool:
        return self.n == 0 or self.max_degree == self.min_degree

    def is_simple(self) -> bool:
        return self.mu <= 1

    def e_between(self, xs: Iterable[int], ys: Iterable[int]) -> int:
        """Edges with one end in ``xs`` and the other in ``ys`` (disjoint sets)."""
        ys = set(ys)
        return sum(m for x in set(xs) for y, m in self._adj[x].items() if y in ys)

    def e_within(self, xs: Iterable[int]) -> int:
        xs = set(xs)
        return sum(m for x in xs for y, m in self._adj[x].items() if y in xs and x < y)

    def cut(self, xs: Iterable[int]) -> int:
        xs = set(xs)
        return sum(m for x in xs for y, m in self._adj[x].items() if y not in xs)

    def copy(self) -> "Multigraph":
        g = Multigraph(self.n)
        for u, v, m in self.pairs():
            g.add_edge(u, v, m)
        return g

    def underlying_simple(self) -> "Multigraph":
        return Multigraph(self.n, [(u, v) for u, v, _ in self.pairs()])

    def is_subgraph_of(self, other: "Multigraph") -> bool:
        if self.n > other.n:
            return False
        return all(other._adj[u].get(v, 0) >= m for u, v, m in self.pairs())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and list(self.pairs()) == list(other.pairs())

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, e={self._m}, pairs={self.pair_count()})"

    # -- text formats --------------------------------------------------------
    def to_text(self) -> str:
        rows = list(self.pairs())
        lines = [f"{self.n} {len(rows)}"] + [f"{u} {v} {m}" for u, v, m in rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Multigraph":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise InputError("empty edge-list text")
        try:
            head = [int(x) for x in lines[0].split()]
            if len(head) != 2:
                raise ValueError
            n, m = head
            g = cls(n)
            body = lines[1:]
            if len(body) != m:
                raise InputError(f"header announces {m} pairs but {len(body)} lines follow")
            for ln in body:
                parts = [int(x) for x in ln.split()]
                if len(parts) == 2:
                    parts.append(1)
                if len(parts) != 3 or parts[2] < 1:
                    raise ValueError
                g.add_edge(*parts)
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed edge-list text: {exc}") from exc
        return g

    def to_dot(self, name: str = "G") -> str:
        body = "".join(f"  {u} -- {v};\n" for u, v, _ in self.pairs())
        nodes = "".join(f"  {v};\n" for v in range(self.n))
        return f"graph {name} {{\n{nodes}{body}}}\n"


def _valid_subset(g: Multigraph, s: Iterable[int]) -> list[int]:
    out = sorted(set(s))
    for v in out:
        g._check(v)
    return out


def degree_profile(g: Multigraph, v: int) -> tuple[int, int, int]:
    """Return ``(degree, simple degree, vertex multiplicity)`` of ``v``."""
    return g.degree(v), g.simple_degree(v), g.vertex_multiplicity(v)


def induced_subgraph(g: Multigraph, s: Iterable[int]) -> tuple[Multigraph, dict[int, int]]:
    """Subgraph induced by ``s`` plus the old -> new vertex relabeling."""
    keep = _valid_subset(g, s)
    relabel = {v: i for i, v in enumerate(keep)}
    h = Multigraph(len(keep))
    for v in keep:
        for u, m in g.neighbors(v).items():
            if u in relabel and v < u:
                h.add_edge(relabel[v], relabel[u], m)
    return h, relabel


def bipartite_between(g: Multigraph, a: Iterable[int], b: Iterable[int]) -> Multigraph:
    """Spanning subgraph keeping only edges between ``a`` and ``b``."""
    a = set(_valid_subset(g, a))
    b = set(_valid_subset(g, b))
    if a & b:
        raise InputError(f"vertex sets overlap on {sorted(a & b)}")
    h = Multigraph(g.n)
    for x in a:
        for y, m in g.neighbors(x).items():
            if y in b:
                h.add_edge(x, y, m)
    return h


def deficiency(g: Multigraph, v: int | None = None) -> int:
    """``Delta(g) - d(v)``, or the sum over all vertices when ``v`` is None."""
    if g.n == 0:
        raise InputError("deficiency is undefined on the empty graph")
    top = g.max_degree
    if v is None:
        return sum(top - d for d in g.degrees())
    return top - g.degree(v)


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(s: int, t: int) -> Multigraph:
    return Multigraph(s + t, [(u, s + v) for u in range(s) for v in range(t)])


def cycle_graph(n: int) -> Multigraph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph(10, outer + spokes + inner)


def petersen_minus_vertex() -> Multigraph:
    """Petersen graph with vertex 0 deleted (9 vertices, 12 edges)."""
    h, _ = induced_subgraph(petersen_graph(), range(1, 10))
    return h


def disjoint_union(*graphs: Multigraph) -> Multigraph:
    out = Multigraph(sum(g.n for g in graphs))
    off = 0
    for g in graphs:
        for u, v, m in g.pairs():
            out.add_edge(u + off, v + off, m)
        off += g.n
    return out


def subset_edge_counts(g: Multigraph) -> list[int]:
    """``out[mask]`` = number of edges inside the vertex set encoded by ``mask``."""
    n = g.n
    nbr = [0] * n
    for u, v, _ in g.pairs():
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    out = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        add = 0
        r = rest & nbr[low]
        adj = g.neighbors(low)
        while r:
            b = r & -r
            add += adj[b.bit_length() - 1]
            r ^= b
        out[mask] = out[rest] + add
    return out
