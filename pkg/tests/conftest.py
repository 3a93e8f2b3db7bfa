import random

from hypothesis import strategies as st

from mgcolor.multigraph import Multigraph


@st.composite
def multigraphs(draw, max_n=7, max_mu=3, min_n=1):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mults = draw(st.lists(st.integers(0, max_mu), min_size=len(pairs), max_size=len(pairs)))
    return Multigraph(n, [(u, v, m) for (u, v), m in zip(pairs, mults) if m])


@st.composite
def simple_graphs(draw, max_n=7, min_n=1):
    return draw(multigraphs(max_n=max_n, max_mu=1, min_n=min_n))


def random_multigraph(rng: random.Random, n: int, p: float, max_mu: int = 1) -> Multigraph:
    g = Multigraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                g.add_edge(u, v, rng.randint(1, max_mu))
    return g


# one summary line per acceptance criterion, filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
