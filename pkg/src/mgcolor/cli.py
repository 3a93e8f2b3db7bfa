"""Command-line front end: generators, classification, realization and the pipeline.

Exit codes: 0 complete or verdict reached, 2 structured analytic failure,
1 usage or IO error.
"""

from __future__ import annotations

import hashlib
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import click
import networkx as nx

from .decompose import run_pipeline
from .degree_seq import (
    RealizationGap,
    build_regular_circulant,
    is_graphic,
    parse_sequences,
    realize_admissible_bipartite,
    realize_graphic,
    verify_split_realization,
)
from .edge_color import EdgeColoring, check_proper, chromatic_index_exact, parity_check
from .errors import DomainError, InputError, MgColorError, ResourceError
from .multigraph import Multigraph, complete_bipartite, complete_graph, petersen_minus_vertex
from .overfull import (
    conjecture_verdict,
    find_delta_overfull_subgraph,
    is_edge_chromatic_critical,
)

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2


def _emit(report: dict, fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps(report, indent=2, default=str) + "\n"
    else:
        text = "".join(f"{k}: {json.dumps(v, default=str)}\n" for k, v in report.items())
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> tuple[Multigraph, str]:
    text = _read(path)
    return Multigraph.from_text(text), hashlib.sha256(text.encode()).hexdigest()


def _fail(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(EXIT_ERROR)


def _parse_eta(raw: str) -> Fraction:
    try:
        eta = Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"eta must be a number or fraction, got {raw!r}") from None
    if eta <= 0:
        raise InputError("eta must be positive")
    return eta


@click.group()
def main() -> None:
    """Edge coloring of multigraphs with few overfull obstructions."""


# -- gen ------------------------------------------------------------------------------------
def _complete_minus_matching(n: int) -> Multigraph:
    g = complete_graph(n)
    for i in range(0, n - 1, 2):
        g.remove_edge(i, i + 1)
    return g


def _random_graph(n: int, max_degree: int, min_degree: int, seed: int) -> Multigraph:
    if not 0 <= min_degree <= max_degree < n:
        raise InputError("need 0 <= min-degree <= max-degree < n")
    rng = random.Random(seed)
    for _ in range(1000):
        seq = [max_degree] + [rng.randint(min_degree, max_degree) for _ in range(n - 1)]
        if is_graphic(seq)[0]:
            break
    else:
        raise InputError("no graphic sequence found for these degree targets")
    g = realize_graphic(seq)
    h = nx.Graph([(u, v) for u, v, _ in g.pairs()])
    h.add_nodes_from(range(n))
    if h.number_of_edges() >= 2:
        swaps = 4 * h.number_of_edges()
        try:
            nx.double_edge_swap(h, nswap=swaps, max_tries=swaps * 20, seed=seed)
        except nx.NetworkXException:
            pass
    return Multigraph(n, sorted(h.edges()))


@main.command()
@click.argument("kind", type=click.Choice(
    ["complete", "complete-minus-matching", "complete-bipartite", "circulant", "random", "petersen-minus-vertex"]))
@click.argument("args", nargs=-1, type=int)
@click.option("--max-degree", type=int, default=None, help="random: target maximum degree")
@click.option("--min-degree", type=int, default=0, help="random: minimum degree")
@click.option("--seed", type=int, default=0)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--dot", is_flag=True, help="write DOT instead of the edge-list format")
def gen(kind, args, max_degree, min_degree, seed, out, dot):
    """Generate a graph file: complete N, complete-minus-matching N, complete-bipartite S T,
    circulant M D, random N, petersen-minus-vertex."""
    need = {"complete": 1, "complete-minus-matching": 1, "complete-bipartite": 2, "circulant": 2,
            "random": 1, "petersen-minus-vertex": 0}[kind]
    if len(args) != need:
        raise click.UsageError(f"{kind} takes {need} integer argument(s)")
    try:
        if kind == "complete":
            g = complete_graph(args[0])
        elif kind == "complete-minus-matching":
            g = _complete_minus_matching(args[0])
        elif kind == "complete-bipartite":
            g = complete_bipartite(*args)
        elif kind == "circulant":
            g = build_regular_circulant(*args)
        elif kind == "random":
            n = args[0]
            g = _random_graph(n, n - 1 if max_degree is None else max_degree, min_degree, seed)
        else:
            g = petersen_minus_vertex()
    except MgColorError as exc:
        _fail(exc)
    text = g.to_dot() if dot else g.to_text()
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


# -- classify ---------------------------------------------------------------------------------
def classify_report(g: Multigraph, max_n: int = 12, eps: Fraction = Fraction(1, 3)) -> tuple[dict, bool]:
    """Report dict and whether every part was computed."""
    res: dict = {"n": g.n, "edges": g.edge_count(), "delta": g.max_degree, "mu": g.mu}
    complete = True
    if g.n > max_n:
        res["partial"] = f"n = {g.n} exceeds --max-n {max_n}"
        cert = find_delta_overfull_subgraph(g, cap=max_n)
        res["overfull"] = cert.to_dict()
        return res, False
    try:
        exact = chromatic_index_exact(g)
        res["chromatic_index"] = exact.chromatic_index
        res["class"] = 1 if exact.chromatic_index == g.max_degree else 2
        res["parity_check"] = parity_check(g, exact.coloring).passed
    except ResourceError as exc:
        res["chromatic_index"] = None
        res["partial"] = str(exc)
        complete = False
    cert = find_delta_overfull_subgraph(g, cap=max(max_n, 16))
    res["overfull"] = cert.to_dict()
    if g.is_simple() and g.edge_count():
        try:
            res["critical"] = is_edge_chromatic_critical(g)
        except ResourceError as exc:
            res["critical"] = None
            res["partial"] = str(exc)
            complete = False
    if complete and g.edge_count():
        rep = conjecture_verdict(g, eps)
        res["conjecture"] = rep.to_dict()
    return res, complete


@main.command()
@click.option("--input", "input_path", required=True, help="graph file, or - for stdin")
@click.option("--max-n", type=int, default=12, show_default=True)
@click.option("--eps", default="1/3", show_default=True, help="degree hypothesis Delta >= (1 - eps) n")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def classify(input_path, max_n, eps, fmt, out):
    """Chromatic index, overfull certificate, criticality and the biconditional status."""
    t0 = time.perf_counter()
    try:
        g, digest = _load_graph(input_path)
        res, complete = classify_report(g, max_n, Fraction(eps))
    except MgColorError as exc:
        _fail(exc)
    report = {"command": "classify", "input": input_path, "input_sha256": digest, "results": res,
              "timings": {"seconds": round(time.perf_counter() - t0, 3)}}
    _emit(report, fmt, out)
    sys.exit(EXIT_OK if complete else EXIT_FAILED)


# -- realize ----------------------------------------------------------------------------------
@main.command()
@click.argument("values", nargs=-1, type=int)
@click.option("--input", "input_path", default=None, help="file with one sequence per line")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def realize(values, input_path, fmt, out):
    """Split bipartite realization of admissible sequences with the property audit."""
    try:
        seqs = parse_sequences(_read(input_path)) if input_path else parse_sequences(" ".join(map(str, values)))
    except MgColorError as exc:
        _fail(exc)
    results, failed = [], False
    for seq in seqs:
        entry: dict = {"sequence": list(seq.values)}
        try:
            r = realize_admissible_bipartite(seq)
            verdict = verify_split_realization(seq, r)
            entry.update({
                "p": r.p,
                "edges": [list(x) for x in r.graph.pairs()],
                "properties": {k: v.passed for k, v in verdict.items()},
            })
            failed |= not all(v.passed for v in verdict.values())
        except RealizationGap as exc:
            entry["gap"] = str(exc)
            failed = True
        except DomainError as exc:
            entry["error"] = str(exc)
            failed = True
        results.append(entry)
    _emit({"command": "realize", "results": results}, fmt, out)
    sys.exit(EXIT_FAILED if failed else EXIT_OK)


# -- pipeline ---------------------------------------------------------------------------------
@main.command()
@click.option("--input", "input_path", required=True, help="graph file, or - for stdin")
@click.option("--eta", default=None, help="threshold eta (default 1/n)")
@click.option("--seed", type=int, default=0)
@click.option("--rescue", is_flag=True, help="allow fallback completion of stuck steps")
@click.option("--max-n", type=int, default=40, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="report path")
@click.option("--coloring-out", type=click.Path(dir_okay=False), default=None,
              help="coloring file (default: next to --out)")
def pipeline(input_path, eta, seed, rescue, max_n, fmt, out, coloring_out):
    """Regularize, decompose and color; the coloring is verified before it is written."""
    t0 = time.perf_counter()
    try:
        g, digest = _load_graph(input_path)
        if g.n > max_n:
            raise InputError(f"n = {g.n} exceeds --max-n {max_n}")
        eta_v = _parse_eta(eta) if eta is not None else Fraction(1, g.n)
        result = run_pipeline(g, eta_v, seed=seed, rescue=rescue)
    except MgColorError as exc:
        _fail(exc)
    report = {
        "command": "pipeline",
        "input": input_path,
        "input_sha256": digest,
        "eta": str(eta_v),
        "seed": seed,
        "rescue": rescue,
        "results": result.to_dict(),
    }
    if result.complete:
        cg = result.coloring_g
        text = cg.to_text()
        reloaded = EdgeColoring.from_text(g, cg.k, text)
        if not (reloaded.is_total() and check_proper(g, reloaded).passed):
            click.echo("error: coloring failed re-verification", err=True)
            sys.exit(EXIT_ERROR)
        target = coloring_out or (str(Path(out).with_suffix(".coloring.txt")) if out else None)
        if target:
            Path(target).write_text(text)
            report["coloring_file"] = target
        else:
            report["coloring"] = text
        report["colors"] = cg.k
    report["timings"] = {"seconds": round(time.perf_counter() - t0, 3)}
    _emit(report, fmt, out)
    sys.exit(EXIT_OK if result.complete else EXIT_FAILED)


if __name__ == "__main__":
    main()
