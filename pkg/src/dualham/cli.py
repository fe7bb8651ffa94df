"""Command-line surface.

Subcommands: check, color, partition, hamilton, survey, gen.  Machine
output is JSON lines on stdout; a short human summary goes to stderr.
Exit codes: 0 = all checks passed, 1 = a check failed (the report carries
a witness), 2 = bad input or usage.

Every artifact is re-verified by the independent checker before being
printed; the CLI never emits an unverified result.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable

from . import colorizer, duality, gen, structure, treesplit
from .embed import (
    EmbeddedGraph,
    classify_big_small,
    dual,
    is_even_triangulation,
    tri_partition,
)
from .errors import DualhamError, IoError, ParseError
from .ugraph import DEFAULT_CYCLE_CAP, Graph


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc


def _load_embedded(text: str) -> EmbeddedGraph:
    try:
        return EmbeddedGraph.from_json(text)
    except (json.JSONDecodeError, KeyError, ValueError, DualhamError) as exc:
        raise ParseError(f"bad embedded-graph JSON: {exc}") from exc


def _load_abstract(text: str) -> tuple[Graph, dict[int, int]]:
    """Abstract graph plus optional alpha-colouring `a` from the input."""
    try:
        data = json.loads(text)
        edges = [(int(u), int(v)) for u, v in data["edges"]]
        a = {int(k): int(v) for k, v in data.get("a", {}).items()}
        return Graph.from_edges(edges), a
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad graph JSON: {exc}") from exc


class Report:
    """One run's machine-readable record: payload plus named checks."""

    def __init__(self, command: str, digest: str):
        self.t0 = time.monotonic()
        self.out: dict[str, Any] = {
            "command": command,
            "input": digest,
            "result": {},
            "checks": [],
        }

    def check(self, name: str, passed: bool, witness: Any = None) -> None:
        entry: dict[str, Any] = {"name": name, "passed": bool(passed)}
        if witness is not None and not passed:
            entry["witness"] = witness
        self.out["checks"].append(entry)

    def result(self, **payload: Any) -> None:
        self.out["result"].update(payload)

    def emit(self) -> int:
        self.out["elapsed_ms"] = round(1000 * (time.monotonic() - self.t0), 1)
        print(json.dumps(self.out, sort_keys=True))
        failed = [c["name"] for c in self.out["checks"] if not c["passed"]]
        tag = "FAIL " + ", ".join(failed) if failed else "ok"
        print(f"{self.out['command']}: {tag}", file=sys.stderr)
        return 1 if failed else 0


# --- check ----------------------------------------------------------------


def cmd_check(args: argparse.Namespace) -> int:
    text = _read(args.path)
    rep = Report(f"check --family {args.family}", _digest(text))
    if args.family == "even-tri":
        g = _load_embedded(text)
        rep.result(n=g.n, m=g.m)
        rep.check("even-triangulation", is_even_triangulation(g))
    elif args.family == "multi4":
        g, _ = _load_abstract(text)
        ok = structure.is_multi4(g, cap=args.cap)
        witness = None
        if not ok:
            witness = next(
                (c for c in g.simple_cycles(cap=args.cap) if len(c) % 4 != 0), None
            )
        rep.result(n=g.n, m=g.m)
        rep.check("all-cycles-0-mod-4", ok, witness)
    else:  # barnette-hypothesis
        g = _load_embedded(text)
        if not is_even_triangulation(g):
            rep.check("even-triangulation", False)
            return rep.emit()
        h, bs = gen.big_vertex_graph(g)
        rep.result(n=g.n, big=sorted(bs.big), h_edges=h.edges())
        rep.check("even-triangulation", True)
        rep.check("h-all-cycles-0-mod-4", structure.is_multi4(h, cap=args.cap))
        rep.check("h-components-2-connected", gen.meets_h_hypothesis(h, True))
    return rep.emit()


# --- color ----------------------------------------------------------------


def cmd_color(args: argparse.Namespace) -> int:
    text = _read(args.path)
    rep = Report("color", _digest(text))
    g, a = _load_abstract(text)
    if not a:
        raise ParseError('input JSON must embed the alpha colouring as "a"')
    bp = structure.TypedBipartition(
        alpha=frozenset(a), beta=frozenset(set(g.adj) - set(a))
    )
    if args.pin:
        try:
            vs, cs = args.pin.split("=")
            pin_vertex, pin_colour = int(vs), int(cs)
        except ValueError as exc:
            raise ParseError(f"--pin expects V=1 or V=2, got {args.pin!r}") from exc
        if pin_vertex in bp.alpha:
            raise ParseError(f"pin vertex {pin_vertex} is alpha-coloured already")
    else:
        pin_vertex, pin_colour = min(bp.beta), 1
    req = colorizer.ColoringRequest(
        graph=g, bipartition=bp, a=a, pin_vertex=pin_vertex, pin_colour=pin_colour
    )
    b = colorizer.solve(req, cap=args.cap)
    report = colorizer.verify_coloring(
        g, bp, colorizer.combine(a, b.colour_of), pin_vertex, pin_colour
    )
    rep.result(b={str(k): v for k, v in sorted(b.colour_of.items())})
    rep.check("no-monochromatic-cycle", report.cycle_free, report.witness_cycle)
    rep.check("degree2-path-alternation", report.alternation_ok, report.witness_path)
    rep.check("pin-respected", report.pin_ok)
    return rep.emit()


# --- partition / hamilton -------------------------------------------------


def _parse_edge(text: str) -> tuple[int, int]:
    try:
        u, v = (int(x) for x in text.split(","))
        return u, v
    except ValueError as exc:
        raise ParseError(f"expected U,V got {text!r}") from exc


def cmd_partition(args: argparse.Namespace) -> int:
    text = _read(args.path)
    rep = Report("partition", _digest(text))
    g = _load_embedded(text)
    tp = tri_partition(g)
    bs = classify_big_small(g, tp)
    if args.with_edge:
        v, w = _parse_edge(args.with_edge)
        part = treesplit.tree_partition_with_edge(g, v, w)
        rep.check("edge-inside-one-side", (v in part.s) == (w in part.s))
    else:
        part, vertex_report = treesplit.tree_partition_face_sparse(g)
        rep.result(vertex_report=vertex_report["vertices"])
        rep.check("degree-implications", vertex_report["all_ok"])
    ok = treesplit.verify_tree_partition(
        g.abstract(), part, bs.b_of(1), bs.b_of(2)
    )
    rep.result(s=sorted(part.s), t=sorted(part.t))
    rep.check("two-induced-trees", ok)
    return rep.emit()


def cmd_hamilton(args: argparse.Namespace) -> int:
    text = _read(args.path)
    rep = Report("hamilton", _digest(text))
    g = _load_embedded(text)
    d = dual(g)
    if args.avoid_edge:
        e_star = _parse_edge(args.avoid_edge)
        h = duality.hamilton_avoiding_edge(g, e_star, d)
        rep.check("forbidden-edge-avoided", tuple(sorted(e_star)) not in h.edges)
    else:
        h, avoidance = duality.hamilton_face_sparse(g, d)
        rep.result(
            faces=[
                {"vertex": f.primal_vertex, "size": f.size, "pattern": f.pattern}
                for f in avoidance.faces
            ]
        )
        rep.check("no-face-violation", avoidance.ok)
    rep.result(cycle=list(h.vertices))
    rep.check("hamilton-cycle", duality.verify_hamilton(d.graph.abstract(), h))
    return rep.emit()


# --- survey ---------------------------------------------------------------


def _survey_even_tri(g_json: str) -> dict[str, Any]:
    """All certificates for one even triangulation; run in a worker."""
    g = EmbeddedGraph.from_json(g_json)
    tp = tri_partition(g)
    bs = classify_big_small(g, tp)
    ab = g.abstract()
    d = dual(g)
    row: dict[str, Any] = {"n": g.n, "checks": {}}
    h, _ = gen.big_vertex_graph(g)
    row["checks"]["h-in-family"] = structure.is_multi4(h)
    hyp = gen.meets_h_hypothesis(h, True)
    row["hypothesis"] = hyp
    try:
        edges_ok = True
        n_edges = 0
        for v in sorted(bs.b_of(3)):
            for w in sorted(ab.adj[v]):
                if tp.class_of[w] in (1, 2):
                    e_star = d.edge_map[(min(v, w), max(v, w))]
                    cyc = duality.hamilton_avoiding_edge(g, e_star, d)
                    edges_ok &= e_star not in cyc.edges and duality.verify_hamilton(
                        d.graph.abstract(), cyc
                    )
                    n_edges += 1
        row["checks"]["avoid-edge"] = edges_ok
        row["eligible_edges"] = n_edges
    except DualhamError as exc:
        row["checks"]["avoid-edge"] = False
        row["error"] = f"{type(exc).__name__}: {exc}"
    if hyp:
        try:
            cyc, avoidance = duality.hamilton_face_sparse(g, d)
            part = duality.hamilton_to_tree_partition(g, cyc, d)
            row["checks"]["face-sparse"] = avoidance.ok
            row["checks"]["round-trip"] = duality.tree_partition_to_hamilton(
                g, part, d
            ).edges == cyc.edges
        except DualhamError as exc:
            row["checks"]["face-sparse"] = False
            row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _survey_multi4(seed: int) -> dict[str, Any]:
    g = gen.gen_multi4(16, seed)
    bp = structure.bipartition_typed(g)
    a = {u: 1 + (i % 2) for i, u in enumerate(sorted(bp.alpha))}
    row: dict[str, Any] = {"seed": seed, "n": g.n, "checks": {}}
    ok = True
    for pin in sorted(bp.beta):
        for colour in (1, 2):
            b = colorizer.color_beta(g, bp, a, pin, colour)
            rep = colorizer.verify_coloring(
                g, bp, colorizer.combine(a, b.colour_of), pin, colour
            )
            ok &= rep.passed
    row["checks"]["coloring-sound"] = ok
    return row


def cmd_survey(args: argparse.Namespace) -> int:
    rep = Report(f"survey --family {args.family}", "-")
    if args.family == "multi4":
        tasks: list[Any] = list(range(args.seed, args.seed + args.count))
        worker: Callable[[Any], dict] = _survey_multi4
    else:
        instances: list[str] = []
        for n in range(4, args.n_max + 1):
            for g in gen.gen_even_triangulations(n):
                if args.family == "barnette-hypothesis":
                    h, _ = gen.big_vertex_graph(g)
                    if not gen.meets_h_hypothesis(h, True):
                        continue
                instances.append(g.to_json())
        tasks = instances
        worker = _survey_even_tri
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(worker, tasks))
    else:
        rows = [worker(t) for t in tasks]
    for row in rows:
        print(json.dumps(row, sort_keys=True))
    all_ok = all(all(r["checks"].values()) for r in rows)
    rep.result(instances=len(rows))
    rep.check("all-instances-pass", all_ok,
              [r for r in rows if not all(r["checks"].values())] or None)
    return rep.emit()


# --- gen ------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    rep = Report(f"gen --family {args.family}", "-")
    count = 0
    if args.family == "bipyramid":
        print(gen.gen_bipyramid(args.size).to_json())
        count = 1
    elif args.family == "even-tri":
        for g in gen.gen_even_triangulations(args.size):
            print(g.to_json())
            count += 1
    elif args.family == "multi4":
        g = gen.gen_multi4(args.size, args.seed)
        print(json.dumps({"edges": g.edges()}))
        count = 1
    else:  # thm24-valid
        for g in gen.gen_thm24_instances(args.size, args.seed):
            print(g.to_json())
            count += 1
    rep.result(count=count)
    rep.check("generated", count > 0)
    return rep.emit()


# --- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dualham",
        description="Tree partitions of even plane triangulations and "
        "Hamilton cycles in their duals.",
    )
    p.add_argument("--cap", type=int, default=DEFAULT_CYCLE_CAP,
                   help="budget for cycle/search enumeration")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run a membership certificate")
    c.add_argument("path")
    c.add_argument("--family", required=True,
                   choices=["even-tri", "multi4", "barnette-hypothesis"])
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("color", help="cycle-free 2-colouring of the beta side")
    c.add_argument("path")
    c.add_argument("--pin", help="force one beta vertex, as V=1 or V=2")
    c.set_defaults(func=cmd_color)

    c = sub.add_parser("partition", help="split the vertices into two trees")
    c.add_argument("path")
    grp = c.add_mutually_exclusive_group()
    grp.add_argument("--with-edge", help="keep this primal edge inside a side (U,V)")
    grp.add_argument("--face-sparse", action="store_true",
                     help="per-vertex neighbour-balance variant (default)")
    c.set_defaults(func=cmd_partition)

    c = sub.add_parser("hamilton", help="Hamilton cycle in the dual")
    c.add_argument("path")
    grp = c.add_mutually_exclusive_group()
    grp.add_argument("--avoid-edge", help="dual edge to avoid, as U,V")
    grp.add_argument("--face-sparse", action="store_true")
    c.set_defaults(func=cmd_hamilton)

    c = sub.add_parser("survey", help="run every certificate over a family")
    c.add_argument("--family", required=True,
                   choices=["even-tri", "multi4", "barnette-hypothesis"])
    c.add_argument("--n-max", type=int, default=10)
    c.add_argument("--count", type=int, default=50,
                   help="number of seeds for randomized families")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_survey)

    c = sub.add_parser("gen", help="emit instances as JSON lines")
    c.add_argument("--family", required=True,
                   choices=["bipyramid", "even-tri", "multi4", "thm24-valid"])
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (IoError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DualhamError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
