"""Tree partitions versus Hamilton cycles in the dual.

A partition of a plane triangulation's vertices into two induced trees
meets the dual in a Hamilton cycle: the dual edges of the cut between the
two sides visit every face exactly once.  The correspondence runs both
ways, and this module also provides exhaustive enumeration (the oracle for
everything else) plus the edge-avoidance checkers stated in terms of the
cubic dual.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .embed import (
    DualGraph,
    EmbeddedGraph,
    classify_big_small,
    dual,
    tri_partition,
)
from .errors import CapExceeded, NotHamilton, NotTreePartition
from .treesplit import (
    TreePartition,
    tree_partition_face_sparse,
    tree_partition_with_edge,
    verify_tree_partition,
)
from .ugraph import Graph, norm_edge

DEFAULT_ENUM_CAP = 10**6


@dataclass(frozen=True)
class HamiltonCycle:
    """Closed vertex order visiting every vertex once, stored canonically:
    lowest vertex first, second vertex the smaller of its two neighbours."""

    vertices: tuple[int, ...]

    @staticmethod
    def of(order: Sequence[int]) -> "HamiltonCycle":
        if len(set(order)) != len(order) or len(order) < 3:
            raise NotHamilton(f"not a simple cycle order: {order}")
        k = list(order).index(min(order))
        rot = list(order[k:]) + list(order[:k])
        if rot[-1] < rot[1]:
            rot = [rot[0]] + rot[1:][::-1]
        return HamiltonCycle(tuple(rot))

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        n = len(self.vertices)
        return frozenset(
            norm_edge(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)
        )

    def to_json(self) -> str:
        return json.dumps(list(self.vertices))

    @staticmethod
    def from_json(text: str) -> "HamiltonCycle":
        return HamiltonCycle.of(json.loads(text))


def verify_hamilton(g: Graph, h: HamiltonCycle) -> bool:
    """Visits every vertex of g once, consecutive vertices adjacent."""
    vs = h.vertices
    if set(vs) != set(g.adj):
        return False
    n = len(vs)
    return all(g.has_edge(vs[i], vs[(i + 1) % n]) for i in range(n))


# --- the correspondence ---------------------------------------------------


def tree_partition_to_hamilton(
    g: EmbeddedGraph, p: TreePartition, d: DualGraph | None = None
) -> HamiltonCycle:
    """The dual edges of the cut between the two tree sides, ordered into a
    Hamilton cycle of the dual."""
    if d is None:
        d = dual(g)
    if not verify_tree_partition(g.abstract(), p):
        raise NotTreePartition("input sides do not induce two spanning trees")
    cut = [e for e in g.edges() if (e[0] in p.s) != (e[1] in p.s)]
    adj: dict[int, list[int]] = {v: [] for v in range(d.graph.n)}
    for e in cut:
        a, b = d.edge_map[e]
        adj[a].append(b)
        adj[b].append(a)
    if any(len(nb) != 2 for nb in adj.values()):
        raise NotHamilton("cut does not meet every dual vertex exactly twice")
    start = 0
    order = [start, min(adj[start])]
    while len(order) < d.graph.n:
        a, b = adj[order[-1]]
        order.append(a if a != order[-2] else b)
    h = HamiltonCycle.of(order)
    assert verify_hamilton(d.graph.abstract(), h)
    return h


def hamilton_to_tree_partition(
    g: EmbeddedGraph, h: HamiltonCycle, d: DualGraph | None = None
) -> TreePartition:
    """The two sides of a dual Hamilton cycle, read back through the
    face-vertex bijection.  The side holding the lowest primal vertex
    comes first."""
    if d is None:
        d = dual(g)
    if not verify_hamilton(d.graph.abstract(), h):
        raise NotHamilton("input is not a Hamilton cycle of the dual")
    cycle_edges = h.edges
    # primal vertices are glued exactly across primal edges whose dual edge
    # the cycle does not use
    keep = [e for e in g.edges() if d.edge_map[e] not in cycle_edges]
    side_graph = Graph.from_edges(keep, range(g.n))
    comps = side_graph.components()
    if len(comps) != 2:
        raise NotHamilton(
            f"cycle complement splits the faces into {len(comps)} groups, expected 2"
        )
    first = comps[0] if 0 in comps[0] else comps[1]
    second = comps[1] if first is comps[0] else comps[0]
    p = TreePartition(frozenset(first), frozenset(second))
    if not verify_tree_partition(g.abstract(), p):
        raise NotHamilton("cycle sides do not induce trees (not a triangulation dual?)")
    return p


# --- enumeration (the oracle) --------------------------------------------


def enumerate_hamilton(g: Graph, cap: int = DEFAULT_ENUM_CAP) -> list[HamiltonCycle]:
    """All Hamilton cycles up to rotation and reflection, by exhaustive
    search with a partial-state budget."""
    vs = g.vertices
    if len(vs) < 3:
        return []
    start = vs[0]
    out: list[HamiltonCycle] = []
    states = 0
    path = [start]
    on_path = {start}

    def rec() -> None:
        nonlocal states
        states += 1
        if states > cap:
            raise CapExceeded(f"enumeration exceeded {cap} partial states")
        last = path[-1]
        if len(path) == len(vs):
            if g.has_edge(last, start) and path[1] < path[-1]:
                out.append(HamiltonCycle.of(path))
            return
        for nxt in sorted(g.adj[last]):
            if nxt not in on_path:
                path.append(nxt)
                on_path.add(nxt)
                rec()
                path.pop()
                on_path.remove(nxt)

    rec()
    return out


# --- dual statements of the two partition theorems ------------------------


def primal_edge_of(g: EmbeddedGraph, d: DualGraph, e_star: tuple[int, int]) -> tuple[int, int]:
    """Invert the edge bijection."""
    target = norm_edge(*e_star)
    for e, de in d.edge_map.items():
        if de == target:
            return e
    raise ValueError(f"{e_star} is not an edge of the dual")


def hamilton_avoiding_edge(
    g: EmbeddedGraph, e_star: tuple[int, int], d: DualGraph | None = None
) -> HamiltonCycle:
    """A Hamilton cycle of the dual avoiding the chosen edge.

    The edge must lie on a dual face of colour 3 and size >= 6, i.e. its
    primal edge must join a big class-3 vertex to a neighbour; keeping
    both primal ends on one side of the tree partition removes the edge
    from the cut.
    """
    if d is None:
        d = dual(g)
    u, w = primal_edge_of(g, d, e_star)
    tp = tri_partition(g)
    bs = classify_big_small(g, tp)
    b3_ends = [x for x in (u, w) if tp.class_of[x] == 3 and x in bs.big]
    if not b3_ends:
        raise ValueError(
            f"dual edge {e_star} borders no face of colour 3 and size >= 6"
        )
    v = b3_ends[0]
    other = w if v == u else u
    part = tree_partition_with_edge(g, v, other)
    h = tree_partition_to_hamilton(g, part, d)
    assert d.edge_map[norm_edge(u, w)] not in h.edges
    return h


@dataclass(frozen=True)
class FaceAvoidance:
    """How a dual Hamilton cycle treats one dual face of colour 3."""

    primal_vertex: int
    size: int
    avoided: tuple[tuple[int, int], ...]
    pattern: str  # "every-second" | "at-most-two" | "violation"


@dataclass(frozen=True)
class AvoidanceReport:
    faces: tuple[FaceAvoidance, ...]

    @property
    def ok(self) -> bool:
        return all(f.pattern != "violation" for f in self.faces)


def face_avoidance_report(
    g: EmbeddedGraph, h: HamiltonCycle, d: DualGraph | None = None
) -> AvoidanceReport:
    """Classify every dual face of colour 3 and size >= 6 against the
    cycle: either exactly every second boundary edge is avoided, or at
    most two are."""
    if d is None:
        d = dual(g)
    tp = tri_partition(g)
    bs = classify_big_small(g, tp)
    cycle_edges = h.edges
    rows = []
    for v in sorted(bs.big):
        if tp.class_of[v] != 3:
            continue
        boundary = [
            d.edge_map[norm_edge(v, u)] for u in g.rotation[v]
        ]
        avoided = [i for i, e in enumerate(boundary) if e not in cycle_edges]
        size = len(boundary)
        parities = {i % 2 for i in avoided}
        if len(avoided) == size // 2 and len(parities) == 1:
            pattern = "every-second"
        elif len(avoided) <= 2:
            pattern = "at-most-two"
        else:
            pattern = "violation"
        rows.append(
            FaceAvoidance(v, size, tuple(boundary[i] for i in avoided), pattern)
        )
    return AvoidanceReport(tuple(rows))


def hamilton_face_sparse(
    g: EmbeddedGraph, d: DualGraph | None = None
) -> tuple[HamiltonCycle, AvoidanceReport]:
    """A Hamilton cycle of the dual that is sparse on every large face of
    colour 3, with the per-face classification."""
    if d is None:
        d = dual(g)
    part, _ = tree_partition_face_sparse(g)
    h = tree_partition_to_hamilton(g, part, d)
    return h, face_avoidance_report(g, h, d)


# --- brute-force properties of cubic plane graphs -------------------------


def _face_edge_lists(gstar: EmbeddedGraph) -> list[list[tuple[int, int]]]:
    return [
        [norm_edge(a, b) for (a, b) in walk] for walk in gstar.faces.faces
    ]


def check_h_plus_minus(gstar: EmbeddedGraph, cap: int = DEFAULT_ENUM_CAP) -> bool:
    """For every two distinct edges on a common face: some Hamilton cycle
    passes through the first and avoids the second."""
    cycles = [h.edges for h in enumerate_hamilton(gstar.abstract(), cap)]
    for face in _face_edge_lists(gstar):
        for e1 in face:
            for e2 in face:
                if e1 == e2:
                    continue
                if not any(e1 in c and e2 not in c for c in cycles):
                    return False
    return True


def check_h_minus_minus(gstar: EmbeddedGraph, cap: int = DEFAULT_ENUM_CAP) -> bool:
    """For every two edges an even distance apart on a common face: some
    Hamilton cycle avoids both."""
    cycles = [h.edges for h in enumerate_hamilton(gstar.abstract(), cap)]
    for face in _face_edge_lists(gstar):
        k = len(face)
        for i in range(k):
            for j in range(i + 1, k):
                if (j - i) % 2 != 0 and (k - (j - i)) % 2 != 0:
                    continue
                e1, e2 = face[i], face[j]
                if e1 == e2:
                    continue
                if not any(e1 not in c and e2 not in c for c in cycles):
                    return False
    return True
