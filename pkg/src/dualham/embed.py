"""Plane-embedded graphs given by rotation systems.

A graph lives on the sphere: no distinguished outer face.  The face-tracing
convention is fixed once and for all: the successor of the directed edge
(u, v) is (v, w) where w is the neighbour immediately after u in the
clockwise rotation at v.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    AsymmetricAdjacency,
    DegreeBelowFour,
    Disconnected,
    MultiEdgeOrLoop,
    NonPlanarEmbedding,
    NotEvenTriangulation,
)
from .ugraph import Graph, norm_edge

DirEdge = tuple[int, int]


@dataclass(frozen=True)
class FaceSet:
    """Faces as directed boundary walks; each directed edge lies on one face."""

    faces: tuple[tuple[DirEdge, ...], ...]
    face_of: Mapping[DirEdge, int]

    def face_lengths(self) -> list[int]:
        return [len(f) for f in self.faces]


@dataclass(frozen=True)
class EmbeddedGraph:
    """Immutable plane graph: vertex count plus clockwise neighbour cycles."""

    n: int
    rotation: tuple[tuple[int, ...], ...]

    @staticmethod
    def build(rotation: Sequence[Sequence[int]]) -> "EmbeddedGraph":
        """Validate a rotation system and return the embedded graph.

        Checks symmetry, simplicity, connectivity, and Euler's formula for
        the traced faces.
        """
        if not rotation:
            raise Disconnected("empty graph")
        n = len(rotation)
        rot = tuple(tuple(nb) for nb in rotation)
        for v, nb in enumerate(rot):
            if len(set(nb)) != len(nb) or v in nb:
                raise MultiEdgeOrLoop(f"vertex {v}: {nb}")
            for u in nb:
                if not 0 <= u < n:
                    raise AsymmetricAdjacency(f"vertex {v} lists unknown vertex {u}")
                if v not in rot[u]:
                    raise AsymmetricAdjacency(f"{v} lists {u} but not conversely")
        g = EmbeddedGraph(n, rot)
        if n > 1 and not g.abstract().is_connected():
            raise Disconnected("graph is not connected")
        f = len(g.faces.faces)
        if n - g.m + f != 2:
            raise NonPlanarEmbedding(
                f"Euler check failed: n={n} m={g.m} f={f}"
            )
        return g

    # --- basics ----------------------------------------------------------

    @cached_property
    def m(self) -> int:
        return sum(len(nb) for nb in self.rotation) // 2

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def edges(self) -> list[tuple[int, int]]:
        return sorted(
            (v, u) if v < u else (u, v)
            for v in range(self.n)
            for u in self.rotation[v]
            if v < u
        )

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.rotation[u]

    def abstract(self) -> Graph:
        """Forget the embedding."""
        return Graph({v: set(nb) for v, nb in enumerate(self.rotation)})

    def next_cw(self, v: int, u: int) -> int:
        """Neighbour of v immediately after u in clockwise order."""
        nb = self.rotation[v]
        return nb[(nb.index(u) + 1) % len(nb)]

    # --- faces and dual --------------------------------------------------

    @cached_property
    def faces(self) -> FaceSet:
        return trace_faces(self)

    def mirror(self) -> "EmbeddedGraph":
        """Reflection: all rotations reversed."""
        return EmbeddedGraph(self.n, tuple(nb[::-1] for nb in self.rotation))

    # --- serialization ---------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "rotation": [list(nb) for nb in self.rotation]})

    @staticmethod
    def from_json(text: str) -> "EmbeddedGraph":
        data = json.loads(text)
        if data.get("n") != len(data.get("rotation", [])):
            raise ValueError("n does not match rotation length")
        return EmbeddedGraph.build(data["rotation"])


def trace_faces(g: EmbeddedGraph) -> FaceSet:
    """Assign every directed edge to its unique face walk."""
    face_of: dict[DirEdge, int] = {}
    faces: list[tuple[DirEdge, ...]] = []
    for v in range(g.n):
        for u in g.rotation[v]:
            start = (v, u)
            if start in face_of:
                continue
            walk = []
            e = start
            while True:
                walk.append(e)
                face_of[e] = len(faces)
                a, b = e
                e = (b, g.next_cw(b, a))
                if e == start:
                    break
            faces.append(tuple(walk))
    return FaceSet(tuple(faces), face_of)


@dataclass(frozen=True)
class DualGraph:
    """Dual embedded graph plus the edge and vertex bijections."""

    graph: EmbeddedGraph
    edge_map: Mapping[tuple[int, int], tuple[int, int]]   # primal edge -> dual edge
    vertex_of_face: tuple[int, ...]                       # dual vertex (face id) -> sorted primal boundary (unused hook)
    primal_vertex_of_dual_face: tuple[int, ...]           # dual face id -> primal vertex

    def dual_edge(self, u: int, v: int) -> tuple[int, int]:
        return self.edge_map[norm_edge(u, v)]


def dual(g: EmbeddedGraph) -> DualGraph:
    """Construct the dual: one vertex per face, adjacency across shared edges.

    The dual rotation at a face follows that face's boundary walk, so the
    result is again a valid embedding on the sphere.
    """
    fs = g.faces
    rot: list[list[int]] = []
    for walk in fs.faces:
        rot.append([fs.face_of[(b, a)] for (a, b) in walk])
    dg = EmbeddedGraph.build(rot)
    edge_map = {}
    for (a, b) in g.edges():
        edge_map[(a, b)] = norm_edge(fs.face_of[(a, b)], fs.face_of[(b, a)])
    # dual face -> the primal vertex its boundary edges wind around
    dfs = dg.faces
    primal_of: list[int] = []
    for walk in dfs.faces:
        candidates: set[int] | None = None
        for (f1, f2) in walk:
            # recover a primal edge joining faces f1, f2
            for (a, b) in fs.faces[f1]:
                if fs.face_of[(b, a)] == f2:
                    ends = {a, b}
                    break
            candidates = ends if candidates is None else candidates & ends
        assert candidates is not None and len(candidates) == 1, "dual face winding broken"
        primal_of.append(candidates.pop())
    return DualGraph(
        graph=dg,
        edge_map=edge_map,
        vertex_of_face=tuple(range(dg.n)),
        primal_vertex_of_dual_face=tuple(primal_of),
    )


def is_even_triangulation(g: EmbeddedGraph) -> bool:
    """Every face a triangle, every degree even, simple, n >= 4."""
    if g.n < 4:
        return False
    if any(len(f) != 3 for f in g.faces.faces):
        return False
    return all(g.degree(v) % 2 == 0 for v in range(g.n))


@dataclass(frozen=True)
class TriPartition:
    """Proper 3-colouring of an even triangulation (classes 1, 2, 3)."""

    class_of: tuple[int, ...]

    def vertices_of(self, i: int) -> set[int]:
        return {v for v, c in enumerate(self.class_of) if c == i}


def tri_partition(g: EmbeddedGraph) -> TriPartition:
    """Canonical 3-colouring: vertex 0 -> 1, its rotation-first neighbour -> 2.

    Propagates through triangular faces; the colouring of an even
    triangulation is unique up to permutation, so propagation conflicts mean
    the input was not an even triangulation.
    """
    if not is_even_triangulation(g):
        raise NotEvenTriangulation("faces or degrees are wrong")
    cls = [0] * g.n
    cls[0] = 1
    first = g.rotation[0][0]
    cls[first] = 2
    # triangles incident to each vertex
    tris = [tuple({a for e in f for a in e}) for f in g.faces.faces]
    pending = True
    while pending:
        pending = False
        for t in tris:
            known = [v for v in t if cls[v]]
            if len(known) == 3:
                if len({cls[v] for v in t}) != 3:
                    raise NotEvenTriangulation("3-colouring propagation conflict")
            elif len(known) == 2:
                a, b = known
                if cls[a] == cls[b]:
                    raise NotEvenTriangulation("3-colouring propagation conflict")
                missing = next(v for v in t if not cls[v])
                cls[missing] = 6 - cls[a] - cls[b]
                pending = True
    if any(c == 0 for c in cls):
        raise NotEvenTriangulation("3-colouring propagation incomplete")
    for u, v in g.edges():
        if cls[u] == cls[v]:
            raise NotEvenTriangulation("improper 3-colouring")
    return TriPartition(tuple(cls))


@dataclass(frozen=True)
class BigSmall:
    """Degree >= 6 (big) versus degree == 4 (small), split by colour class."""

    big: frozenset[int]
    small: frozenset[int]
    b: tuple[frozenset[int], frozenset[int], frozenset[int]]
    s: tuple[frozenset[int], frozenset[int], frozenset[int]]

    def b_of(self, i: int) -> frozenset[int]:
        return self.b[i - 1]

    def s_of(self, i: int) -> frozenset[int]:
        return self.s[i - 1]


def classify_big_small(g: EmbeddedGraph, tp: TriPartition) -> BigSmall:
    for v in range(g.n):
        if g.degree(v) < 4:
            raise DegreeBelowFour(f"vertex {v} has degree {g.degree(v)}")
    big = frozenset(v for v in range(g.n) if g.degree(v) >= 6)
    small = frozenset(v for v in range(g.n) if g.degree(v) == 4)
    b = tuple(frozenset(big & tp.vertices_of(i)) for i in (1, 2, 3))
    s = tuple(frozenset(small & tp.vertices_of(i)) for i in (1, 2, 3))
    return BigSmall(big, small, b, s)


def dual_face_coloring(d: DualGraph, tp: TriPartition) -> dict[int, int]:
    """Colour each dual face with the class of the primal vertex it winds around."""
    return {
        f: tp.class_of[v]
        for f, v in enumerate(d.primal_vertex_of_dual_face)
    }


# --- canonical forms and isomorphism ------------------------------------


def canonical_form(g: EmbeddedGraph) -> tuple:
    """Label-independent code of the embedding, up to reflection.

    Minimum over all root directed edges and both orientations of a BFS
    relabelling code.
    """
    best = None
    # the code starts with the root's rotation tuple, and a shorter tuple
    # sorts before any extension of it, so only minimum-degree roots can win
    min_deg = min(len(nb) for nb in g.rotation)
    for h in (g, g.mirror()):
        for v in range(h.n):
            if len(h.rotation[v]) != min_deg:
                continue
            for u in h.rotation[v]:
                code = _code_from(h, v, u)
                if best is None or code < best:
                    best = code
    return best


def _code_from(g: EmbeddedGraph, root: int, first: int) -> tuple:
    label = {root: 0, first: 1}
    entry = {root: first, first: root}
    order = [root, first]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        nb = g.rotation[v]
        k = nb.index(entry[v])
        for j in range(len(nb)):
            w = nb[(k + j) % len(nb)]
            if w not in label:
                label[w] = len(order)
                entry[w] = v
                order.append(w)
    code = []
    for v in order:
        nb = g.rotation[v]
        k = nb.index(entry[v])
        code.append(tuple(label[nb[(k + j) % len(nb)]] for j in range(len(nb))))
    return tuple(code)


def embedded_isomorphic(a: EmbeddedGraph, b: EmbeddedGraph) -> bool:
    """Isomorphic as sphere embeddings, up to relabelling and reflection."""
    return a.n == b.n and a.m == b.m and canonical_form(a) == canonical_form(b)
