"""Instance generators.

Bipyramids, exhaustive small even triangulations (vertex-splitting with
canonical-form dedup), random members of the mod-4 cycle family via a
sound gluing grammar, and filtered even triangulations whose big-vertex
graph H = G[B1 u B3] + G[B2 u B3] lies in that family.
"""

from __future__ import annotations

import json
import random
from typing import Iterable, Iterator

from .embed import (
    EmbeddedGraph,
    canonical_form,
    classify_big_small,
    is_even_triangulation,
    tri_partition,
)
from .errors import NoneFound, ParseError, SizeOutOfRange, SizeTooSmall
from .structure import is_multi4
from .ugraph import Graph

MAX_TRI_N = 16


def gen_bipyramid(l: int) -> EmbeddedGraph:
    """The join of a 2l-cycle with two poles: an even triangulation where
    both poles see the whole equator."""
    if l < 2:
        raise SizeTooSmall(f"bipyramid needs l >= 2, got {l}")
    k = 2 * l
    a1, a2 = k, k + 1
    rot: list[list[int]] = []
    for i in range(k):
        rot.append([(i + 1) % k, a1, (i - 1) % k, a2])
    rot.append(list(range(k)))          # pole 1
    rot.append(list(range(k))[::-1])    # pole 2, opposite orientation
    g = EmbeddedGraph.build(rot)
    assert is_even_triangulation(g)
    return g


# --- exhaustive triangulations -------------------------------------------

TETRAHEDRON = ((1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1))


def split_vertex(g: EmbeddedGraph, v: int, i: int, j: int) -> EmbeddedGraph:
    """Split v along rotation positions i..j; inverse of edge contraction.

    The new vertex takes the neighbours from position j round to position i
    (both shared), plus v itself; two new triangles appear at the shared
    neighbours.
    """
    rot = [list(nb) for nb in g.rotation]
    nb_v = rot[v]
    k = len(nb_v)
    if i == j:
        raise ValueError("segments must both have length >= 1")
    seg1 = [nb_v[(i + t) % k] for t in range((j - i) % k + 1)]
    seg2 = [nb_v[(j + t) % k] for t in range((i - j) % k + 1)]
    new = g.n
    a, b = nb_v[i % k], nb_v[j % k]
    before_a = nb_v[(i - 1) % k]   # neighbour on the far-segment side of a
    after_b = nb_v[(j + 1) % k]    # neighbour on the far-segment side of b
    rot[v] = seg1 + [new]
    rot.append(seg2 + [v])
    for w in seg2[1:-1]:
        rot[w][rot[w].index(v)] = new
    for w, mate in ((a, before_a), (b, after_b)):
        nb = rot[w]
        pos = nb.index(v)
        if nb[(pos + 1) % len(nb)] == mate:
            nb.insert(pos + 1, new)
        else:
            assert nb[(pos - 1) % len(nb)] == mate
            nb.insert(pos, new)
    return EmbeddedGraph.build(rot)


def gen_triangulations(n: int) -> list[EmbeddedGraph]:
    """All plane triangulations on n vertices, one per isomorphism class.

    Expansion by vertex splitting from the tetrahedron; every simple plane
    triangulation with more than four vertices contracts some edge, so the
    closure is complete.  Counts for n = 4..10 match the simplicial
    polyhedron numbers 1, 1, 2, 5, 14, 50, 233 (OEIS A000109).
    """
    if not 4 <= n <= MAX_TRI_N:
        raise SizeOutOfRange(f"n must be in [4, {MAX_TRI_N}], got {n}")
    level = [EmbeddedGraph.build(TETRAHEDRON)]
    for _ in range(n - 4):
        seen: set[tuple] = set()
        nxt: list[EmbeddedGraph] = []
        for g in level:
            for v in range(g.n):
                deg = g.degree(v)
                # (i, j) and (j, i) swap the two halves, giving isomorphic
                # results, so ordered pairs would double the work
                for i in range(deg):
                    for j in range(i + 1, deg):
                        h = split_vertex(g, v, i, j)
                        code = canonical_form(h)
                        if code not in seen:
                            seen.add(code)
                            nxt.append(h)
        level = nxt
    return level


def gen_even_triangulations(n: int) -> Iterator[EmbeddedGraph]:
    """All even plane triangulations on n vertices, up to isomorphism."""
    if not 4 <= n <= MAX_TRI_N:
        raise SizeOutOfRange(f"n must be in [4, {MAX_TRI_N}], got {n}")
    for g in gen_triangulations(n):
        if is_even_triangulation(g):
            yield g


# --- members of the mod-4 cycle family -----------------------------------


def gen_multi4(size: int, seed: int) -> Graph:
    """Random graph whose cycles all have length 0 mod 4.

    Grows by gluing 4k-cycles at single vertices, hanging pendant paths,
    and adding parallel paths; each step is verified and rolled back if it
    breaks the invariant, so the result is always certified.
    """
    if size > 40:
        raise SizeOutOfRange(f"size must be <= 40, got {size}")
    rng = random.Random(seed)
    k0 = rng.choice([1, 1, 2]) if size >= 8 else 1
    g = Graph.from_edges([(i, (i + 1) % (4 * k0)) for i in range(4 * k0)])
    fresh = g.n
    attempts = 0
    while g.n < size and attempts < 60:
        attempts += 1
        op = rng.choice(["cycle", "pendant", "parallel"])
        old = g
        if op == "cycle":
            length = 4 * rng.choice([1, 1, 2])
            if g.n + length - 1 > size:
                continue
            at = rng.choice(g.vertices)
            cyc = [at] + [fresh + t for t in range(length - 1)]
            g = g.union(Graph.from_edges(
                [(cyc[t], cyc[(t + 1) % length]) for t in range(length)]))
            fresh += length - 1
        elif op == "pendant":
            length = rng.randint(1, 3)
            if g.n + length > size:
                continue
            at = rng.choice(g.vertices)
            path = [at] + [fresh + t for t in range(length)]
            g = g.union(Graph.from_edges(list(zip(path, path[1:]))))
            fresh += length
        else:
            length = rng.choice([3, 4, 5])
            if g.n + length - 1 > size:
                continue
            u, v = rng.sample(g.vertices, 2)
            path = [u] + [fresh + t for t in range(length - 1)] + [v]
            g = g.union(Graph.from_edges(list(zip(path, path[1:]))))
            if not is_multi4(g):
                g = old
                continue
            fresh += length - 1
    assert is_multi4(g)
    return g


# --- constrained even triangulations -------------------------------------


def big_vertex_graph(g: EmbeddedGraph) -> tuple[Graph, "object"]:
    """H = G[B1 u B3] + G[B2 u B3]: big vertices, minus class-1-to-class-2
    edges.  Returns (H, big/small classification)."""
    tp = tri_partition(g)
    bs = classify_big_small(g, tp)
    keep = set(bs.big)
    edges = []
    for u, v in g.edges():
        if u in keep and v in keep and {tp.class_of[u], tp.class_of[v]} != {1, 2}:
            edges.append((u, v))
    return Graph.from_edges(edges, keep), bs


def meets_h_hypothesis(h: Graph, require_2connected: bool) -> bool:
    """H in the mod-4 family; optionally every multi-vertex component
    2-connected (single vertices allowed, e.g. bipyramid poles)."""
    if not is_multi4(h):
        return False
    if require_2connected:
        for comp in h.components():
            if len(comp) == 2:
                return False
            if len(comp) >= 3 and not h.subgraph(comp).is_biconnected():
                return False
    return True


def gen_thm24_instances(
    n: int, seed: int = 0, *, require_2connected: bool = True, limit: int | None = None
) -> list[EmbeddedGraph]:
    """Even triangulations on n vertices whose big-vertex graph meets the
    hypothesis.  Raises NoneFound when the exhaustive filter comes up empty.
    """
    rng = random.Random(seed)
    out = []
    for g in gen_even_triangulations(n):
        h, _ = big_vertex_graph(g)
        if meets_h_hypothesis(h, require_2connected):
            out.append(g)
            if limit is not None and len(out) >= limit:
                return out
    if not out:
        raise NoneFound(f"no instance on {n} vertices meets the hypothesis")
    rng.shuffle(out)
    return out


# --- catalog -------------------------------------------------------------


def load_catalog(lines: Iterable[str]) -> Iterator[EmbeddedGraph]:
    """Newline-delimited JSON graphs in the shared wire format."""
    for ln, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            yield EmbeddedGraph.from_json(line)
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise ParseError(f"catalog line {ln}: {exc}") from exc


def golden_two_squares() -> Graph:
    """Two squares joined by an edge and a length-3 path; the smallest
    handy member of the family with a genuine cut pair."""
    return Graph.from_edges(
        [(0, 1), (1, 2), (2, 3), (3, 0),
         (4, 5), (5, 6), (6, 7), (7, 4),
         (0, 4), (2, 8), (8, 9), (9, 6)]
    )
