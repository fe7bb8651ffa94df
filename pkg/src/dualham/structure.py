"""Structure theory of graphs whose every cycle has length 0 mod 4.

Such graphs are bipartite; the two sides are the "types" alpha and beta.
The central notions are cut paths (degree-2 interior, mixed-type ends of
degree >= 3), pairs of them that split the graph into two determined sides,
and the block chain left after deleting a cut path's interior.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    CaseUnmatched,
    NoCutPath,
    NoSuchBlock,
    NotBipartite,
    NotCPath,
    PathConditionViolated,
)
from .ugraph import DEFAULT_CYCLE_CAP, Graph


@dataclass(frozen=True)
class TypedBipartition:
    """The two colour classes of a bipartite graph."""

    alpha: frozenset[int]
    beta: frozenset[int]

    def is_beta(self, v: int) -> bool:
        return v in self.beta

    def type_of(self, v: int) -> str:
        return "beta" if v in self.beta else "alpha"

    def same_type(self, u: int, v: int) -> bool:
        return (u in self.beta) == (v in self.beta)


def bipartition_typed(g: Graph) -> TypedBipartition:
    """2-colour by type; the lowest vertex of each component gets alpha."""
    side: dict[int, int] = {}
    for comp in sorted(g.components(), key=min):
        root = min(comp)
        side[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in side:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    raise NotBipartite(f"odd cycle through edge {u}-{w}")
    return TypedBipartition(
        alpha=frozenset(v for v, s in side.items() if s == 0),
        beta=frozenset(v for v, s in side.items() if s == 1),
    )


@dataclass(frozen=True)
class PathRec:
    """A path as a vertex sequence.

    The "interior" that gets subtracted from the graph is the inner vertex
    set when the path has length >= 2, and the single edge itself when the
    path has length 1.
    """

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = self.vertices
        if len(vs) < 2 or len(set(vs)) != len(vs):
            raise ValueError(f"not a path: {vs}")

    @property
    def x(self) -> int:
        return self.vertices[0]

    @property
    def y(self) -> int:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    def reversed(self) -> "PathRec":
        return PathRec(self.vertices[::-1])

    def check_in(self, g: Graph) -> None:
        for a, b in zip(self.vertices, self.vertices[1:]):
            if not g.has_edge(a, b):
                raise ValueError(f"missing edge {a}-{b}")


def minus_interior(g: Graph, *paths: PathRec) -> Graph:
    """Delete each path's interior: inner vertices, or the edge for length 1."""
    h = g
    drop = set()
    for p in paths:
        if p.length == 1:
            h = h.remove_edge(p.x, p.y)
        else:
            drop.update(p.interior)
    return h.remove_vertices(drop) if drop else h


def satisfies_cut_path_condition(g: Graph, bp: TypedBipartition, p: PathRec) -> bool:
    """Degree-2 interior, ends of different types with degree >= 3."""
    if any(g.degree(v) != 2 for v in p.interior):
        return False
    if g.degree(p.x) < 3 or g.degree(p.y) < 3:
        return False
    return not bp.same_type(p.x, p.y)


@dataclass(frozen=True)
class CutPair:
    """Two disjoint cut paths whose interior removal leaves two components."""

    p: PathRec
    q: PathRec
    side_c: frozenset[int]
    side_d: frozenset[int]


@dataclass(frozen=True)
class ChainDecomposition:
    """Ordered block chain of the graph minus a cut path's interior."""

    blocks: tuple[frozenset[int], ...]
    cut_vertices: tuple[int, ...]
    x: int
    y: int


# --- family membership ---------------------------------------------------


def is_multi4(g: Graph, cap: int = DEFAULT_CYCLE_CAP) -> bool:
    """True iff every simple cycle has length congruent to 0 mod 4.

    Fast necessary filters (bipartiteness, fundamental cycle lengths) run
    first; the complete per-block cycle enumeration settles the answer.
    Raises CycleCapExceeded when enumeration passes `cap` cycles.
    """
    if g.m < g.n:
        if g.is_acyclic():
            return True
    try:
        bipartition_typed(g)
    except NotBipartite:
        return False
    if not _fundamental_cycles_ok(g):
        return False
    blocks, _ = g.blocks()
    for comp in blocks:
        if len(comp) < 3:
            continue
        sub = g.subgraph(comp)
        for cyc in sub.simple_cycles(cap=cap):
            if len(cyc) % 4 != 0:
                return False
    return True


def _fundamental_cycles_ok(g: Graph) -> bool:
    depth: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    tree_edges = set()
    for comp in g.components():
        root = min(comp)
        depth[root] = 0
        parent[root] = None
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    tree_edges.add(frozenset((u, w)))
                    stack.append(w)
    for u, v in g.edges():
        if frozenset((u, v)) in tree_edges:
            continue
        # tree path length via the lowest common ancestor
        a, b, la, lb = u, v, depth[u], depth[v]
        length = 1
        while la > lb:
            a, la = parent[a], la - 1
            length += 1
        while lb > la:
            b, lb = parent[b], lb - 1
            length += 1
        while a != b:
            a, b = parent[a], parent[b]
            length += 2
        if length % 4 != 0:
            return False
    return True


def naive_all_cycles(g: Graph) -> list[list[int]]:
    """Independent oracle: every simple cycle, found by brute-force
    Hamilton search inside each vertex subset.  Exponential; tiny graphs only.
    """
    out = []
    verts = g.vertices
    for r in range(3, len(verts) + 1):
        for sub in itertools.combinations(verts, r):
            subset = set(sub)
            start = sub[0]
            # Hamilton cycles of g[subset] through all of subset
            def extend(path: list[int], used: set[int]):
                u = path[-1]
                if len(path) == r:
                    if g.has_edge(u, start) and path[1] < path[-1]:
                        out.append(list(path))
                    return
                for w in sorted(g.adj[u] & subset):
                    if w not in used:
                        path.append(w)
                        used.add(w)
                        extend(path, used)
                        path.pop()
                        used.discard(w)

            extend([start], {start})
    return out


# --- blocks --------------------------------------------------------------


def blocks(g: Graph) -> tuple[list[set[int]], set[int]]:
    """Biconnected components and cut vertices; bridges are 2-vertex blocks."""
    return g.blocks()


# --- lemma-level operations ----------------------------------------------


def cpath_type_check(g: Graph, bp: TypedBipartition, c: Graph, p: PathRec) -> bool:
    """For a path meeting the 2-connected subgraph c exactly in its ends:
    do the two ends have equal type?  Must hold whenever every cycle of g
    has length 0 mod 4.
    """
    p.check_in(g)
    if p.x not in c or p.y not in c:
        raise NotCPath("path ends must lie in the subgraph")
    if any(v in c for v in p.interior):
        raise NotCPath("path interior meets the subgraph")
    if p.length == 1 and c.has_edge(p.x, p.y):
        raise NotCPath("path is an edge of the subgraph")
    return bp.same_type(p.x, p.y)


def chain_decompose(g: Graph, bp: TypedBipartition, p: PathRec) -> ChainDecomposition:
    """Ordered block chain of g minus the path interior, from end to end."""
    p.check_in(g)
    if not satisfies_cut_path_condition(g, bp, p):
        raise PathConditionViolated(f"path {p.vertices} fails the cut-path condition")
    h = minus_interior(g, p)
    comps, tree = h.block_cut_tree()
    chain_nodes = _tree_path_between(h, comps, tree, p.x, p.y)
    block_ids = [node for node in chain_nodes if node >= 0]
    cut_vs = [-node - 1 for node in chain_nodes if node < 0]
    if len(block_ids) < 2:
        raise CaseUnmatched(
            "graph minus interior is 2-connected; impossible when every cycle "
            "has length 0 mod 4"
        )
    chain_blocks = [frozenset(comps[i]) for i in block_ids]
    covered = set().union(*chain_blocks)
    if covered != set(h.adj):
        raise CaseUnmatched("block chain does not cover the reduced graph")
    if len(chain_blocks[0]) < 3 or len(chain_blocks[-1]) < 3:
        raise CaseUnmatched("end block of the chain is not 2-connected")
    if cut_vs[0] == p.x or cut_vs[-1] == p.y:
        raise CaseUnmatched("path end coincides with a chain cut vertex")
    return ChainDecomposition(tuple(chain_blocks), tuple(cut_vs), p.x, p.y)


def _tree_path_between(h: Graph, comps, tree: Graph, x: int, y: int) -> list[int]:
    """Path of block/cut nodes joining x's block to y's block."""
    t = tree.copy()
    X, Y = -10**9, -10**9 + 1  # virtual terminals
    t.adj[X] = set()
    t.adj[Y] = set()
    for i, comp in enumerate(comps):
        if x in comp:
            t.adj[X].add(i)
            t.adj[i].add(X)
        if y in comp:
            t.adj[Y].add(i)
            t.adj[i].add(Y)
    parent = {X: None}
    stack = [X]
    while stack:
        u = stack.pop()
        for w in t.adj[u]:
            if w not in parent:
                parent[w] = u
                stack.append(w)
    if Y not in parent:
        raise CaseUnmatched("path ends disconnected after interior removal")
    path = [Y]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path[1:-1]


def heavy_4cycle_check(g: Graph, bp: TypedBipartition) -> bool:
    """No 4-cycle may carry an edge with both ends of degree >= 3.

    Always true on 2-connected graphs whose cycles all have length 0 mod 4;
    used as a falsification target.
    """
    verts = g.vertices
    for u, v in itertools.combinations(verts, 2):
        common = sorted(g.adj[u] & g.adj[v])
        for x, z in itertools.combinations(common, 2):
            cycle = [u, x, v, z]
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                if g.degree(a) >= 3 and g.degree(b) >= 3:
                    return False
    return True


def cut_path_candidates(g: Graph, bp: TypedBipartition) -> list[PathRec]:
    """All paths satisfying the cut-path condition.

    They are exactly the maximal degree-2 chains whose two anchors have
    degree >= 3 and different types.
    """
    out = []
    for walk in g.chains():
        if walk[0] == walk[-1]:
            continue
        if g.degree(walk[0]) < 3 or g.degree(walk[-1]) < 3:
            continue
        if bp.same_type(walk[0], walk[-1]):
            continue
        out.append(PathRec(tuple(walk)))
    out.sort(key=lambda p: p.vertices)
    return out


def cuts_graph(
    g: Graph, bp: TypedBipartition, p: PathRec, q: PathRec
) -> tuple[frozenset[int], frozenset[int]] | None:
    """Check the cut-pair definition directly; return the two determined
    sides (p.x's side first) or None.
    """
    if set(p.vertices) & set(q.vertices):
        return None
    if not (
        satisfies_cut_path_condition(g, bp, p)
        and satisfies_cut_path_condition(g, bp, q)
    ):
        return None
    h = minus_interior(g, p, q)
    comps = h.components()
    if len(comps) != 2:
        return None
    c = next(comp for comp in comps if p.x in comp)
    d = next(comp for comp in comps if p.x not in comp)
    ends_ok = (
        q.x in c or q.y in c
    ) and (q.x in d or q.y in d) and p.y in d
    if not ends_ok:
        return None
    qc = q.x if q.x in c else q.y
    qd = q.y if qc == q.x else q.x
    if not (bp.same_type(p.x, qc) and bp.same_type(p.y, qd)):
        return None
    return frozenset(c), frozenset(d)


def find_cut_pair(g: Graph, bp: TypedBipartition, p: PathRec, b: set[int]) -> CutPair:
    """Companion path for p leaving the 2-connected block b whole on one side.

    Scans the block chain: the first sufficiently-branching cut vertex of
    the target type, paired with the last branching one before it.
    """
    chain = chain_decompose(g, bp, p)
    blocks_ = list(chain.blocks)
    cuts = list(chain.cut_vertices)
    bset = frozenset(b)
    if bset not in blocks_ or len(bset) < 3:
        raise NoSuchBlock(f"{sorted(b)} is not a 2-connected chain block")
    l = blocks_.index(bset)
    # orient so b sits toward the far (y) end of the scan
    if l == 0:
        target_type_beta = bp.is_beta(p.x)
    elif l == len(blocks_) - 1:
        target_type_beta = bp.is_beta(p.y)
    else:
        if not bp.same_type(cuts[l - 1], cuts[l]):
            raise CaseUnmatched("block boundary cut vertices of different types")
        target_type_beta = bp.is_beta(cuts[l - 1])
    if target_type_beta != bp.is_beta(p.y):
        blocks_.reverse()
        cuts.reverse()
        l = len(blocks_) - 1 - l
    # forward scan (indices into cuts, 0-based)
    k = next(
        (
            i
            for i, a in enumerate(cuts)
            if g.degree(a) >= 3 and bp.is_beta(a) == target_type_beta
        ),
        None,
    )
    if k is None:
        raise CaseUnmatched("no branching cut vertex of the target type")
    j = next(
        (i for i in range(k - 1, -1, -1) if g.degree(cuts[i]) >= 3),
        None,
    )
    if j is None:
        raise CaseUnmatched("no branching cut vertex before the target")
    q = PathRec(tuple(cuts[j : k + 1]))
    q.check_in(g)
    sides = cuts_graph(g, bp, p, q)
    if sides is None:
        raise CaseUnmatched("constructed companion path does not cut the graph")
    side_c, side_d = sides
    if not (bset <= side_c or bset <= side_d):
        raise CaseUnmatched("block split across the two determined sides")
    return CutPair(p, q, side_c, side_d)


def minimal_determined_side(
    g: Graph, bp: TypedBipartition
) -> tuple[CutPair, frozenset[int]]:
    """Inclusion-minimal determined side over every cut pair of the graph.

    All degree->=3 vertices of the returned side share one type; the
    returned pair has that side as side_c.
    """
    candidates = cut_path_candidates(g, bp)
    if not candidates:
        raise NoCutPath("no path satisfies the cut-path condition")
    sides: list[tuple[frozenset[int], PathRec, PathRec]] = []
    for p, q in itertools.combinations(candidates, 2):
        got = cuts_graph(g, bp, p, q)
        if got is None:
            continue
        c, d = got
        sides.append((c, p, q))
        sides.append((d, p, q))
    if not sides:
        raise NoCutPath("no pair of cut paths splits the graph")
    minimal = [
        s for s in sides if not any(t[0] < s[0] for t in sides)
    ]
    minimal.sort(key=lambda s: (len(s[0]), sorted(s[0]), s[1].vertices, s[2].vertices))
    side, p, q = minimal[0]
    c, d = cuts_graph(g, bp, p, q)
    other = d if side == c else c
    # orient both paths so their first ends sit in the minimal side
    if p.x not in side:
        p = p.reversed()
    if q.x not in side:
        q = q.reversed()
    deg3_types = {bp.is_beta(v) for v in side if g.degree(v) >= 3}
    if len(deg3_types) > 1:
        raise CaseUnmatched(
            "minimal determined side has branching vertices of both types"
        )
    return CutPair(p, q, side, other), side
