"""Plain undirected graphs and the small algorithms everything else leans on.

Vertices are hashable ids (ints throughout this package).  The class is a
thin wrapper over an adjacency-set dict; all operations treat it as
immutable and return new instances.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator

from .errors import CycleCapExceeded

Edge = tuple[int, int]

DEFAULT_CYCLE_CAP = 10**6


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u <= v else (v, u)


class Graph:
    """Simple undirected graph on an explicit vertex set."""

    __slots__ = ("adj",)

    def __init__(self, adj: dict[int, set[int]]):
        self.adj = adj

    @classmethod
    def from_edges(cls, edges: Iterable[Edge], vertices: Iterable[int] = ()) -> "Graph":
        adj: dict[int, set[int]] = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        return cls(adj)

    # --- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return sorted(self.adj)

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self.adj.values()) // 2

    def edges(self) -> list[Edge]:
        return sorted(norm_edge(u, v) for u in self.adj for v in self.adj[u] if u < v)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.adj and v in self.adj[u]

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    def __contains__(self, v: int) -> bool:
        return v in self.adj

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # --- derived graphs --------------------------------------------------

    def copy(self) -> "Graph":
        return Graph({v: set(nb) for v, nb in self.adj.items()})

    def subgraph(self, keep: Iterable[int]) -> "Graph":
        keep = set(keep)
        return Graph({v: self.adj[v] & keep for v in keep})

    def remove_vertices(self, drop: Iterable[int]) -> "Graph":
        drop = set(drop)
        return self.subgraph(set(self.adj) - drop)

    def remove_edge(self, u: int, v: int) -> "Graph":
        g = self.copy()
        g.adj[u].discard(v)
        g.adj[v].discard(u)
        return g

    def union(self, other: "Graph") -> "Graph":
        adj = {v: set(nb) for v, nb in self.adj.items()}
        for v, nb in other.adj.items():
            adj.setdefault(v, set()).update(nb)
        return Graph(adj)

    # --- connectivity ----------------------------------------------------

    def components(self) -> list[set[int]]:
        seen: set[int] = set()
        out = []
        for s in self.adj:
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            out.append(comp)
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def bfs_dist(self, source: int) -> dict[int, int]:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def is_acyclic(self) -> bool:
        return self.find_cycle() is None

    def is_tree(self) -> bool:
        return self.n > 0 and self.is_connected() and self.m == self.n - 1

    def find_cycle(self) -> list[int] | None:
        """Return some cycle as a vertex list, or None if the graph is a forest."""
        parent: dict[int, int | None] = {}
        for s in self.adj:
            if s in parent:
                continue
            parent[s] = None
            stack = [(s, None)]
            while stack:
                u, p = stack.pop()
                for w in self.adj[u]:
                    if w == p:
                        continue
                    if w in parent:
                        # close the cycle through the two tree paths
                        pu, pw = [u], [w]
                        while parent[pu[-1]] is not None:
                            pu.append(parent[pu[-1]])
                        while parent[pw[-1]] is not None:
                            pw.append(parent[pw[-1]])
                        su, sw = set(pu), set(pw)
                        meet = next(x for x in pu if x in sw)
                        cyc = pu[: pu.index(meet) + 1]
                        tail = pw[: pw.index(meet)]
                        return cyc + tail[::-1]
                    parent[w] = u
                    stack.append((w, u))
        return None

    # --- blocks ----------------------------------------------------------

    def blocks(self) -> tuple[list[set[int]], set[int]]:
        """Biconnected components and cut vertices (iterative Hopcroft-Tarjan).

        Bridges come out as 2-vertex blocks; an isolated vertex is its own
        single-vertex block.
        """
        disc: dict[int, int] = {}
        low: dict[int, int] = {}
        comp_list: list[set[int]] = []
        cut: set[int] = set()
        timer = 0
        for root in self.adj:
            if root in disc:
                continue
            if not self.adj[root]:
                comp_list.append({root})
                continue
            stack: list[Edge] = []
            root_children = 0
            disc[root] = low[root] = timer
            timer += 1
            call = [(root, None, iter(sorted(self.adj[root])))]
            while call:
                u, p, it = call[-1]
                advanced = False
                for w in it:
                    if w == p:
                        continue
                    if w not in disc:
                        stack.append((u, w))
                        disc[w] = low[w] = timer
                        timer += 1
                        call.append((w, u, iter(sorted(self.adj[w]))))
                        advanced = True
                        break
                    elif disc[w] < disc[u]:
                        stack.append((u, w))
                        low[u] = min(low[u], disc[w])
                if advanced:
                    continue
                call.pop()
                if p is not None:
                    low[p] = min(low[p], low[u])
                    if low[u] >= disc[p]:
                        if p == root:
                            root_children += 1
                        comp = set()
                        while True:
                            a, b = stack.pop()
                            comp.add(a)
                            comp.add(b)
                            if (a, b) == (p, u):
                                break
                        comp_list.append(comp)
                        if p != root:
                            cut.add(p)
            if root_children > 1:
                cut.add(root)
        return comp_list, cut

    def is_biconnected(self) -> bool:
        """True for graphs on >= 3 vertices with a single block and no cut vertex."""
        if self.n < 3:
            return False
        comps, cuts = self.blocks()
        return len(comps) == 1 and not cuts and self.is_connected()

    def block_cut_tree(self) -> tuple[list[set[int]], Graph]:
        """Blocks plus the tree on block ids (>= 0) and cut vertices (< 0).

        Cut vertex v maps to node -v - 1.  Handy for walking block chains.
        """
        comps, cuts = self.blocks()
        edges = []
        nodes = set(range(len(comps))) | {-v - 1 for v in cuts}
        for i, comp in enumerate(comps):
            for v in comp & cuts:
                edges.append((i, -v - 1))
        return comps, Graph.from_edges(edges, nodes)

    # --- cycles ----------------------------------------------------------

    def simple_cycles(self, cap: int = DEFAULT_CYCLE_CAP) -> Iterator[list[int]]:
        """Yield every simple cycle exactly once (as a vertex list).

        Each cycle is rooted at its minimum vertex with its second vertex
        smaller than its last (direction dedup).  Raises CycleCapExceeded
        once more than `cap` cycles have been produced.
        """
        count = 0
        order = self.vertices
        for root in order:
            # paths rooted at `root` that only use vertices > root
            allowed = {v for v in self.adj if v > root}
            stack: list[tuple[int, list[int], set[int]]] = [(root, [root], set())]
            while stack:
                u, path, used = stack.pop()
                for w in sorted(self.adj[u], reverse=True):
                    if w == root and len(path) >= 3:
                        if path[1] < path[-1]:
                            count += 1
                            if count > cap:
                                raise CycleCapExceeded(
                                    f"more than {cap} simple cycles"
                                )
                            yield list(path)
                    elif w in allowed and w not in used:
                        stack.append((w, path + [w], used | {w}))

    def girth_cycle_through(self, v: int) -> list[int] | None:
        """Some shortest cycle through v, or None."""
        best: list[int] | None = None
        for s in sorted(self.adj[v]):
            # shortest v-s path avoiding the edge v-s closes a cycle
            g = self.remove_edge(v, s)
            parent = {v: None}
            queue = deque([v])
            while queue:
                u = queue.popleft()
                if u == s:
                    break
                for w in g.adj[u]:
                    if w not in parent:
                        parent[w] = u
                        queue.append(w)
            if s in parent:
                path = [s]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                if best is None or len(path) < len(best):
                    best = path[::-1]
        return best

    # --- degree-2 chains -------------------------------------------------

    def chains(self) -> list[list[int]]:
        """Maximal paths whose inner vertices all have degree 2.

        Returns anchor-to-anchor walks (anchors have degree != 2), plus one
        closed walk per pure-cycle component (first == last).  Single edges
        between two anchors are included.
        """
        out: list[list[int]] = []
        deg2 = {v for v in self.adj if self.degree(v) == 2}
        anchors = set(self.adj) - deg2
        seen_d2: set[int] = set()
        seen_edge: set[Edge] = set()
        for a in sorted(anchors):
            for s in sorted(self.adj[a]):
                if norm_edge(a, s) in seen_edge:
                    continue
                walk = [a, s]
                seen_edge.add(norm_edge(a, s))
                while walk[-1] in deg2:
                    seen_d2.add(walk[-1])
                    nxt = next(w for w in self.adj[walk[-1]] if w != walk[-2])
                    seen_edge.add(norm_edge(walk[-1], nxt))
                    walk.append(nxt)
                if walk[0] > walk[-1] or (walk[0] == walk[-1] and len(walk) > 2 and walk[1] > walk[-2]):
                    walk.reverse()
                if walk not in out:
                    out.append(walk)
        # pure cycles: components made only of degree-2 vertices
        for v in sorted(deg2 - seen_d2):
            if v in seen_d2:
                continue
            walk = [v]
            prev = None
            cur = v
            while True:
                nxt = min(w for w in self.adj[cur] if w != prev) if prev is None \
                    else next(w for w in self.adj[cur] if w != prev)
                walk.append(nxt)
                prev, cur = cur, nxt
                if cur == v:
                    break
            seen_d2.update(walk)
            out.append(walk)
        return out
