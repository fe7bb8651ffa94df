"""Cycle-length-mod-4 structure: membership, cut paths, chains, cut pairs."""

import pytest

from dualham.errors import NoCutPath, NotBipartite, PathConditionViolated
from dualham.structure import (
    PathRec,
    bipartition_typed,
    chain_decompose,
    cpath_type_check,
    cut_path_candidates,
    cuts_graph,
    find_cut_pair,
    heavy_4cycle_check,
    is_multi4,
    minimal_determined_side,
    naive_all_cycles,
    satisfies_cut_path_condition,
)
from dualham.ugraph import Graph


def cycle(k: int) -> Graph:
    return Graph.from_edges([(i, (i + 1) % k) for i in range(k)])


def k34() -> Graph:
    return Graph.from_edges([(i, j) for i in range(3) for j in range(3, 7)])


class TestMembership:
    def test_cycles(self):
        assert is_multi4(cycle(4))
        assert is_multi4(cycle(8))
        assert not is_multi4(cycle(6))
        assert not is_multi4(cycle(5))

    def test_trees_and_forests(self):
        assert is_multi4(Graph.from_edges([(0, 1), (1, 2), (2, 3)]))
        assert is_multi4(Graph.from_edges([], vertices=[0, 1, 2]))

    def test_k34_not_in_family(self):
        # bipartite, yet 4-cycles and 6-cycles coexist
        assert not is_multi4(k34())

    def test_two_squares_instance(self, two_squares):
        assert is_multi4(two_squares)

    def test_agrees_with_naive_enumeration(self, two_squares):
        for g in (cycle(4), cycle(6), cycle(8), k34(), two_squares):
            naive = all(len(c) % 4 == 0 for c in naive_all_cycles(g))
            assert is_multi4(g) == naive


class TestBipartition:
    def test_odd_cycle_rejected(self):
        with pytest.raises(NotBipartite):
            bipartition_typed(cycle(5))

    def test_types_alternate(self):
        bp = bipartition_typed(cycle(8))
        assert bp.alpha == frozenset({0, 2, 4, 6})
        assert not bp.same_type(0, 1)
        assert bp.same_type(1, 3)


class TestCutPaths:
    def test_condition(self, two_squares):
        bp = bipartition_typed(two_squares)
        assert satisfies_cut_path_condition(two_squares, bp, PathRec((0, 4)))
        # interior vertex 8 has degree 2, anchors 2 and 6 branch
        assert satisfies_cut_path_condition(two_squares, bp, PathRec((2, 8, 9, 6)))
        # same-type ends fail
        assert not satisfies_cut_path_condition(two_squares, bp, PathRec((0, 1, 2)))

    def test_candidates(self, two_squares):
        bp = bipartition_typed(two_squares)
        got = {p.vertices for p in cut_path_candidates(two_squares, bp)}
        assert (0, 4) in got
        assert (2, 8, 9, 6) in got
        # every candidate passes the condition it was selected by
        for p in cut_path_candidates(two_squares, bp):
            assert satisfies_cut_path_condition(two_squares, bp, p)

    def test_cpath_ends_same_type(self, two_squares):
        bp = bipartition_typed(two_squares)
        c = two_squares.subgraph({0, 1, 2, 3})
        assert cpath_type_check(two_squares, bp, c, PathRec((2, 8, 9, 6, 5, 4, 0)))


class TestChains:
    def test_chain_decompose_two_squares(self, two_squares):
        bp = bipartition_typed(two_squares)
        chain = chain_decompose(two_squares, bp, PathRec((2, 8, 9, 6)))
        assert chain.blocks[0] == frozenset({0, 1, 2, 3})
        assert chain.blocks[-1] == frozenset({4, 5, 6, 7})
        assert chain.x == 2 and chain.y == 6
        assert 0 in chain.cut_vertices and 4 in chain.cut_vertices

    def test_rejects_non_cut_path(self, two_squares):
        bp = bipartition_typed(two_squares)
        with pytest.raises(PathConditionViolated):
            chain_decompose(two_squares, bp, PathRec((0, 1, 2)))


class TestCutPairs:
    def test_cuts_graph_two_squares(self, two_squares):
        bp = bipartition_typed(two_squares)
        p, q = PathRec((0, 4)), PathRec((2, 8, 9, 6))
        sides = cuts_graph(two_squares, bp, p, q)
        assert sides is not None
        c, d = sides
        assert c == frozenset({0, 1, 2, 3})
        assert d == frozenset({4, 5, 6, 7})

    def test_find_cut_pair(self, two_squares):
        bp = bipartition_typed(two_squares)
        pair = find_cut_pair(two_squares, bp, PathRec((2, 8, 9, 6)), {0, 1, 2, 3})
        whole = pair.side_c if {0, 1, 2, 3} <= pair.side_c else pair.side_d
        assert {0, 1, 2, 3} <= whole

    def test_minimal_side_is_monotypic(self, two_squares):
        bp = bipartition_typed(two_squares)
        pair, side = minimal_determined_side(two_squares, bp)
        deg3 = {v for v in side if two_squares.degree(v) >= 3}
        assert len({bp.is_beta(v) for v in deg3}) <= 1
        # returned pair really cuts the graph into (side, rest)
        assert cuts_graph(two_squares, bp, pair.p, pair.q) is not None

    def test_no_cut_path_on_plain_cycle(self):
        bp = bipartition_typed(cycle(8))
        with pytest.raises(NoCutPath):
            minimal_determined_side(cycle(8), bp)


class TestHeavy4Cycle:
    def test_holds_on_two_squares(self, two_squares):
        assert heavy_4cycle_check(two_squares, bipartition_typed(two_squares))

    def test_fails_on_k34(self):
        assert not heavy_4cycle_check(k34(), bipartition_typed(k34()))
