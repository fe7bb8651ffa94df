"""Generators: bipyramids, exhaustive triangulations, family members."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualham.embed import canonical_form, is_even_triangulation, tri_partition
from dualham.errors import NoneFound, ParseError, SizeOutOfRange, SizeTooSmall
from dualham.gen import (
    gen_bipyramid,
    gen_even_triangulations,
    gen_multi4,
    gen_thm24_instances,
    gen_triangulations,
    big_vertex_graph,
    load_catalog,
    meets_h_hypothesis,
)
from dualham.structure import is_multi4
from dualham.ugraph import Graph


class TestBipyramid:
    def test_octahedron(self, octahedron):
        assert (octahedron.n, octahedron.m) == (6, 12)
        assert len(octahedron.faces.faces) == 8
        assert is_even_triangulation(octahedron)

    def test_pole_degrees(self, bipyramid6):
        assert bipyramid6.n == 8
        assert bipyramid6.degree(6) == bipyramid6.degree(7) == 6
        assert all(bipyramid6.degree(v) == 4 for v in range(6))

    def test_too_small(self):
        with pytest.raises(SizeTooSmall):
            gen_bipyramid(1)


class TestExhaustiveTriangulations:
    def test_counts_match_simplicial_polyhedra(self):
        # numbers of plane triangulations on n vertices (OEIS A000109);
        # an independent yardstick for the expansion's completeness
        expected = {4: 1, 5: 1, 6: 2, 7: 5, 8: 14, 9: 50}
        for n, want in expected.items():
            assert len(gen_triangulations(n)) == want

    def test_all_valid_and_distinct(self):
        tris = gen_triangulations(8)
        codes = {canonical_form(g) for g in tris}
        assert len(codes) == len(tris)
        for g in tris:
            assert g.n == 8
            assert all(len(f) == 3 for f in g.faces.faces)
            assert g.m == 3 * g.n - 6

    def test_even_counts(self):
        # frozen from exhaustive generation (12-vertex value lives in the
        # catalog fixture): 6->1, 7->0, 8->1, 9->1, 10->2, 11->2
        assert len(list(gen_even_triangulations(6))) == 1
        assert len(list(gen_even_triangulations(7))) == 0
        assert len(list(gen_even_triangulations(8))) == 1
        assert len(list(gen_even_triangulations(9))) == 1

    def test_unique_6_vertex_even_is_octahedron(self, octahedron):
        (g,) = gen_even_triangulations(6)
        assert canonical_form(g) == canonical_form(octahedron)

    def test_size_bounds(self):
        with pytest.raises(SizeOutOfRange):
            gen_triangulations(3)
        with pytest.raises(SizeOutOfRange):
            gen_triangulations(17)

    def test_catalog_instances_valid(self, catalog12):
        assert len(catalog12) == 8
        codes = set()
        for g in catalog12:
            assert g.n == 12 and is_even_triangulation(g)
            codes.add(canonical_form(g))
        assert len(codes) == 8


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), size=st.integers(4, 24))
def test_gen_multi4_always_in_family(seed, size):
    g = gen_multi4(size, seed)
    assert is_multi4(g)
    assert g.n <= size


def test_gen_multi4_deterministic():
    assert gen_multi4(16, 7).edges() == gen_multi4(16, 7).edges()


class TestHypothesisFilter:
    def test_big_vertex_graph_excludes_class12_edges(self, catalog12):
        for g in catalog12:
            h, bs = big_vertex_graph(g)
            tp = tri_partition(g)
            for u, v in h.edges():
                assert u in bs.big and v in bs.big
                assert {tp.class_of[u], tp.class_of[v]} != {1, 2}

    def test_meets_h_hypothesis(self):
        assert meets_h_hypothesis(Graph.from_edges([], vertices=[0, 1]), True)
        # a lone edge (a 2-vertex component) fails the 2-connectivity reading
        assert not meets_h_hypothesis(Graph.from_edges([(0, 1)]), True)
        assert meets_h_hypothesis(Graph.from_edges([(0, 1)]), False)
        c4 = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0)])
        assert meets_h_hypothesis(c4, True)
        c6 = Graph.from_edges([(i, (i + 1) % 6) for i in range(6)])
        assert not meets_h_hypothesis(c6, True)

    def test_thm24_instances(self):
        got = gen_thm24_instances(10, seed=1)
        assert got
        for g in got:
            h, _ = big_vertex_graph(g)
            assert meets_h_hypothesis(h, True)
        with pytest.raises(NoneFound):
            gen_thm24_instances(7)


class TestCatalog:
    def test_round_trip(self, octahedron):
        lines = [octahedron.to_json(), "", octahedron.to_json()]
        got = list(load_catalog(lines))
        assert len(got) == 2 and got[0] == octahedron

    def test_parse_error_carries_line_number(self, octahedron):
        with pytest.raises(ParseError, match="line 2"):
            list(load_catalog([octahedron.to_json(), "nonsense"]))
