"""Two-tree partitions: fan paths, the solver, and both pipelines."""

import pytest

from dualham.embed import classify_big_small, tri_partition
from dualham.errors import (
    BipyramidSpecialCase,
    ConstraintInvalid,
    NotEvenTriangulation,
    SearchExhausted,
)
from dualham.gen import (
    TETRAHEDRON,
    big_vertex_graph,
    gen_bipyramid,
    gen_even_triangulations,
    meets_h_hypothesis,
)
from dualham.embed import EmbeddedGraph
from dualham.treesplit import (
    PartitionConstraint,
    TreePartition,
    bipyramid_poles,
    families_R,
    fan_paths,
    tree_partition_face_sparse,
    tree_partition_solve,
    tree_partition_with_edge,
    verify_tree_partition,
)


@pytest.fixture(scope="module")
def even10():
    """A 10-vertex even triangulation with big class-3 vertices that is
    not a bipyramid."""
    for g in gen_even_triangulations(10):
        bs = classify_big_small(g, tri_partition(g))
        if bs.b_of(3) and bipyramid_poles(g) is None:
            return g
    raise AssertionError("expected instance missing")


class TestBipyramidDetection:
    def test_octahedron_and_larger(self, octahedron, bipyramid6):
        assert bipyramid_poles(octahedron) is not None
        assert set(bipyramid_poles(bipyramid6)) == {6, 7}
        assert set(bipyramid_poles(gen_bipyramid(4))) == {8, 9}

    def test_not_a_bipyramid(self, even10):
        assert bipyramid_poles(even10) is None

    def test_fan_paths_refuse_bipyramids(self, bipyramid6):
        bs = classify_big_small(bipyramid6, tri_partition(bipyramid6))
        with pytest.raises(BipyramidSpecialCase):
            fan_paths(bipyramid6, bs)


class TestFanPaths:
    def test_every_small_vertex_covered(self, even10, catalog12):
        for g in [even10] + [h for h in catalog12 if bipyramid_poles(h) is None]:
            bs = classify_big_small(g, tri_partition(g))
            paths = fan_paths(g, bs)
            covered = {u for fp in paths for u in fp.interior}
            assert bs.small <= covered

    def test_pole_and_end_shape(self, even10):
        ab = even10.abstract()
        bs = classify_big_small(even10, tri_partition(even10))
        for fp in fan_paths(even10, bs):
            assert fp.v1 == frozenset({fp.path[0], fp.path[-1]})
            assert fp.v1 <= bs.big
            assert set(fp.interior) <= bs.small
            for pole in fp.v0:
                assert all(ab.has_edge(pole, u) for u in fp.path)

    def test_families_are_disjoint(self, even10):
        tp = tri_partition(even10)
        bs = classify_big_small(even10, tp)
        paths = fan_paths(even10, bs)
        r, r_hat = families_R(even10, tp, bs, paths)
        assert not set(p.path for p in r) & set(p.path for p in r_hat)
        b3 = bs.b_of(3)
        for fp in r:
            assert fp.v0 <= bs.big and (fp.v0 | fp.v1) & b3
        for fp in r_hat:
            assert fp.v0 & b3 and fp.v0 & bs.s_of(3)


class TestSolver:
    def test_octahedron_unseeded(self, octahedron):
        part = tree_partition_solve(
            octahedron, PartitionConstraint(frozenset(), frozenset())
        )
        assert verify_tree_partition(octahedron.abstract(), part)

    def test_seeds_respected(self, bipyramid6):
        # poles of the 6-ring bipyramid are the big class-3 vertices
        c = PartitionConstraint(frozenset({6}), frozenset({7}))
        part = tree_partition_solve(bipyramid6, c)
        assert 6 in part.s and 7 in part.t
        assert verify_tree_partition(bipyramid6.abstract(), part)

    def test_overlapping_seeds_rejected(self, octahedron):
        with pytest.raises(ConstraintInvalid):
            tree_partition_solve(
                octahedron, PartitionConstraint(frozenset({0}), frozenset({0}))
            )

    def test_cyclic_seed_rejected(self, octahedron):
        ab = octahedron.abstract()
        tri = next(
            frozenset({u, v, w})
            for u in ab.adj for v in ab.adj[u] for w in ab.adj[v]
            if w != u and ab.has_edge(w, u)
        )
        with pytest.raises(ConstraintInvalid):
            tree_partition_solve(octahedron, PartitionConstraint(tri, frozenset()))

    def test_unsatisfiable_seeds_exhaust(self, bipyramid6):
        # with the poles on opposite sides, each side's ring vertices must
        # form an independent set of the 6-ring (two on one side plus a
        # pole close a triangle); the only such split is the ring's colour
        # classes, and 0 and 3 lie in different classes
        with pytest.raises(SearchExhausted):
            tree_partition_solve(
                bipyramid6, PartitionConstraint(frozenset({6, 0, 3}), frozenset({7}))
            )

    def test_verifier_rejects_bad_partition(self, octahedron):
        ab = octahedron.abstract()
        p = TreePartition(frozenset(range(3)), frozenset(range(3, 6)))
        ok = verify_tree_partition(ab, p)
        s_tree = ab.subgraph(p.s).is_tree() and ab.subgraph(p.t).is_tree()
        assert ok == s_tree


class TestWithEdgePipeline:
    def test_rejects_non_even_triangulation(self):
        g = EmbeddedGraph.build(TETRAHEDRON)
        with pytest.raises(NotEvenTriangulation):
            tree_partition_with_edge(g, 0, 1)

    def test_rejects_small_v(self, octahedron):
        with pytest.raises(ValueError):
            tree_partition_with_edge(octahedron, 0, 1)

    def test_bipyramid_case(self, bipyramid6):
        tp = tri_partition(bipyramid6)
        bs = classify_big_small(bipyramid6, tp)
        v = min(bs.b_of(3))
        w = next(u for u in bipyramid6.rotation[v] if tp.class_of[u] in (1, 2))
        part = tree_partition_with_edge(bipyramid6, v, w)
        assert verify_tree_partition(bipyramid6.abstract(), part)
        assert (v in part.s) == (w in part.s)

    def test_all_edges_all_instances(self, even10, catalog12):
        for g in [even10] + catalog12:
            tp = tri_partition(g)
            bs = classify_big_small(g, tp)
            ab = g.abstract()
            for v in sorted(bs.b_of(3)):
                for w in sorted(ab.adj[v]):
                    if tp.class_of[w] not in (1, 2):
                        continue
                    part = tree_partition_with_edge(g, v, w)
                    assert verify_tree_partition(ab, part, bs.b_of(1), bs.b_of(2))
                    assert (v in part.s) == (w in part.s)


class TestFaceSparsePipeline:
    def test_bipyramids(self, octahedron, bipyramid6):
        for g in (octahedron, bipyramid6):
            part, rep = tree_partition_face_sparse(g)
            assert verify_tree_partition(g.abstract(), part)
            assert rep["all_ok"] and rep["special_case"] == "bipyramid"

    def test_all_hypothesis_instances(self, even10, catalog12):
        for g in [even10] + catalog12:
            h, bs = big_vertex_graph(g)
            if not meets_h_hypothesis(h, True):
                continue
            part, rep = tree_partition_face_sparse(g)
            assert verify_tree_partition(
                g.abstract(), part, bs.b_of(1), bs.b_of(2)
            )
            assert rep["all_ok"], rep

    def test_report_checks_implications_directly(self, even10):
        tp = tri_partition(even10)
        part, rep = tree_partition_face_sparse(even10)
        ab = even10.abstract()
        for row in rep["vertices"]:
            v = row["vertex"]
            if row["h_degree"] >= 3:
                n1 = {u for u in ab.adj[v] if tp.class_of[u] == 1}
                n2 = {u for u in ab.adj[v] if tp.class_of[u] == 2}
                assert (row["status"] == "branching-ok") == (
                    n1 <= part.s and n2 <= part.t
                )
