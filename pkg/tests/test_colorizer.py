"""The cycle-free beta colouring: construction, pins, and the verifier."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualham.colorizer import (
    color_beta,
    color_beta_4cycle,
    combine,
    verify_coloring,
)
from dualham.errors import NotOn4Cycle
from dualham.structure import TypedBipartition, bipartition_typed
from dualham.ugraph import Graph


def cycle(k: int) -> Graph:
    return Graph.from_edges([(i, (i + 1) % k) for i in range(k)])


def theta_4_4_4() -> Graph:
    """Two hubs joined by three length-4 paths; every cycle has length 8."""
    edges = []
    nxt = 2
    for _ in range(3):
        path = [0, nxt, nxt + 1, nxt + 2, 1]
        edges += list(zip(path, path[1:]))
        nxt += 3
    return Graph.from_edges(edges)


def bridged() -> Graph:
    """Two squares joined by a bridge path of length 2."""
    return Graph.from_edges(
        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 8), (8, 4),
         (4, 5), (5, 6), (6, 7), (7, 4)]
    )


FAMILIES = [cycle(4), cycle(8), theta_4_4_4(), bridged()]


def all_alpha_colourings(bp):
    vs = sorted(bp.alpha)
    for bits in itertools.product((1, 2), repeat=len(vs)):
        yield dict(zip(vs, bits))


@pytest.mark.parametrize("g", FAMILIES, ids=["c4", "c8", "theta444", "bridged"])
def test_exhaustive_soundness(g):
    bp = bipartition_typed(g)
    for a in all_alpha_colourings(bp):
        for pin in sorted(bp.beta):
            for colour in (1, 2):
                b = color_beta(g, bp, a, pin, colour)
                rep = verify_coloring(g, bp, combine(a, b.colour_of), pin, colour)
                assert rep.passed, (a, pin, colour, dict(b.colour_of), rep)


def test_two_squares_instance(two_squares):
    bp = bipartition_typed(two_squares)
    for a in all_alpha_colourings(bp):
        for pin in sorted(bp.beta):
            b = color_beta(two_squares, bp, a, pin, 2)
            rep = verify_coloring(
                two_squares, bp, combine(a, b.colour_of), pin, 2
            )
            assert rep.passed


def test_k34_has_no_good_colouring():
    # the classic negative control: brute force over every beta colouring
    # finds a monochromatic cycle each time
    g = Graph.from_edges([(i, j) for i in range(3) for j in range(3, 7)])
    bp = TypedBipartition(alpha=frozenset({3, 4, 5, 6}), beta=frozenset({0, 1, 2}))
    a = {3: 1, 4: 1, 5: 2, 6: 2}
    for bits in itertools.product((1, 2), repeat=3):
        combined = combine(a, dict(zip((0, 1, 2), bits)))
        rep = verify_coloring(g, bp, combined)
        assert not rep.cycle_free, bits


class Test4Cycle:
    def test_both_orientations(self, two_squares):
        bp = bipartition_typed(two_squares)
        # 1 and 3 are opposite corners of the square 0-1-2-3
        v, y = (1, 3) if bp.is_beta(1) else (0, 2)
        a = {u: 1 + (i % 2) for i, u in enumerate(sorted(bp.alpha))}
        for colour in (1, 2):
            b = color_beta_4cycle(two_squares, bp, a, v, y, colour)
            assert b.colour_of[v] == colour
            assert b.colour_of[y] == 3 - colour
            rep = verify_coloring(two_squares, bp, combine(a, b.colour_of))
            assert rep.cycle_free

    def test_theta_corners(self):
        g = theta_4_4_4()
        bp = bipartition_typed(g)
        beta_mid = [v for v in bp.beta if g.degree(v) == 2]
        # hubs 0,1 share no 4-cycle with anything here
        with pytest.raises(NotOn4Cycle):
            a = {u: 1 for u in bp.alpha}
            color_beta_4cycle(g, bp, a, beta_mid[0], beta_mid[1], 1)


class TestVerifier:
    def test_detects_monochromatic_cycle(self):
        g = cycle(4)
        bp = bipartition_typed(g)
        combined = {0: 1, 1: 1, 2: 1, 3: 1}
        rep = verify_coloring(g, bp, combined)
        assert not rep.cycle_free
        assert rep.witness_cycle is not None

    def test_detects_pin_violation(self):
        g = cycle(4)
        bp = bipartition_typed(g)
        b = color_beta(g, bp, {0: 1, 2: 2}, min(bp.beta), 1)
        rep = verify_coloring(
            g, bp, combine({0: 1, 2: 2}, b.colour_of), min(bp.beta), 2
        )
        assert not rep.pin_ok


@settings(max_examples=40, deadline=None)
@given(
    bits=st.lists(st.sampled_from([1, 2]), min_size=4, max_size=4),
    pin_idx=st.integers(0, 3),
    colour=st.sampled_from([1, 2]),
)
def test_c8_random_alpha(bits, pin_idx, colour):
    g = cycle(8)
    bp = bipartition_typed(g)
    a = dict(zip(sorted(bp.alpha), bits))
    pin = sorted(bp.beta)[pin_idx]
    b = color_beta(g, bp, a, pin, colour)
    assert verify_coloring(g, bp, combine(a, b.colour_of), pin, colour).passed
