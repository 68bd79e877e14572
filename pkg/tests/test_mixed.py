import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from corpus import PQ, random_diagram
from knotoids.bracket import Flavor, bracket, jones
from knotoids.diagram import EXCLUDE_MIXED, FIXED_FIXED, MIXED, validate, writhe
from knotoids.errors import InvalidDiagram
from knotoids.geometry import Surface, quotient_intersections
from knotoids.library import example
from knotoids.mixed import (
    h_template,
    mixed_linking,
    o_template,
    pre_shift,
    template_strands,
    to_h_mixed,
    to_o_mixed,
    x_route,
    y_route,
)

ys = st.fractions(min_value=Q(1, 50), max_value=Q(49, 50), max_denominator=50)


def test_o_template_is_a_fixed_circle():
    o = o_template()
    assert o.closed and o.fixed == "O"
    assert o.points[0] == o.points[-1]


def test_h_template_is_a_positive_hopf_link():
    h1, h2, over = h_template()
    d = to_h_mixed(example("trivial-torus"))
    assert validate(d) == []
    assert {s.id for s in d.strands if s.fixed} == {h1.id, h2.id}
    signs = [c.sign for c in d.crossings if c.kind == FIXED_FIXED]
    assert len(signs) == 2 and set(over) == {c.key for c in d.crossings if c.kind == FIXED_FIXED}
    # linking number is half the signed count
    assert sum(signs) // 2 == 1


def test_unknown_template():
    with pytest.raises(InvalidDiagram):
        template_strands("Z")


@given(ys, ys)
def test_x_routes_nest(y1, y2):
    r1, r2 = x_route(y1), x_route(y2)
    assert r1[0].x == 1 and r1[-1].x == 0 and r1[0].y == r1[-1].y == y1
    if y1 != y2:
        assert quotient_intersections(r1, r2, Surface.PLANE) == []


@given(ys, ys)
def test_y_routes_nest(x1, x2):
    r1, r2 = y_route(x1), y_route(x2)
    assert r1[0].y == 1 and r1[-1].y == 0 and r1[0].x == r1[-1].x == x1
    if x1 != x2:
        assert quotient_intersections(r1, r2, Surface.PLANE) == []


@given(ys, ys)
def test_x_route_meets_y_route_once(y, x):
    assert len(quotient_intersections(x_route(y), y_route(x), Surface.PLANE)) == 1


def test_surface_checks():
    with pytest.raises(InvalidDiagram):
        to_o_mixed(example("K_t"))
    with pytest.raises(InvalidDiagram):
        to_h_mixed(example("K_a"))


def test_pre_shift_is_identity_when_clear():
    d = example("K_a")
    t, shift = pre_shift(d)
    assert shift == (0, 0) and t is d


def test_pre_shift_moves_off_the_lattice():
    # the essential circle starts on the cut line x = 1 after wrapping
    d = example("r2-pair-4a")
    t, (dx, dy) = pre_shift(d)
    assert all(p.x.denominator != 1 and p.y.denominator != 1 for s in t.strands for p in s.points)


@pytest.mark.parametrize("p,q", PQ)
def test_pq_curve_links_the_hopf_link(p, q):
    m = to_h_mixed(example(f"pq-curve({p},{q})"))
    assert (mixed_linking(m, "c", "H1"), mixed_linking(m, "c", "H2")) == (p, q)


def test_essential_circle_links_o_once():
    m = to_o_mixed(example("essential-circle-annulus"))
    assert abs(mixed_linking(m, "c", "O")) == 1
    assert mixed_linking(m, "k", "O") == 0


def test_mixed_crossings_are_not_smoothed():
    m = to_o_mixed(example("L_a"))
    kinds = [c.kind for c in m.crossings]
    assert MIXED in kinds
    assert writhe(m, EXCLUDE_MIXED) == writhe(example("L_a"))


def test_channel_crossings_are_frozen():
    m = to_h_mixed(example("pq-curve(2,3)"))
    assert m.channel
    assert all(not m.crossing_map[k].smoothable for k in m.channel)
    assert jones(m, Flavor.H_MIXED) == jones(example("pq-curve(2,3)"), Flavor.TOROIDAL)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_o_mixed_equivalence_random(seed):
    d = random_diagram(random.Random(seed), surface=Surface.ANNULUS)
    m = to_o_mixed(d)
    assert validate(m) == []
    assert bracket(m, Flavor.O_MIXED) == bracket(d, Flavor.ANNULAR)
    assert bracket(m, Flavor.UNIVERSAL_O_MIXED) == bracket(d, Flavor.UNIVERSAL_ANNULAR)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_h_mixed_equivalence_random(seed):
    d = random_diagram(random.Random(seed), surface=Surface.TORUS)
    m = to_h_mixed(d)
    assert validate(m) == []
    assert bracket(m, Flavor.H_MIXED) == bracket(d, Flavor.TOROIDAL)
    assert jones(m, Flavor.H_MIXED) == jones(d, Flavor.TOROIDAL)
