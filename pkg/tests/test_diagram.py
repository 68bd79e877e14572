import random
from collections import Counter
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from corpus import SURFACE_FIXTURES, fixture, random_diagram
from knotoids.diagram import (
    ALL_MOVING,
    EXCLUDE_MIXED,
    FIRST,
    SECOND,
    Diagram,
    Strand,
    check,
    insert_r1_kink,
    make_key,
    mirror,
    reverse_strand,
    translate_diagram,
    validate,
    writhe,
)
from knotoids.errors import InvalidDiagram, NoRoom, UnassignedCrossing, UnknownCrossing
from knotoids.geometry import Point, Surface
from knotoids.library import example

seeds = st.integers(0, 10**6)


def P(x, y):
    return Point(Q(x), Q(y))


def signs(d):
    return Counter(c.sign for c in d.crossings if c.kind == "moving-moving")


def test_k_p_crossings():
    d = example("K_p")
    keys = [str(c.key) for c in d.crossings]
    assert keys == ["k.0 k.3 0 0", "k.0 k.5 0 0"]
    # under (0,-1) against over (1,0), then under (1,0) against over (0,1): both positive
    assert [c.sign for c in d.crossings] == [1, 1]


def test_make_key_is_canonical():
    k = make_key("k", 3, "c", 1, (1, -2))
    assert (k.strand_a, k.seg_a, k.strand_b, k.seg_b, k.tau) == ("c", 1, "k", 3, (-1, 2))


def test_crossing_sign_flips_with_over_flag():
    d = example("K_p")
    key = d.crossings[0].key
    other = FIRST if d.over[key] == SECOND else SECOND
    flipped = d.with_over({**d.over, key: other})
    assert flipped.crossing_map[key].sign == -d.crossing_map[key].sign


def test_unassigned_and_unknown_flags():
    d = example("K_p")
    bare = Diagram(d.surface, d.strands)
    assert {v.code for v in validate(bare)} == {"UnassignedCrossing"}
    with pytest.raises(UnassignedCrossing):
        check(bare)
    ghost = make_key("k", 0, "k", 1, (0, 0))
    with pytest.raises(UnknownCrossing):
        check(d.with_over({**d.over, ghost: FIRST}))


def test_leg_and_head_must_differ():
    d = Diagram(Surface.TORUS, (Strand("k", False, (P("1/4", "1/2"), P("5/4", "1/2"))),))
    assert validate(d)
    d = Diagram(Surface.PLANE, (Strand("k", False, (P(0, 0), P(1, 0), P(1, 1), P(0, 0))),))
    assert validate(d)


def test_triple_point_rejected():
    k = Strand("k", False, (P(0, 0), P(2, 0)))
    c1 = Strand("c1", True, (P(1, -1), P(1, 1), P(3, 1), P(3, -1), P(1, -1)))
    c2 = Strand("c2", True, (P(-1, -2), P("3/2", "1/2"), P(-1, "1/2"), P(-1, -2)))
    d = Diagram(Surface.PLANE, (k, c1, c2))
    d = d.with_over({c.key: FIRST for c in d.crossings})
    assert any("triple" in v.message for v in validate(d))


def test_annulus_translate_is_horizontal_only():
    with pytest.raises(InvalidDiagram):
        translate_diagram(example("K_a"), 0, Q(1, 3))


@pytest.mark.parametrize("name", SURFACE_FIXTURES)
def test_mirror_negates_writhe(name):
    d = fixture(name)
    assert writhe(mirror(d)) == -writhe(d)
    assert mirror(mirror(d)).over == d.over


@pytest.mark.parametrize("name", SURFACE_FIXTURES)
def test_reversal_flips_only_mixed_signs(name):
    d = fixture(name)
    for s in d.strands:
        r = check(reverse_strand(d, s.id))
        assert len(r.crossings) == len(d.crossings)
        for c in d.crossings:
            touches = (c.key.strand_a == s.id) != (c.key.strand_b == s.id)
            matches = [x for x in r.crossings if x.point == c.point or _same_on_surface(x.point, c.point, d.surface)]
            assert matches
            assert {x.sign for x in matches} == {-c.sign if touches else c.sign}


def _same_on_surface(p, q, surface):
    px, py = surface.periodic
    dx, dy = p.x - q.x, p.y - q.y
    return (dx.denominator == 1 if px else dx == 0) and (dy.denominator == 1 if py else dy == 0)


@settings(max_examples=25, deadline=None)
@given(seeds, st.sampled_from((1, -1)), st.sampled_from(("left", "right")))
def test_kink_changes_writhe_by_sign(seed, sign, side):
    rng = random.Random(seed)
    d = random_diagram(rng)
    s = rng.choice([x for x in d.strands if x.moving])
    try:
        k = insert_r1_kink(d, s.id, seg=rng.randrange(s.nseg), sign=sign, side=side)
    except NoRoom:
        return
    assert validate(k) == []
    assert len(k.crossings) == len(d.crossings) + 1
    assert writhe(k) == writhe(d) + sign


@settings(max_examples=25, deadline=None)
@given(seeds, st.fractions(min_value=-2, max_value=2, max_denominator=97),
       st.fractions(min_value=-2, max_value=2, max_denominator=89))
def test_translation_keeps_the_sign_multiset(seed, dx, dy):
    rng = random.Random(seed)
    d = random_diagram(rng, surface=rng.choice((Surface.ANNULUS, Surface.TORUS)))
    if d.surface is Surface.ANNULUS:
        dy = 0
    try:
        t = translate_diagram(d, dx, dy)
        problems = validate(t)
    except InvalidDiagram:
        return
    if problems:
        # moving across a seam can put a crossing on a cut line; that is a drawing issue only
        assert all(v.code == "InvalidDiagram" for v in problems)
        return
    assert signs(t) == signs(d)
    assert writhe(t, ALL_MOVING) == writhe(d, ALL_MOVING)


def test_exclude_mixed_writhe_skips_template_crossings():
    from knotoids.mixed import to_o_mixed

    m = to_o_mixed(example("K_a"))
    assert writhe(m, EXCLUDE_MIXED) == writhe(example("K_a"))
