import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from corpus import ALL_FIXTURES, fixture, random_diagram
from knotoids.errors import InvalidDiagram, ParseError, UnassignedCrossing
from knotoids.io import fmt_num, parse_diagram, read_diagram, serialize_diagram
from knotoids.library import example


def same(a, b):
    return (a.surface, a.strands, dict(a.over), a.channel, a.template) == \
        (b.surface, b.strands, dict(b.over), b.channel, b.template)


K_P_TEXT = """\
# the K_p fixture
surface plane
strand k open
pt 0 0
pt 3 0
pt 3 3
pt 1 3
pt 1 -1
pt 2 -1
pt 2 1
over k.0 k.3 0 0 first
over k.0 k.5 0 0 second
"""


def test_serialize_k_p():
    assert serialize_diagram(example("K_p"), ("the K_p fixture",)) == K_P_TEXT


def test_parse_k_p():
    assert same(parse_diagram(K_P_TEXT), example("K_p"))


def test_fmt_num():
    assert fmt_num(Q(3)) == "3"
    assert fmt_num(Q(-7, 20)) == "-7/20"


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_round_trip_fixtures(name):
    d = fixture(name)
    text = serialize_diagram(d)
    assert same(parse_diagram(text), d)
    assert serialize_diagram(parse_diagram(text)) == text


def test_mixed_file_uses_template_line():
    text = serialize_diagram(fixture("h:L_t"))
    assert "template H" in text
    assert "strand H1" not in text and "strand H2" not in text
    assert " channel" in text


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip_random(seed):
    d = random_diagram(random.Random(seed))
    assert same(parse_diagram(serialize_diagram(d)), d)


def test_comments_and_blank_lines():
    text = "\n# header\n" + K_P_TEXT.replace("pt 3 0", "pt 3 0   # corner") + "\n\n"
    assert same(parse_diagram(text), example("K_p"))


def test_read_diagram(tmp_path):
    p = tmp_path / "k.txt"
    p.write_text(K_P_TEXT)
    assert same(read_diagram(str(p)), example("K_p"))


@pytest.mark.parametrize("text,lineno", [
    ("strand k open\n", 1),
    ("surface sphere\n", 1),
    ("surface plane\nsurface plane\n", 2),
    ("surface plane\npt 0 0\n", 2),
    ("surface plane\nstrand k open\npt 0 x\n", 3),
    ("surface plane\nstrand k open\npt 1/0 0\n", 3),
    ("surface plane\nstrand k open\npt 0 0\npt 1 0\nover k.0 k.1 0 0 above\n", 5),
    ("surface plane\nstrand k open\npt 0 0\npt 1 0\nover k.3 k.1 0 0 first\n", 5),
    ("surface plane\nstrand k open\npt 0 0\npt 1 0\nover k.0 k.1 1/2 0 first\n", 5),
    ("surface plane\nstrand k shut\n", 2),
    ("surface plane\nwobble\n", 2),
    ("surface plane\ntemplate Q\n", 2),
    ("surface plane\nstrand k open\npt 0 0\n", 2),
])
def test_parse_errors_name_the_line(text, lineno):
    with pytest.raises(ParseError) as exc:
        parse_diagram(text)
    assert f"line {lineno}:" in str(exc.value)


def test_empty_file():
    with pytest.raises(ParseError):
        parse_diagram("# nothing\n")


def test_strict_validates():
    text = K_P_TEXT.replace("over k.0 k.5 0 0 second\n", "")
    with pytest.raises(UnassignedCrossing):
        parse_diagram(text)
    d = parse_diagram(text, strict=False)
    assert len(d.over) == 1


def test_fixed_strand_must_match_template():
    text = "surface plane\nstrand O closed fixed O\npt 0 0\npt 1 0\npt 1 1\npt 0 0\nstrand k open\npt 2 2\npt 3 2\n"
    with pytest.raises(InvalidDiagram):
        parse_diagram(text)
