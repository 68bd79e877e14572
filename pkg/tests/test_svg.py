import re
import xml.etree.ElementTree as ET

import pytest

from corpus import ALL_FIXTURES, fixture
from knotoids.library import example
from knotoids.mixed import to_h_mixed
from knotoids.svg import SvgOptions, render_svg

NS = "{http://www.w3.org/2000/svg}"


def parse(d, **kw):
    return ET.fromstring(render_svg(d, SvgOptions(**kw) if kw else None))


def test_plane_has_no_domain():
    root = parse(example("K_p"))
    assert root.tag == f"{NS}svg"
    assert root.findall(f"{NS}rect") == []
    assert root.findall(f"{NS}polyline") == []


def test_identification_arrows():
    ann = parse(example("K_a"))
    tor = parse(example("K_t"))
    assert len(ann.findall(f"{NS}rect")) == 1
    assert [a.get("data-identify") for a in ann.findall(f"{NS}polyline")] == ["x", "x"]
    assert sorted(a.get("data-identify") for a in tor.findall(f"{NS}polyline")) == ["x", "x", "y", "y"]


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_every_strand_and_crossing_is_drawn(name):
    d = fixture(name)
    root = parse(d)
    drawn = {p.get("data-strand") for p in root.findall(f"{NS}path")}
    assert drawn == {s.id for s in d.strands}
    gaps = [x for x in root.findall(f"{NS}line") if x.get("class") == "gap"]
    assert len(gaps) == len(d.crossings)
    labels = [t.text for t in root.findall(f"{NS}text")]
    assert labels == ["leg", "head"]


@pytest.mark.parametrize("name", ["K_p", "L_a", "L_t", "h:L_t"])
def test_coordinates_stay_in_view(name):
    size = 300
    text = render_svg(fixture(name), SvgOptions(size=size, margin=20))
    for v in re.findall(r'(?:x|y|cx|cy|x1|x2|y1|y2)="(-?[\d.]+)"', text):
        assert -30 <= float(v) <= size + 30


def test_torus_pieces_are_cut_at_the_seam():
    root = parse(example("pq-curve(2,3)"))
    pieces = [p for p in root.findall(f"{NS}path") if p.get("data-strand") == "c"]
    # from (1/7, 2/9) the lift crosses x = 1, 2 and y = 1, 2, 3: five cuts, six runs
    assert len(pieces) == 6


def test_fixed_strands_are_styled():
    root = parse(to_h_mixed(example("K_t")))
    fixed = {p.get("data-strand") for p in root.findall(f"{NS}path") if p.get("class") == "fixed"}
    assert fixed == {"H1", "H2"}


def test_deterministic():
    assert render_svg(example("L_t")) == render_svg(example("L_t"))
