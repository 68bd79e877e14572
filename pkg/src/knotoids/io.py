"""Line-oriented diagram files.

::

    # comment
    surface plane|annulus|torus
    strand <id> open|closed [fixed O|H1|H2]
    pt <x> <y>                      # integers or n/d, cover coordinates
    template O|H                    # expands the fixed template strands
    over <id>.<seg> <id>.<seg> <a> <b> first|second [channel]
"""

from __future__ import annotations

import re
from fractions import Fraction

from .diagram import FIRST, SECOND, CrossingKey, Diagram, Strand, check
from .errors import InvalidDiagram, ParseError
from .geometry import Point, Surface
from .mixed import template_strands

_NUM = re.compile(r"^-?\d+(?:/\d+)?$")
_BRANCH = re.compile(r"^(?P<id>[A-Za-z_][\w\-]*)\.(?P<seg>\d+)$")
_ID = re.compile(r"^[A-Za-z_][\w\-]*$")


def _num(tok: str, lineno: int) -> Fraction:
    if not _NUM.match(tok):
        raise ParseError(f"line {lineno}: bad number {tok!r}")
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise ParseError(f"line {lineno}: zero denominator in {tok!r}") from None


def fmt_num(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_diagram(text: str, *, strict: bool = True) -> Diagram:
    """Parse a diagram file; with ``strict`` the result is also validated."""
    surface = None
    strands: list[tuple[str, bool, str | None, list[Point], int]] = []
    over: dict[CrossingKey, str] = {}
    channel: set[CrossingKey] = set()
    template = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0]
        if surface is None and head != "surface":
            raise ParseError(f"line {lineno}: the first statement must be 'surface'")
        if head == "surface":
            if surface is not None:
                raise ParseError(f"line {lineno}: duplicate surface line")
            if len(tok) != 2 or tok[1] not in ("plane", "annulus", "torus"):
                raise ParseError(f"line {lineno}: expected 'surface plane|annulus|torus'")
            surface = Surface(tok[1])
        elif head == "strand":
            if len(tok) not in (3, 5) or tok[2] not in ("open", "closed"):
                raise ParseError(f"line {lineno}: expected 'strand <id> open|closed [fixed <label>]'")
            if not _ID.match(tok[1]):
                raise ParseError(f"line {lineno}: bad strand id {tok[1]!r}")
            fixed = None
            if len(tok) == 5:
                if tok[3] != "fixed" or tok[4] not in ("O", "H1", "H2"):
                    raise ParseError(f"line {lineno}: expected 'fixed O|H1|H2'")
                fixed = tok[4]
            strands.append((tok[1], tok[2] == "closed", fixed, [], lineno))
        elif head == "pt":
            if not strands:
                raise ParseError(f"line {lineno}: 'pt' before any strand")
            if len(tok) != 3:
                raise ParseError(f"line {lineno}: expected 'pt <x> <y>'")
            strands[-1][3].append(Point(_num(tok[1], lineno), _num(tok[2], lineno)))
        elif head == "template":
            if len(tok) != 2 or tok[1] not in ("O", "H"):
                raise ParseError(f"line {lineno}: expected 'template O|H'")
            if template is not None:
                raise ParseError(f"line {lineno}: duplicate template line")
            template = tok[1]
        elif head == "over":
            if len(tok) not in (6, 7):
                raise ParseError(f"line {lineno}: expected 'over <id>.<seg> <id>.<seg> <a> <b> first|second [channel]'")
            ma, mb = _BRANCH.match(tok[1]), _BRANCH.match(tok[2])
            if not ma or not mb:
                raise ParseError(f"line {lineno}: bad branch reference")
            a, b = _num(tok[3], lineno), _num(tok[4], lineno)
            if a.denominator != 1 or b.denominator != 1:
                raise ParseError(f"line {lineno}: translate must be integral")
            if tok[5] not in (FIRST, SECOND):
                raise ParseError(f"line {lineno}: over flag must be 'first' or 'second'")
            key = CrossingKey(ma["id"], int(ma["seg"]), mb["id"], int(mb["seg"]), (int(a), int(b)))
            if (key.strand_a, key.seg_a) > (key.strand_b, key.seg_b):
                raise ParseError(f"line {lineno}: crossing key {key} is not canonical")
            if key in over:
                raise ParseError(f"line {lineno}: duplicate over line for {key}")
            over[key] = tok[5]
            if len(tok) == 7:
                if tok[6] != "channel":
                    raise ParseError(f"line {lineno}: unexpected token {tok[6]!r}")
                channel.add(key)
        else:
            raise ParseError(f"line {lineno}: unknown statement {head!r}")
    if surface is None:
        raise ParseError("empty file: missing 'surface' line")
    built = []
    for sid, closed, fixed, pts, lineno in strands:
        if len(pts) < 2:
            raise ParseError(f"line {lineno}: strand {sid} needs at least 2 points")
        built.append(Strand(sid, closed, tuple(pts), fixed))
    if template is not None:
        fixed_strands, fixed_over = template_strands(template)
        built.extend(fixed_strands)
        for k, v in fixed_over.items():
            over.setdefault(k, v)
    _check_fixed_geometry(built, template)
    d = Diagram(surface, tuple(built), over, frozenset(channel), template)
    if strict:
        check(d)
    return d


def _check_fixed_geometry(strands, template) -> None:
    fixed = [s for s in strands if s.fixed]
    if not fixed:
        return
    if template is None:
        raise InvalidDiagram("fixed strands come only from 'template O|H'")
    expected = {s.id: s for s in template_strands(template)[0]}
    for s in fixed:
        if expected.get(s.id) != s:
            raise InvalidDiagram(f"fixed strand {s.id} does not match template {template}")


def serialize_diagram(d: Diagram, comments: tuple[str, ...] = ()) -> str:
    """Canonical text; ``parse_diagram`` inverts it exactly."""
    lines = [f"# {c}" for c in comments]
    lines.append(f"surface {d.surface.value}")
    for s in d.strands:
        if s.fixed:
            continue
        lines.append(f"strand {s.id} {'closed' if s.closed else 'open'}")
        lines.extend(f"pt {fmt_num(p.x)} {fmt_num(p.y)}" for p in s.points)
    if d.template:
        lines.append(f"template {d.template}")
    template_keys = set(template_strands(d.template)[1]) if d.template else set()
    for k in sorted(d.over):
        if k in template_keys:
            continue
        tail = " channel" if k in d.channel else ""
        lines.append(f"over {k} {d.over[k]}{tail}")
    return "\n".join(lines) + "\n"


def read_diagram(path: str, *, strict: bool = True) -> Diagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read(), strict=strict)
