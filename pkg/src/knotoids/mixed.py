"""Annular and toroidal diagrams redrawn as O-mixed and H-mixed planar diagrams.

The fundamental square keeps the diagram content. Every pass of a strand
through a cut line becomes a return arc drawn outside the square:

* x-passes leave at ``(1, y)`` and come back at ``(0, y)`` around the
  bottom, threading O (or H1) below the square;
* y-passes leave at ``(x, 1)`` and come back at ``(x, 0)`` around the right
  side, threading H2 above the square.

Return arcs of one family are nested by their cut coordinate, so they are
pairwise disjoint. An x-arc meets every y-arc exactly once; those channel
crossings have the x-arc over and are kept frozen (never smoothed).
"""

from __future__ import annotations

import math
from fractions import Fraction

from .diagram import (
    FIRST,
    FIXED_FIXED,
    MIXED,
    MOVING_MOVING,
    SECOND,
    Crossing,
    Diagram,
    Strand,
    _reduce,
    check,
    translate_diagram,
    validate,
)
from .errors import InvalidDiagram, RoutingCollision
from .geometry import Point, Q, Surface
from .states import Component, linking_number  # noqa: F401  (re-export)

FIXED_IDS = {"O": "O", "H1": "H1", "H2": "H2"}


def _poly(*xy) -> tuple[Point, ...]:
    return tuple(Point(Q(x), Q(y)) for x, y in xy)


_O_PTS = _poly(("-1/32", "-1/16"), ("-3/32", "-1/16"), ("-3/32", "-3/8"), ("-1/32", "-3/8"), ("-1/32", "-1/16"))
_H1_PTS = _poly(("-3/32", "-1/16"), ("-3/32", "-5/16"), ("-9/16", "-5/16"), ("-9/16", "-3/8"),
                ("-1/32", "-3/8"), ("-1/32", "-1/16"), ("-3/32", "-1/16"))
_H2_PTS = _poly(("-1/16", "17/16"), ("17/16", "17/16"), ("17/16", "5/4"), ("-1/2", "5/4"),
                ("-1/2", "-11/32"), ("-7/16", "-11/32"), ("-7/16", "9/8"), ("-1/16", "9/8"), ("-1/16", "17/16"))


def x_route(y: Fraction) -> list[Point]:
    """Return arc from ``(1, y)`` to ``(0, y)`` below the square."""
    a = Q(1, 8) + y / 8
    return [Point(Q(1), y), Point(1 + a, y), Point(1 + a, -a), Point(-a, -a), Point(-a, y), Point(Q(0), y)]


def y_route(x: Fraction) -> list[Point]:
    """Return arc from ``(x, 1)`` to ``(x, 0)`` right of the square."""
    top = Q(3, 2) - x / 8
    bot = Q(1, 2) - x / 8
    return [Point(x, Q(1)), Point(x, top), Point(top, top), Point(top, -bot), Point(x, -bot), Point(x, Q(0))]


def _oriented(points, flip: bool) -> tuple[Point, ...]:
    return tuple(reversed(points)) if flip else tuple(points)


def _calibrate():
    """Orient O/H1 so a rightward x-pass links +1, H2 so an upward y-pass links +1."""
    probe_x = Strand("m", True, tuple(x_route(Q(1, 2))) + (Point(Q(1), Q(1, 2)),))
    probe_y = Strand("m", True, tuple(y_route(Q(1, 2))) + (Point(Q(1, 2), Q(1)),))
    flips = {}
    for label, pts, probe in (("O", _O_PTS, probe_x), ("H1", _H1_PTS, probe_x), ("H2", _H2_PTS, probe_y)):
        fixed = Strand(label, True, pts, label)
        lk = _probe_link(fixed, probe)
        flips[label] = lk < 0
    return flips


def _thread_flags(d: Diagram) -> dict:
    """Under-near/over-far flags for every mixed crossing of ``d``."""
    over = {}
    smap = d.strand_map
    for c in d.crossings:
        if c.kind != MIXED:
            continue
        moving_first = smap[c.key.strand_a].moving
        fixed_pt = c.point
        if smap[c.key.strand_a].moving:
            fixed_pt = Point(c.point.x - c.key.tau[0], c.point.y - c.key.tau[1])
        label = smap[c.key.strand_b if moving_first else c.key.strand_a].fixed
        if label == "H2":
            near = fixed_pt.y == Q(17, 16)
        else:
            near = fixed_pt.x == Q(-1, 32)
        moving_over = not near
        over[c.key] = FIRST if moving_over == moving_first else SECOND
    return over


def _probe_link(fixed: Strand, probe: Strand) -> int:
    d = Diagram(Surface.PLANE, (fixed, probe))
    over = _thread_flags(d)
    d = d.with_over(over)
    return sum(c.sign for c in d.crossings) // 2


_FLIPS = None


def _flips():
    global _FLIPS
    if _FLIPS is None:
        _FLIPS = _calibrate()
    return _FLIPS


def o_template() -> Strand:
    return Strand(FIXED_IDS["O"], True, _oriented(_O_PTS, _flips()["O"]), "O")


def h_template() -> tuple[Strand, Strand, dict]:
    """H1, H2 and the over flags of their two crossings (a positive Hopf link)."""
    h1 = Strand(FIXED_IDS["H1"], True, _oriented(_H1_PTS, _flips()["H1"]), "H1")
    h2 = Strand(FIXED_IDS["H2"], True, _oriented(_H2_PTS, _flips()["H2"]), "H2")
    d = Diagram(Surface.PLANE, (h1, h2))
    over = {}
    for c in d.crossings:
        trial = Crossing(c.key, c.point, c.t_a, c.t_b, c.dir_a, c.dir_b, c.kind, FIRST)
        over[c.key] = FIRST if trial.sign > 0 else SECOND
    return h1, h2, over


def template_strands(name: str) -> tuple[tuple[Strand, ...], dict]:
    if name == "O":
        return (o_template(),), {}
    if name == "H":
        h1, h2, over = h_template()
        return (h1, h2), over
    raise InvalidDiagram(f"unknown template {name!r}")


# --- pre-shift ---------------------------------------------------------------

def _lattice_clear(d: Diagram) -> bool:
    """No vertex or crossing on a cut line, no segment through a lattice corner."""
    px, py = d.surface.periodic
    for s in d.strands:
        for p in s.points:
            if (px and p.x.denominator == 1) or (py and p.y.denominator == 1):
                return False
        if px and py:
            for a, b in zip(s.points, s.points[1:]):
                if _through_corner(a, b):
                    return False
    for c in d.crossings:
        if (px and c.point.x.denominator == 1) or (py and c.point.y.denominator == 1):
            return False
    return not validate(d)


def _through_corner(a: Point, b: Point) -> bool:
    if a.x == b.x or a.y == b.y:
        return False
    lo, hi = sorted((a.x, b.x))
    for n in range(math.floor(lo) + 1, math.ceil(hi)):
        t = (n - a.x) / (b.x - a.x)
        y = a.y + t * (b.y - a.y)
        if y.denominator == 1:
            return True
    return False


def _shift_candidates(surface: Surface):
    yield Q(0), Q(0)
    for i in range(1, 400):
        dx = Q(i, 1009)
        yield dx, (Q(2 * i, 1013) if surface is Surface.TORUS else Q(0))


def pre_shift(d: Diagram) -> tuple[Diagram, tuple[Fraction, Fraction]]:
    """A small deterministic translation putting ``d`` in general position for cutting."""
    for dx, dy in _shift_candidates(d.surface):
        t = translate_diagram(d, dx, dy) if (dx or dy) else d
        if _lattice_clear(t):
            return t, (dx, dy)
    raise RoutingCollision("no translation puts the diagram in general position for cutting")


# --- cutting -------------------------------------------------------------------

def _cut_params(a: Point, b: Point, axes) -> list[Fraction]:
    ts = []
    for axis in axes:
        lo, hi = sorted((a[axis], b[axis]))
        for n in range(math.floor(lo) + 1, math.ceil(hi)):
            ts.append((n - a[axis]) / (b[axis] - a[axis]))
    return sorted(ts)


def _cell(p: Point, q: Point, axes) -> tuple[int, int]:
    mx, my = (p.x + q.x) / 2, (p.y + q.y) / 2
    return (math.floor(mx) if 0 in axes else 0, math.floor(my) if 1 in axes else 0)


def _route(prev_cell, cell, end_local: Point) -> list[Point]:
    """Return arc ending at ``end_local`` for a move between adjacent cells."""
    dx, dy = cell[0] - prev_cell[0], cell[1] - prev_cell[1]
    if (dx, dy) == (1, 0):
        return x_route(end_local.y)
    if (dx, dy) == (-1, 0):
        return x_route(end_local.y)[::-1]
    if (dx, dy) == (0, 1):
        return y_route(end_local.x)
    if (dx, dy) == (0, -1):
        return y_route(end_local.x)[::-1]
    raise RoutingCollision(f"strand jumps between non-adjacent cells {prev_cell} -> {cell}")


def _unwrap_strand(s: Strand, axes) -> tuple[tuple[Point, ...], list[int]]:
    """Planar polyline of one strand plus the source segment of every new segment."""
    pts = s.points
    out: list[Point] = []
    seg_src: list[int] = []
    cell = None
    for k in range(s.nseg):
        a, b = pts[k], pts[k + 1]
        ts = [Q(0)] + _cut_params(a, b, axes) + [Q(1)]
        for t0, t1 in zip(ts, ts[1:]):
            p = Point(a.x + t0 * (b.x - a.x), a.y + t0 * (b.y - a.y))
            q = Point(a.x + t1 * (b.x - a.x), a.y + t1 * (b.y - a.y))
            c = _cell(p, q, axes)
            pl = Point(p.x - c[0], p.y - c[1])
            ql = Point(q.x - c[0], q.y - c[1])
            if cell is None:
                out.append(pl)
            elif c != cell:
                route = _route(cell, c, pl)
                if out[-1] != route[0]:
                    raise RoutingCollision(f"strand {s.id}: cut point mismatch at {pl}")
                for r in route[1:]:
                    out.append(r)
                    seg_src.append(-1)
            elif out[-1] != pl:
                raise RoutingCollision(f"strand {s.id}: discontinuity at {pl}")
            out.append(ql)
            seg_src.append(k)
            cell = c
    if s.closed and out[0] != out[-1]:
        raise RoutingCollision(f"strand {s.id}: unwrapped loop does not close")
    return tuple(out), seg_src


# --- translation ---------------------------------------------------------------

def _translate(d: Diagram, template: str, axes) -> Diagram:
    check(d)
    d, _ = pre_shift(d)
    fixed, fixed_over = template_strands(template)
    ids = {s.id for s in d.strands}
    for f in fixed:
        if f.id in ids:
            raise InvalidDiagram(f"strand id {f.id} is reserved for the fixed template")
    new_strands = []
    seg_src: dict[str, list[int]] = {}
    for s in d.strands:
        pts, src = _unwrap_strand(s, axes)
        new_strands.append(Strand(s.id, s.closed, pts, None))
        seg_src[s.id] = src
    plane = Diagram(Surface.PLANE, tuple(new_strands) + fixed, {}, frozenset(), template)
    # original crossings by quotient point
    orig: dict[Point, Crossing] = {}
    for c in d.crossings:
        orig[_reduce(c.point, d.surface)] = c
    over = dict(fixed_over)
    over.update(_thread_flags(plane))
    channel = set()
    for c in plane.crossings:
        if c.kind == FIXED_FIXED or c.kind == MIXED:
            continue
        k = c.key
        src_a, src_b = seg_src[k.strand_a][k.seg_a], seg_src[k.strand_b][k.seg_b]
        if src_a < 0 and src_b < 0:
            # channel crossing: the x-return arc passes over
            over[k] = FIRST if _is_x_route(plane, k.strand_a, k.seg_a) else SECOND
            channel.add(k)
            continue
        if src_a < 0 or src_b < 0:
            raise RoutingCollision(f"return arc meets diagram content at {c.point}")
        oc = orig.get(_reduce(c.point, d.surface))
        if oc is None:
            raise RoutingCollision(f"content crossing at {c.point} has no source crossing")
        ok = oc.key
        if (k.strand_a, src_a) == (ok.strand_a, ok.seg_a) and (k.strand_b, src_b) == (ok.strand_b, ok.seg_b):
            same = True
        elif (k.strand_a, src_a) == (ok.strand_b, ok.seg_b) and (k.strand_b, src_b) == (ok.strand_a, ok.seg_a):
            same = False
        else:
            raise RoutingCollision(f"cannot match crossing {k} to a source crossing")
        if ok.strand_a == ok.strand_b and ok.seg_a == ok.seg_b:
            raise RoutingCollision(f"segment {ok.strand_a}.{ok.seg_a} crosses its own translate")
        flag = oc.over
        over[k] = flag if same else (SECOND if flag == FIRST else FIRST)
    out = Diagram(Surface.PLANE, plane.strands, over, frozenset(channel), template)
    check(out)
    return out


def _is_x_route(d: Diagram, sid: str, seg: int) -> bool:
    s = d.strand_map[sid]
    a, b = s.points[seg], s.points[seg + 1]
    # x-return arcs run below the square, y-return arcs to its right
    return a.y == b.y and a.y < 0 and min(a.x, b.x) < 0


def to_o_mixed(d: Diagram) -> Diagram:
    """Redraw an annular diagram as an O-mixed planar diagram."""
    if d.surface is not Surface.ANNULUS or d.fixed_labels:
        raise InvalidDiagram("to_o_mixed expects an annular diagram")
    return _translate(d, "O", (0,))


def to_h_mixed(d: Diagram) -> Diagram:
    """Redraw a toroidal diagram as an H-mixed planar diagram."""
    if d.surface is not Surface.TORUS or d.fixed_labels:
        raise InvalidDiagram("to_h_mixed expects a toroidal diagram")
    return _translate(d, "H", (0, 1))


def mixed_linking(d: Diagram, sid: str, label: str) -> int:
    """Linking number of a closed moving strand with a fixed component."""
    smap = d.strand_map
    total = 0
    for c in d.crossings:
        if c.kind != MIXED:
            continue
        pair = {c.key.strand_a, c.key.strand_b}
        if sid in pair and any(smap[x].fixed == label for x in pair):
            total += c.sign
    comp = Component([], (0, 0), {label: total}, 0, True)
    return linking_number(comp, label)
