"""Multi-knotoid diagrams: strands, crossings, signs, writhe and edits."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    DegenerateIntersection,
    InvalidDiagram,
    NoRoom,
    NotClosedOnSurface,
    UnassignedCrossing,
    UnknownCrossing,
)
from .geometry import Point, Q, Surface, cross, lerp, pt, quotient_intersections, seg_intersect

FIXED_LABELS = ("O", "H1", "H2")
FIRST, SECOND = "first", "second"

MOVING_MOVING, MIXED, FIXED_FIXED = "moving-moving", "mixed", "fixed-fixed"
ALL_MOVING, EXCLUDE_MIXED = "all-moving", "exclude-mixed"


@dataclass(frozen=True)
class Strand:
    id: str
    closed: bool
    points: tuple[Point, ...]
    fixed: str | None = None

    @property
    def moving(self) -> bool:
        return self.fixed is None

    @property
    def nseg(self) -> int:
        return len(self.points) - 1

    def homology(self) -> tuple[int, int]:
        if not self.closed:
            return (0, 0)
        d = self.points[-1] - self.points[0]
        return (int(d.x), int(d.y))

    def reversed(self) -> Strand:
        return replace(self, points=tuple(reversed(self.points)))

    def shifted(self, dx, dy) -> Strand:
        return replace(self, points=tuple(Point(p.x + dx, p.y + dy) for p in self.points))


@dataclass(frozen=True, order=True)
class CrossingKey:
    strand_a: str
    seg_a: int
    strand_b: str
    seg_b: int
    tau: tuple[int, int]

    def __str__(self) -> str:
        return f"{self.strand_a}.{self.seg_a} {self.strand_b}.{self.seg_b} {self.tau[0]} {self.tau[1]}"


def make_key(sa: str, ia: int, sb: str, ib: int, tau: tuple[int, int]) -> CrossingKey:
    """Canonical key: the lexicographically smaller branch comes first."""
    if (sa, ia) > (sb, ib):
        return CrossingKey(sb, ib, sa, ia, (-tau[0], -tau[1]))
    return CrossingKey(sa, ia, sb, ib, tau)


@dataclass(frozen=True)
class Crossing:
    key: CrossingKey
    point: Point          # in the frame of strand_a
    t_a: Fraction
    t_b: Fraction
    dir_a: tuple[Fraction, Fraction]
    dir_b: tuple[Fraction, Fraction]
    kind: str
    over: str | None
    channel: bool = False

    @property
    def sign(self) -> int:
        if self.over is None:
            raise UnassignedCrossing(str(self.key))
        o, u = (self.dir_a, self.dir_b) if self.over == FIRST else (self.dir_b, self.dir_a)
        return 1 if cross(u, o) > 0 else -1

    @property
    def smoothable(self) -> bool:
        return self.kind == MOVING_MOVING and not self.channel


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True, eq=True)
class Diagram:
    surface: Surface
    strands: tuple[Strand, ...]
    over: Mapping[CrossingKey, str] = field(default_factory=dict)
    channel: frozenset = frozenset()
    template: str | None = None

    __hash__ = None  # type: ignore[assignment]

    def strand(self, sid: str) -> Strand:
        for s in self.strands:
            if s.id == sid:
                return s
        raise KeyError(sid)

    @cached_property
    def strand_map(self) -> dict[str, Strand]:
        return {s.id: s for s in self.strands}

    @property
    def arc(self) -> Strand:
        opens = [s for s in self.strands if not s.closed and s.moving]
        if len(opens) != 1:
            raise InvalidDiagram(f"expected exactly one open moving strand, found {len(opens)}")
        return opens[0]

    @property
    def leg(self) -> Point:
        return self.arc.points[0]

    @property
    def head(self) -> Point:
        return self.arc.points[-1]

    @property
    def fixed_labels(self) -> set[str]:
        return {s.fixed for s in self.strands if s.fixed}

    @property
    def kind(self) -> str:
        """One of plane, annulus, torus, o-mixed, h-mixed."""
        labels = self.fixed_labels
        if "O" in labels:
            return "o-mixed"
        if labels & {"H1", "H2"}:
            return "h-mixed"
        return self.surface.value

    @cached_property
    def crossings(self) -> tuple[Crossing, ...]:
        return tuple(_detect(self))

    @cached_property
    def crossing_map(self) -> dict[CrossingKey, Crossing]:
        return {c.key: c for c in self.crossings}

    def with_over(self, over: Mapping[CrossingKey, str], channel: Iterable[CrossingKey] | None = None) -> Diagram:
        return Diagram(self.surface, self.strands, dict(over),
                       self.channel if channel is None else frozenset(channel), self.template)


def _check_strands(d: Diagram) -> list[Violation]:
    out = []
    ids = [s.id for s in d.strands]
    if len(set(ids)) != len(ids):
        out.append(Violation("InvalidDiagram", "duplicate strand ids"))
    opens = [s for s in d.strands if not s.closed]
    if len([s for s in opens if s.moving]) != 1:
        out.append(Violation("InvalidDiagram", "exactly one open moving strand is required"))
    for s in d.strands:
        if s.fixed is not None:
            if s.fixed not in FIXED_LABELS:
                out.append(Violation("InvalidDiagram", f"strand {s.id}: unknown fixed label {s.fixed}"))
            if not s.closed:
                out.append(Violation("InvalidDiagram", f"strand {s.id}: fixed strands must be closed"))
            if d.surface is not Surface.PLANE:
                out.append(Violation("InvalidDiagram", f"strand {s.id}: fixed strands only appear on the plane"))
        if len(s.points) < 2:
            out.append(Violation("InvalidDiagram", f"strand {s.id}: needs at least 2 points"))
            continue
        for k in range(s.nseg):
            if s.points[k] == s.points[k + 1]:
                out.append(Violation("DegenerateIntersection", f"strand {s.id}: zero-length segment {k}"))
        if s.closed:
            dlt = s.points[-1] - s.points[0]
            if dlt.x.denominator != 1 or dlt.y.denominator != 1:
                out.append(Violation("NotClosedOnSurface", f"strand {s.id}: end - start is not an integer vector"))
            else:
                px, py = d.surface.periodic
                if (dlt.x and not px) or (dlt.y and not py):
                    out.append(Violation("NotClosedOnSurface", f"strand {s.id}: class ({dlt.x},{dlt.y}) not allowed on the {d.surface.value}"))
                if dlt == (0, 0) and len(s.points) < 4:
                    out.append(Violation("InvalidDiagram", f"strand {s.id}: null-homologous loop needs at least 3 distinct points"))
        if d.surface is Surface.ANNULUS:
            for p in s.points:
                if not 0 < p.y < 1:
                    out.append(Violation("InvalidDiagram", f"strand {s.id}: point {p.x},{p.y} outside 0 < y < 1"))
                    break
    labels = d.fixed_labels
    if labels and labels not in ({"O"}, {"H1", "H2"}):
        out.append(Violation("InvalidDiagram", f"fixed labels {sorted(labels)} are not a template"))
    return out


def _detect(d: Diagram) -> list[Crossing]:
    strands = sorted(d.strands, key=lambda s: s.id)
    out = []
    for ai, sa in enumerate(strands):
        for sb in strands[ai:]:
            same = sa is sb
            pa = list(sa.points)
            pb = pa if same else list(sb.points)
            for i, j, tau, t1, t2 in quotient_intersections(pa, pb, d.surface, closed=same and sa.closed):
                key = CrossingKey(sa.id, i, sb.id, j, tau)
                p1, p2 = pa[i], pa[i + 1]
                q1, q2 = pb[j], pb[j + 1]
                nfixed = (sa.fixed is not None) + (sb.fixed is not None)
                kind = (MOVING_MOVING, MIXED, FIXED_FIXED)[nfixed]
                out.append(Crossing(
                    key=key, point=lerp(p1, p2, t1), t_a=t1, t_b=t2,
                    dir_a=(p2.x - p1.x, p2.y - p1.y), dir_b=(q2.x - q1.x, q2.y - q1.y),
                    kind=kind, over=d.over.get(key), channel=key in d.channel,
                ))
    out.sort(key=lambda c: c.key)
    return out


def _reduce(p: Point, surface: Surface) -> Point:
    px, py = surface.periodic
    return Point(p.x - math.floor(p.x) if px else p.x, p.y - math.floor(p.y) if py else p.y)


def validate(d: Diagram) -> list[Violation]:
    """Return all violations; an empty list means the diagram is usable."""
    out = _check_strands(d)
    if out:
        return out
    try:
        crossings = d.crossings
    except DegenerateIntersection as exc:
        return [Violation("DegenerateIntersection", str(exc))]
    seen: dict[Point, CrossingKey] = {}
    for c in crossings:
        q = _reduce(c.point, d.surface)
        if q in seen:
            out.append(Violation("DegenerateIntersection", f"triple point at ({q.x},{q.y}): {seen[q]} and {c.key}"))
        seen[q] = c.key
    for c in crossings:
        if c.over is None:
            out.append(Violation("UnassignedCrossing", f"crossing {c.key} has no over flag"))
        elif c.over not in (FIRST, SECOND):
            out.append(Violation("InvalidDiagram", f"crossing {c.key}: bad over flag {c.over}"))
    known = set(d.crossing_map)
    for k in d.over:
        if k not in known:
            out.append(Violation("UnknownCrossing", f"over flag for non-existent crossing {k}"))
    for k in d.channel:
        if k not in known:
            out.append(Violation("UnknownCrossing", f"channel mark on non-existent crossing {k}"))
    arc = [s for s in d.strands if not s.closed][0]
    if _reduce(arc.points[0], d.surface) == _reduce(arc.points[-1], d.surface):
        out.append(Violation("InvalidDiagram", "leg and head coincide"))
    if d.surface is not Surface.PLANE:
        out.extend(_check_cut_heights(d))
    return out


def check(d: Diagram) -> Diagram:
    """Raise the first violation as an exception; return ``d`` otherwise."""
    from . import errors

    v = validate(d)
    if v:
        cls = getattr(errors, v[0].code, InvalidDiagram)
        raise cls("; ".join(str(x) for x in v[:3]))
    return d


def wrap_passes(s: Strand, axis: int) -> list[tuple[int, Fraction, int]]:
    """Interior crossings of integer lines ``coord[axis] = k``.

    Returns ``(segment, other coordinate, direction)`` for every segment
    whose open interior crosses such a line.
    """
    out = []
    other = 1 - axis
    for k in range(s.nseg):
        a, b = s.points[k], s.points[k + 1]
        lo, hi = sorted((a[axis], b[axis]))
        for n in range(math.floor(lo) + 1, math.ceil(hi)):
            if lo < n < hi:
                t = (n - a[axis]) / (b[axis] - a[axis])
                out.append((k, a[other] + (b[other] - a[other]) * t, 1 if b[axis] > a[axis] else -1))
    return out


def _check_cut_heights(d: Diagram) -> list[Violation]:
    out = []
    axes = (0, 1) if d.surface is Surface.TORUS else (0,)
    for axis in axes:
        seen: dict[Fraction, str] = {}
        for s in d.strands:
            for seg, c, _ in wrap_passes(s, axis):
                h = c - math.floor(c) if d.surface is Surface.TORUS else c
                if h in seen:
                    out.append(Violation("RoutingCollision", f"wrap passes {seen[h]} and {s.id}.{seg} share cut coordinate {h}"))
                seen[h] = f"{s.id}.{seg}"
    return out


def detect_crossings(d: Diagram) -> list[CrossingKey]:
    return [c.key for c in d.crossings]


def crossing_sign(d: Diagram, key: CrossingKey) -> int:
    c = d.crossing_map.get(key)
    if c is None:
        raise UnknownCrossing(str(key))
    return c.sign


def writhe(d: Diagram, scope: str = ALL_MOVING) -> int:
    """Signed crossing count.

    ``all-moving`` sums every moving-moving crossing, channel crossings of
    an H-mixed translation included. ``exclude-mixed`` sums only the
    smoothable crossings.
    """
    if scope == ALL_MOVING:
        return sum(c.sign for c in d.crossings if c.kind == MOVING_MOVING)
    if scope == EXCLUDE_MIXED:
        return sum(c.sign for c in d.crossings if c.smoothable)
    raise ValueError(f"unknown writhe scope {scope!r}")


def channel_writhe(d: Diagram) -> int:
    return sum(c.sign for c in d.crossings if c.channel)


def mirror(d: Diagram) -> Diagram:
    """Toggle every over flag except the fixed-fixed template crossings."""
    flip = {FIRST: SECOND, SECOND: FIRST}
    kinds = {c.key: c.kind for c in d.crossings}
    over = {k: (v if kinds.get(k) == FIXED_FIXED else flip[v]) for k, v in d.over.items()}
    return d.with_over(over)


def reverse_strand(d: Diagram, sid: str) -> Diagram:
    """Reverse a strand's orientation, transporting over flags."""
    s = d.strand(sid)
    n = s.nseg
    rs = s.reversed()
    h = s.homology()
    shift = (-h[0], -h[1]) if s.closed else (0, 0)
    # reversed points start at old last point = old first + h; shift back by h
    rs = rs.shifted(shift[0], shift[1])
    strands = tuple(rs if x.id == sid else x for x in d.strands)
    over = {}
    channel = set()
    for k, v in d.over.items():
        sa, ia, sb, ib, tau = k.strand_a, k.seg_a, k.strand_b, k.seg_b, k.tau
        flag = v
        # A_i meets B_j + tau and the reversed copy sits at old - h = old + shift
        if sa == sid:
            ia = n - 1 - ia
            tau = (tau[0] + shift[0], tau[1] + shift[1])
        if sb == sid:
            ib = n - 1 - ib
            tau = (tau[0] - shift[0], tau[1] - shift[1])
        nk = make_key(sa, ia, sb, ib, tau)
        if (nk.strand_a, nk.seg_a) != (sa, ia):
            flag = SECOND if v == FIRST else FIRST
        over[nk] = flag
        if k in d.channel:
            channel.add(nk)
    return Diagram(d.surface, strands, over, frozenset(channel), d.template)


def _fundamental_offset(p: Point, surface: Surface) -> tuple[int, int]:
    px, py = surface.periodic
    return (math.floor(p.x) if px else 0, math.floor(p.y) if py else 0)


def translate_diagram(d: Diagram, dx, dy) -> Diagram:
    """Shift every moving strand by ``(dx, dy)``.

    On the annulus only ``dy = 0`` is allowed. Each strand is renormalized
    so that its first point lies in the fundamental domain; over flags are
    carried to the re-derived keys.
    """
    dx, dy = Q(dx), Q(dy)
    if d.surface is Surface.ANNULUS and dy != 0:
        raise InvalidDiagram("annular diagrams only translate along x")
    if d.fixed_labels:
        raise InvalidDiagram("mixed diagrams have pointwise fixed parts and are not translated")
    shifts: dict[str, tuple[int, int]] = {}
    strands = []
    for s in d.strands:
        first = Point(s.points[0].x + dx, s.points[0].y + dy)
        n = _fundamental_offset(first, d.surface)
        shifts[s.id] = n
        strands.append(s.shifted(dx - n[0], dy - n[1]))
    over = {}
    for k, v in d.over.items():
        na, nb = shifts[k.strand_a], shifts[k.strand_b]
        # A_i meets B_j + tau; after the shifts A - nA meets (B - nB) + tau + nB - nA
        over[CrossingKey(k.strand_a, k.seg_a, k.strand_b, k.seg_b,
                         (k.tau[0] - na[0] + nb[0], k.tau[1] - na[1] + nb[1]))] = v
    channel = frozenset(
        CrossingKey(k.strand_a, k.seg_a, k.strand_b, k.seg_b,
                    (k.tau[0] - shifts[k.strand_a][0] + shifts[k.strand_b][0],
                     k.tau[1] - shifts[k.strand_a][1] + shifts[k.strand_b][1]))
        for k in d.channel)
    return Diagram(d.surface, tuple(strands), over, channel, d.template)


# --- R1 kink -----------------------------------------------------------------

# local kink path in (u, v) units: u along the segment, v towards the side
_KINK = ((-2, 0), (1, 2), (0, 3), (-1, 2), (2, 0))


def remap_over(d: Diagram, new_strands: Sequence[Strand], seg_map: Mapping[str, Sequence[int]]) -> dict[CrossingKey, str]:
    """Carry over flags to a diagram whose strands were refined.

    ``seg_map[sid][new_seg]`` gives the old segment index a new segment
    came from (or -1 for brand new geometry). Crossings are matched by
    quotient point and the old segment identities of both branches.
    """
    old = {}
    for c in d.crossings:
        if c.over is None:
            continue
        q = _reduce(c.point, d.surface)
        old[(q, c.key.strand_a, c.key.seg_a, c.key.strand_b, c.key.seg_b)] = c.over
        old[(q, c.key.strand_b, c.key.seg_b, c.key.strand_a, c.key.seg_a)] = SECOND if c.over == FIRST else FIRST
    probe = Diagram(d.surface, tuple(new_strands), {}, frozenset(), d.template)
    out = {}
    for c in probe.crossings:
        k = c.key
        ia = seg_map.get(k.strand_a, None)
        ib = seg_map.get(k.strand_b, None)
        oa = ia[k.seg_a] if ia is not None else k.seg_a
        ob = ib[k.seg_b] if ib is not None else k.seg_b
        flag = old.get((_reduce(c.point, d.surface), k.strand_a, oa, k.strand_b, ob))
        if flag is not None:
            out[k] = flag
    return out


def _segment_hits_box(a, b, lo, hi) -> bool:
    """Exact Liang-Barsky test of segment a-b against the box [lo, hi]."""
    t0, t1 = Q(0), Q(1)
    for axis in (0, 1):
        da = b[axis] - a[axis]
        if da == 0:
            if not lo[axis] <= a[axis] <= hi[axis]:
                return False
            continue
        ta = (lo[axis] - a[axis]) / da
        tb = (hi[axis] - a[axis]) / da
        if ta > tb:
            ta, tb = tb, ta
        t0, t1 = max(t0, ta), min(t1, tb)
        if t0 > t1:
            return False
    return True


def segments_hitting_box(d: Diagram, lo: Point, hi: Point):
    """Yield ``(strand, seg, translate)`` for every segment lift meeting the box."""
    px, py = d.surface.periodic
    for s in d.strands:
        for k in range(s.nseg):
            a, b = s.points[k], s.points[k + 1]
            xs = range(math.floor(lo.x - max(a.x, b.x)) - 1, math.ceil(hi.x - min(a.x, b.x)) + 2) if px else (0,)
            ys = range(math.floor(lo.y - max(a.y, b.y)) - 1, math.ceil(hi.y - min(a.y, b.y)) + 2) if py else (0,)
            for tx in xs:
                for ty in ys:
                    if _segment_hits_box((a.x + tx, a.y + ty), (b.x + tx, b.y + ty), lo, hi):
                        yield s.id, k, (tx, ty)


def box_is_free(d: Diagram, lo: Point, hi: Point, skip: Iterable[tuple[str, int]] = ()) -> bool:
    """True when no strand segment (any lift) meets the closed box."""
    skip = set(skip)
    return all((sid, k) in skip for sid, k, _ in segments_hitting_box(d, lo, hi))


def insert_r1_kink(d: Diagram, strand: str, seg: int = 0, t=Q(1, 2), sign: int = 1, side: str = "left", size=None) -> Diagram:
    """Insert a one-crossing curl of the requested sign on ``strand``.

    The curl sits at parameter ``t`` of segment ``seg`` and bulges to the
    given side. Without ``size`` the curl shrinks until its neighbourhood is
    free of other arcs; an explicit ``size`` that does not fit raises
    :class:`NoRoom`.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    s = d.strand(strand)
    if not 0 <= seg < s.nseg:
        raise NoRoom(f"strand {strand} has no segment {seg}")
    t = Q(t)
    a, b = s.points[seg], s.points[seg + 1]
    dvec = (b.x - a.x, b.y - a.y)
    norm = max(abs(dvec[0]), abs(dvec[1]))
    u = (dvec[0] / norm, dvec[1] / norm)
    nv = (-u[1], u[0]) if side == "left" else (u[1], -u[0])
    P = lerp(a, b, t)
    room = min(t, 1 - t)  # in units of the segment parameter
    explicit = size is not None
    h = Q(size) if explicit else min(room * norm / 4, Q(1, 16))

    def local(h):
        return [Point(P.x + (cu * u[0] + cv * nv[0]) * h, P.y + (cu * u[1] + cv * nv[1]) * h) for cu, cv in _KINK]

    while True:
        pts = local(h)
        ok = 2 * h <= room * norm and h < Q(1, 8)
        if ok:
            xs = [p.x for p in pts]
            ys = [p.y for p in pts]
            margin = h / 2
            lo = Point(min(xs) - margin, min(ys) - margin)
            hi = Point(max(xs) + margin, max(ys) + margin)
            in_band = d.surface is not Surface.ANNULUS or (0 < lo.y and hi.y < 1)
            ok = in_band and box_is_free(d, lo, hi, skip=[(strand, seg)]) and _own_segment_clear(s, seg, lo, hi, d.surface)
        if ok:
            break
        if explicit or h < Q(1, 2 ** 24):
            raise NoRoom(f"no free disc of size {h} at {strand}.{seg}")
        h /= 2
    new_points = list(s.points[:seg + 1]) + pts + list(s.points[seg + 1:])
    seg_map = list(range(seg)) + [seg] * 6 + list(range(seg + 1, s.nseg))
    ns = replace(s, points=tuple(new_points))
    strands = tuple(ns if x.id == strand else x for x in d.strands)
    over = remap_over(d, strands, {strand: seg_map})
    probe = Diagram(d.surface, strands, over, frozenset(), d.template)
    # the single new crossing is the self-crossing of the curl
    new = [c for c in probe.crossings if c.key not in over]
    if len(new) != 1:
        raise NoRoom(f"kink at {strand}.{seg} produced {len(new)} new crossings")
    c = new[0]
    over[c.key] = FIRST
    trial = Crossing(c.key, c.point, c.t_a, c.t_b, c.dir_a, c.dir_b, c.kind, FIRST)
    if trial.sign != sign:
        over[c.key] = SECOND
    channel = _remap_channel(d, probe)
    return Diagram(d.surface, strands, over, channel, d.template)


def _own_segment_clear(s: Strand, seg: int, lo: Point, hi: Point, surface: Surface) -> bool:
    # the host segment itself may pass through the box; its lifts may not
    a, b = s.points[seg], s.points[seg + 1]
    px, py = surface.periodic
    for tx in ((-1, 0, 1) if px else (0,)):
        for ty in ((-1, 0, 1) if py else (0,)):
            if (tx, ty) == (0, 0):
                continue
            if _segment_hits_box((a.x + tx, a.y + ty), (b.x + tx, b.y + ty), lo, hi):
                return False
    return True


def _remap_channel(old: Diagram, new: Diagram) -> frozenset:
    if not old.channel:
        return frozenset()
    pts = {_reduce(old.crossing_map[k].point, old.surface) for k in old.channel if k in old.crossing_map}
    return frozenset(c.key for c in new.crossings if c.kind == MOVING_MOVING and _reduce(c.point, new.surface) in pts)
