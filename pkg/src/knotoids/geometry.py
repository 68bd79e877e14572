"""Exact rational geometry on the plane, the annulus and the torus.

Points live in universal-cover coordinates. The annulus identifies
``x ~ x + 1`` and keeps ``0 < y < 1``, with ``y -> 0`` the puncture side.
The torus identifies both ``x ~ x + 1`` and ``y ~ y + 1``.

A closed polyline is a point list whose last point equals the first plus
an integer vector (its homology class). For a loop on the plane the last
point repeats the first.
"""

from __future__ import annotations

import enum
import math
import random
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import DegenerateIntersection, NonGenericRay, NotClosedOnSurface, PointOnLoop

Q = Fraction


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    def __add__(self, o) -> Point:  # type: ignore[override]
        return Point(self.x + o[0], self.y + o[1])

    def __sub__(self, o) -> Point:
        return Point(self.x - o[0], self.y - o[1])

    def scale(self, k) -> Point:
        return Point(self.x * k, self.y * k)


def pt(x, y) -> Point:
    return Point(Q(x), Q(y))


class Surface(enum.Enum):
    PLANE = "plane"
    ANNULUS = "annulus"
    TORUS = "torus"

    @property
    def periodic(self) -> tuple[bool, bool]:
        return {"plane": (False, False), "annulus": (True, False), "torus": (True, True)}[self.value]


def cross(u, v) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def lerp(p: Point, q: Point, t) -> Point:
    return Point(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t)


def seg_intersect(p1: Point, p2: Point, q1: Point, q2: Point):
    """Transversal interior intersection of two segments.

    Returns ``(t1, t2, point)`` with both parameters in the open interval
    (0, 1), or ``None``. Touching at an endpoint or overlapping collinearly
    raises :class:`DegenerateIntersection`.
    """
    r = (p2[0] - p1[0], p2[1] - p1[1])
    s = (q2[0] - q1[0], q2[1] - q1[1])
    if r == (0, 0) or s == (0, 0):
        raise DegenerateIntersection("zero-length segment")
    w = (q1[0] - p1[0], q1[1] - p1[1])
    den = cross(r, s)
    if den == 0:
        if cross(w, r) != 0:
            return None
        rr = dot(r, r)
        t0 = dot(w, r) / rr
        t1 = t0 + dot(s, r) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return None
        raise DegenerateIntersection(f"collinear segments {_fmt(p1)}-{_fmt(p2)} and {_fmt(q1)}-{_fmt(q2)} touch")
    t = cross(w, s) / den
    u = cross(w, r) / den
    if 0 < t < 1 and 0 < u < 1:
        return t, u, lerp(Point(*p1), Point(*p2), t)
    if 0 <= t <= 1 and 0 <= u <= 1:
        raise DegenerateIntersection(f"segments {_fmt(p1)}-{_fmt(p2)} and {_fmt(q1)}-{_fmt(q2)} touch at an endpoint")
    return None


def _fmt(p) -> str:
    return f"({p[0]},{p[1]})"


def _bbox(points: Iterable[Point]) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    xs, ys = zip(*points)
    return min(xs), min(ys), max(xs), max(ys)


def translate_range(bbox_a, bbox_b, surface: Surface) -> tuple[range, range]:
    """Integer translates ``tau`` for which ``B + tau`` may meet ``A``."""
    px, py = surface.periodic

    def rng(lo_a, hi_a, lo_b, hi_b, periodic):
        if not periodic:
            return range(0, 1)
        return range(math.floor(lo_a - hi_b) - 1, math.ceil(hi_a - lo_b) + 2)

    return (rng(bbox_a[0], bbox_a[2], bbox_b[0], bbox_b[2], px),
            rng(bbox_a[1], bbox_a[3], bbox_b[1], bbox_b[3], py))


def _folds_back(p0, p1, p2) -> bool:
    """True when consecutive segments p0-p1 and p1-p2 overlap collinearly."""
    u = (p1[0] - p0[0], p1[1] - p0[1])
    v = (p2[0] - p1[0], p2[1] - p1[1])
    return cross(u, v) == 0 and dot(u, v) < 0


def quotient_intersections(poly_a: Sequence[Point], poly_b: Sequence[Point], surface: Surface, *, closed: bool = False):
    """All transversal double points between two polylines on the quotient.

    Each entry is ``(seg_a, seg_b, (a, b), t1, t2)`` meaning segment
    ``seg_a`` of A meets segment ``seg_b`` of B shifted by ``(a, b)``.
    Passing the same list twice finds self-intersections; adjacent
    segments (including the seam of a ``closed`` polyline) share an
    endpoint and are skipped, unless they fold back onto each other.
    """
    same = poly_a is poly_b
    na, nb = len(poly_a) - 1, len(poly_b) - 1
    boxes_a = [_bbox(poly_a[i:i + 2]) for i in range(na)]
    boxes_b = boxes_a if same else [_bbox(poly_b[j:j + 2]) for j in range(nb)]
    h = (0, 0)
    if same and closed:
        hx, hy = poly_a[-1][0] - poly_a[0][0], poly_a[-1][1] - poly_a[0][1]
        h = (int(hx), int(hy))
    px, py = surface.periodic
    out = []
    for i in range(na):
        p1, p2 = poly_a[i], poly_a[i + 1]
        ba = boxes_a[i]
        for j in range(i if same else 0, nb):
            bb = boxes_b[j]
            # translates whose shifted box meets box A; a subset of translate_range
            xr = range(math.ceil(ba[0] - bb[2]), math.floor(ba[2] - bb[0]) + 1) if px else (0,)
            if px and not xr:
                continue
            yr = range(math.ceil(ba[1] - bb[3]), math.floor(ba[3] - bb[1]) + 1) if py else (0,)
            if not px and (bb[2] < ba[0] or bb[0] > ba[2]):
                continue
            if not py and (bb[3] < ba[1] or bb[1] > ba[3]):
                continue
            for a in xr:
                for b in yr:
                    if same and i == j and (a, b) <= (0, 0):
                        continue
                    if same and _adjacent(i, j, (a, b), na, closed, h):
                        if _adjacent_degenerate(poly_a, i, j, (a, b), na, h):
                            raise DegenerateIntersection(f"segments {i} and {j} fold back")
                        continue
                    q1 = (poly_b[j][0] + a, poly_b[j][1] + b)
                    q2 = (poly_b[j + 1][0] + a, poly_b[j + 1][1] + b)
                    hit = seg_intersect(p1, p2, q1, q2)
                    if hit is not None:
                        out.append((i, j, (a, b), hit[0], hit[1]))
    out.sort(key=lambda e: (e[0], e[1], e[2]))
    return out


def _adjacent(i, j, tau, n, closed, h) -> bool:
    if j == i + 1 and tau == (0, 0):
        return True
    if closed:
        if i == 0 and j == n - 1 and tau == (-h[0], -h[1]):
            return True
        if n == 1 and i == j == 0 and tau in ((h[0], h[1]), (-h[0], -h[1])):
            return True
    return False


def _adjacent_degenerate(poly, i, j, tau, n, h) -> bool:
    if j == i + 1 and tau == (0, 0):
        return _folds_back(poly[i], poly[i + 1], poly[j + 1])
    # seam: last segment ends at poly[0] + h, then segment 0 continues
    last = (poly[n - 1], poly[n])
    nxt = (poly[0][0] + h[0], poly[0][1] + h[1]), (poly[1][0] + h[0], poly[1][1] + h[1])
    return _folds_back(last[0], last[1], nxt[1])


def homology_class(loop: Sequence[Point], surface: Surface) -> tuple[int, int]:
    """``end - start`` of a closed polyline, checked against the surface."""
    dx = loop[-1][0] - loop[0][0]
    dy = loop[-1][1] - loop[0][1]
    if Q(dx).denominator != 1 or Q(dy).denominator != 1:
        raise NotClosedOnSurface(f"end - start = ({dx},{dy}) is not an integer vector")
    a, b = int(dx), int(dy)
    px, py = surface.periodic
    if (a and not px) or (b and not py):
        raise NotClosedOnSurface(f"class ({a},{b}) is not allowed on the {surface.value}")
    return a, b


def _winding_plane(loop: Sequence[Point], p) -> int:
    """Crossing-number winding with the half-open rule; exact."""
    w = 0
    px, py = p[0], p[1]
    for k in range(len(loop) - 1):
        a, b = loop[k], loop[k + 1]
        c = (b[0] - a[0]) * (py - a[1]) - (px - a[0]) * (b[1] - a[1])
        if c == 0 and min(a[0], b[0]) <= px <= max(a[0], b[0]) and min(a[1], b[1]) <= py <= max(a[1], b[1]):
            raise PointOnLoop(f"point {_fmt(p)} lies on the loop")
        if a[1] <= py:
            if b[1] > py and c > 0:
                w += 1
        elif b[1] <= py and c < 0:
            w -= 1
    return w


def winding_number(loop: Sequence[Point], p, surface: Surface) -> int:
    """Winding number of a null-homotopic loop around ``p``.

    On the annulus and torus the loop's cover lift is tested against every
    integer translate of ``p`` inside its bounding box.
    """
    if homology_class(loop, surface) != (0, 0):
        raise NotClosedOnSurface("winding number needs a null-homotopic loop")
    x0, y0, x1, y1 = _bbox(loop)
    px, py = surface.periodic
    xs = range(math.floor(x0 - p[0]), math.ceil(x1 - p[0]) + 1) if px else range(0, 1)
    ys = range(math.floor(y0 - p[1]), math.ceil(y1 - p[1]) + 1) if py else range(0, 1)
    total = 0
    for a in xs:
        for b in ys:
            total += _winding_plane(loop, (p[0] + a, p[1] + b))
    return total


def path_crossings(path: Sequence[Point], loop: Sequence[Point], surface: Surface) -> int:
    """Count transversal crossings of an open path with all lifts of a loop.

    Raises :class:`NonGenericRay` if the path touches a loop vertex, runs
    along a loop segment, or has an endpoint on the loop.
    """
    count = 0
    try:
        for _ in quotient_intersections(list(path), list(loop), surface):
            count += 1
    except DegenerateIntersection as exc:
        raise NonGenericRay(str(exc)) from None
    return count


def ray_crossing_parity(start: Point, loop: Sequence[Point], surface: Surface, abscissa=None) -> str:
    """Parity of crossings of the path from ``start`` down to ``y = 0``.

    The path runs horizontally to ``abscissa`` (default ``start.x``) and
    then straight down. ``"odd"`` means the loop separates ``start`` from
    the puncture (inner essential); ``"even"`` means outer essential.
    """
    if surface is not Surface.ANNULUS:
        raise ValueError("ray parity is defined on the annulus only")
    x = start[0] if abscissa is None else Q(abscissa)
    path = [Point(Q(start[0]), Q(start[1]))]
    if x != start[0]:
        path.append(Point(x, Q(start[1])))
    path.append(Point(x, Q(0)))
    # the lower endpoint sits on the boundary line y = 0 which no strand reaches
    return "odd" if path_crossings(path, loop, surface) % 2 else "even"


def max_denominator(points: Iterable[Point]) -> int:
    m = 1
    for p in points:
        m = max(m, Q(p[0]).denominator, Q(p[1]).denominator)
    return m


def generic_parity(start: Point, loop: Sequence[Point], surface: Surface, rng: random.Random | None = None,
                   retries: int = 8) -> str:
    """:func:`ray_crossing_parity` with perturbed-abscissa retries."""
    try:
        return ray_crossing_parity(start, loop, surface)
    except NonGenericRay:
        pass
    rng = rng or random.Random(0)
    den = 2 * max_denominator(list(loop) + [start]) + 1
    for _ in range(retries):
        shift = Q(rng.randrange(1, den), den * rng.randrange(2, 64))
        try:
            return ray_crossing_parity(start, loop, surface, abscissa=Q(start[0]) + shift)
        except NonGenericRay:
            continue
    raise NonGenericRay(f"no generic abscissa found near x={start[0]} after {retries} retries")


def point_on_segment(p, a, b) -> bool:
    if cross((b[0] - a[0], b[1] - a[1]), (p[0] - a[0], p[1] - a[1])) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segment_near_point(p, a, b, r) -> bool:
    """True when the segment a-b comes within (squared) distance r*r of p."""
    d = (b[0] - a[0], b[1] - a[1])
    w = (p[0] - a[0], p[1] - a[1])
    dd = dot(d, d)
    t = dot(w, d) / dd
    t = min(max(t, Q(0)), Q(1))
    c = (a[0] + d[0] * t - p[0], a[1] + d[1] * t - p[1])
    return dot(c, c) < r * r
