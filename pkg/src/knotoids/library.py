"""Built-in example diagrams.

The K and L encodings reproduce the worked examples' bracket values; their
exact coordinates are otherwise arbitrary.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable

from .diagram import FIRST, SECOND, Diagram, Strand, make_key
from .errors import UnknownExample
from .geometry import Point, Q, Surface


def _pts(*xy) -> tuple[Point, ...]:
    return tuple(Point(Q(x), Q(y)) for x, y in xy)


def _flags(d: Diagram, flags: dict) -> Diagram:
    over = {}
    for (sa, ia, sb, ib, tau), f in flags.items():
        over[make_key(sa, ia, sb, ib, tau)] = f
    return d.with_over(over)


def _arc(surface: Surface) -> Strand:
    if surface is Surface.PLANE:
        return Strand("k", False, _pts((0, 0), (1, 0)))
    return Strand("k", False, _pts(("1/4", "1/2"), ("3/4", "1/2")))


def trivial(surface: Surface = Surface.PLANE) -> Diagram:
    return Diagram(surface, (_arc(surface),))


_KP = ((0, 0), (3, 0), (3, 3), (1, 3), (1, -1), (2, -1), (2, 1))


def _kp_on(surface: Surface, scale) -> Diagram:
    k = Strand("k", False, tuple(scale(Point(Q(x), Q(y))) for x, y in _KP))
    d = Diagram(surface, (k,))
    return _flags(d, {("k", 0, "k", 3, (0, 0)): FIRST, ("k", 0, "k", 5, (0, 0)): SECOND})


def _into_square(p: Point) -> Point:
    # x in [0,3] -> [1/10, 7/10], y in [-1,3] -> [3/20, 3/4]
    return Point(Q(1, 10) + p.x / 5, Q(3, 20) + (p.y + 1) * Q(3, 20))


def k_p() -> Diagram:
    return _kp_on(Surface.PLANE, lambda p: p)


def k_a() -> Diagram:
    return _kp_on(Surface.ANNULUS, _into_square)


def k_t() -> Diagram:
    return _kp_on(Surface.TORUS, _into_square)


def l_p() -> Diagram:
    k = Strand("k", False, _pts((2, 1), (2, -1), (4, -1), (4, 3), (0, 3), (0, 0), (3, 0)))
    c = Strand("c", True, _pts(("7/2", "1/2"), ("9/2", "1/2"), ("9/2", "3/2"), ("7/2", "3/2"), ("7/2", "1/2")))
    d = Diagram(Surface.PLANE, (k, c))
    return _flags(d, {
        ("c", 0, "k", 2, (0, 0)): FIRST,
        ("c", 2, "k", 2, (0, 0)): SECOND,
        ("k", 0, "k", 5, (0, 0)): SECOND,
    })


def l_a() -> Diagram:
    k = Strand("k", False, _pts(("1/2", "1/5"), ("1/2", "3/5"), ("13/10", "3/5"), ("13/10", "2/5"), ("17/10", "2/5")))
    c = Strand("c", True, _pts(("17/20", "11/20"), ("19/20", "11/20"), ("19/20", "13/20"), ("17/20", "13/20"), ("17/20", "11/20")))
    d = Diagram(Surface.ANNULUS, (k, c))
    return _flags(d, {
        ("c", 1, "k", 1, (0, 0)): FIRST,
        ("c", 3, "k", 1, (0, 0)): SECOND,
        ("k", 0, "k", 3, (-1, 0)): FIRST,
    })


def l_t() -> Diagram:
    k = Strand("k", False, _pts(("3/10", "3/10"), ("7/10", "3/10"), ("7/10", "11/10"), ("1/2", "11/10"), ("1/2", "29/20")))
    c = Strand("c", True, _pts((0, "1/2"), (1, "1/2")))
    d = Diagram(Surface.TORUS, (k, c))
    return _flags(d, {("c", 0, "k", 1, (0, 0)): FIRST, ("k", 0, "k", 3, (0, -1)): FIRST})


def essential_circle_annulus(height=Q(3, 10)) -> Diagram:
    """Arc at height 1/2 and an essential circle at ``height``."""
    h = Q(height)
    k = Strand("k", False, _pts(("1/4", "1/2"), ("3/4", "1/2")))
    c = Strand("c", True, (Point(Q(1, 8), h), Point(Q(9, 8), h)))
    return Diagram(Surface.ANNULUS, (k, c))


def pq_curve(p: int, q: int) -> Diagram:
    """Trivial arc plus a straight simple closed curve of class (p, q) on the torus."""
    if p == 0 and q == 0:
        raise UnknownExample("pq-curve needs a nonzero class")
    from math import gcd

    if gcd(p, q) != 1:
        raise UnknownExample(f"pq-curve({p},{q}) is not a simple closed curve")
    # a straight line through a generic base point; the arc sits off the line
    base = Point(Q(1, 7), Q(2, 9))
    c = Strand("c", True, (base, Point(base.x + p, base.y + q)))
    k = _arc_off_line(base, p, q)
    return Diagram(Surface.TORUS, (k, c))


def _arc_off_line(base: Point, p: int, q: int) -> Strand:
    # consecutive lifts of the line are 1/max(|p|,|q|) apart; stay in a thin strip between two of them
    n = max(abs(p), abs(q))
    shift = Q(1, 2 * n + 1) if q == 0 else Q(0)
    if q == 0:
        y = base.y + Q(1, 2)
        return Strand("k", False, (Point(Q(1, 4), y), Point(Q(1, 2), y)))
    # move a little across the line horizontally, along its direction
    off = Q(1, 2 * abs(q)) + shift
    start = Point(base.x + off, base.y)
    step = Q(1, 8 * n)
    return Strand("k", False, (start, Point(start.x + p * step, start.y + q * step)))


def nested_m(m: int) -> Diagram:
    """The trivial arc inside ``m`` concentric plane circles."""
    k = Strand("k", False, _pts((0, 0), (1, 0)))
    circles = []
    for i in range(1, m + 1):
        r = Q(i)
        circles.append(Strand(f"c{i}", True, (
            Point(-r, -r), Point(1 + r, -r), Point(1 + r, r), Point(-r, r), Point(-r, -r))))
    return Diagram(Surface.PLANE, (k, *circles))


# --- R2 pairs: (a) has no crossings between the two arcs, (b) pushes one over the other

def _r2_pair(surface: Surface, arc_pts, other_pts, other_closed: bool, pushed_pts, flags_b, arc_id="k", other_id="c"):
    a = Diagram(surface, (Strand(arc_id, False, _pts(*arc_pts)), Strand(other_id, other_closed, _pts(*other_pts))))
    b = Diagram(surface, (Strand(arc_id, False, _pts(*arc_pts)), Strand(other_id, other_closed, _pts(*pushed_pts))))
    keys = [c.key for c in b.crossings]
    return a, b.with_over(dict(zip(keys, flags_b)))


def r2_pair(n: int) -> tuple[Diagram, Diagram]:
    """Curated diagram pairs related by one Reidemeister II move."""
    P, A, T = Surface.PLANE, Surface.ANNULUS, Surface.TORUS
    if n == 1:
        # a circle finger pushed under the arc
        return _r2_pair(P, [(0, 0), (4, 0)], [(1, 1), (3, 1), (3, 3), (1, 3), (1, 1)], True,
                        [(1, 1), (2, 1), (2, -1), ("5/2", -1), ("5/2", 1), (3, 1), (3, 3), (1, 3), (1, 1)],
                        (FIRST, FIRST))
    if n == 2:
        # fake forbidden move: the finger carrying the head slides under a circle,
        # so the circle seems to cross the head although only an R2 move happened
        circle = Strand("c", True, _pts((3, -1), (5, -1), (5, 2), (3, 2), (3, -1)))
        a = Diagram(P, (Strand("k", False, _pts((0, 0), (2, 0), (2, "1/2"), (1, "1/2"))), circle))
        b = Diagram(P, (Strand("k", False, _pts((0, 0), (4, 0), (4, "1/2"), (1, "1/2"))), circle))
        return a, b.with_over({c.key: (FIRST if c.key.strand_a == "c" else SECOND) for c in b.crossings})
    if n == 3:
        # annulus: an essential circle pushed down over the arc
        return _r2_pair(A, [("1/4", "1/2"), ("3/4", "1/2")], [("1/8", "7/10"), ("9/8", "7/10")], True,
                        [("1/8", "7/10"), ("3/8", "7/10"), ("3/8", "3/10"), ("5/8", "3/10"), ("5/8", "7/10"), ("9/8", "7/10")],
                        (FIRST, FIRST))
    if n == 4:
        # torus: a (0,1) curve sends a finger over the arc
        return _r2_pair(T, [("1/4", "1/2"), ("1/2", "1/2")], [("3/4", "1/8"), ("3/4", "9/8")], True,
                        [("3/4", "1/8"), ("3/4", "1/4"), ("5/16", "1/4"), ("5/16", "5/8"), ("7/16", "5/8"),
                         ("7/16", "3/8"), ("3/4", "3/8"), ("3/4", "9/8")],
                        (FIRST, FIRST))
    if n == 6:
        # torus: a (1,0) curve sends a finger over an arc running vertically
        return _r2_pair(T, [("1/2", "1/10"), ("1/2", "3/4")], [("1/8", "9/10"), ("9/8", "9/10")], True,
                        [("1/8", "9/10"), ("1/4", "9/10"), ("1/4", "3/5"), ("3/4", "3/5"), ("3/4", "7/10"),
                         ("3/8", "7/10"), ("3/8", "4/5"), ("7/8", "4/5"), ("7/8", "9/10"), ("9/8", "9/10")],
                        (FIRST, FIRST))
    raise UnknownExample(f"r2-pair-{n}")


def _self_r2() -> tuple[Diagram, Diagram]:
    # the arc doubles back on itself; the b side slides one run across another
    a = Diagram(Surface.PLANE, (Strand("k", False, _pts((0, 0), (4, 0), (4, 2), (1, 2), (1, 3))),))
    b = Diagram(Surface.PLANE, (Strand("k", False, _pts((0, 0), (4, 0), (4, 2), (3, 2), (3, -1), (2, -1), (2, 2), (1, 2), (1, 3))),))
    keys = [c.key for c in b.crossings]
    return a, b.with_over({k: FIRST for k in keys})


_FIXED: dict[str, Callable[[], Diagram]] = {
    "trivial": trivial,
    "K_p": k_p,
    "K_a": k_a,
    "K_t": k_t,
    "L_p": l_p,
    "L_a": l_a,
    "L_t": l_t,
    "essential-circle-annulus": essential_circle_annulus,
    "trivial-annulus": lambda: trivial(Surface.ANNULUS),
    "trivial-torus": lambda: trivial(Surface.TORUS),
}

R2_PAIRS = (1, 2, 3, 4, 6)


def names() -> list[str]:
    out = sorted(_FIXED)
    for n in R2_PAIRS:
        out += [f"r2-pair-{n}a", f"r2-pair-{n}b"]
    out += ["r2-pair-self-a", "r2-pair-self-b", "pq-curve(p,q)", "nested-m(m)"]
    return out


def example(name: str) -> Diagram:
    """Look up a built-in example by name."""
    name = name.strip()
    if name in _FIXED:
        return _FIXED[name]()
    m = re.fullmatch(r"pq-curve\((-?\d+),\s*(-?\d+)\)", name)
    if m:
        return pq_curve(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"nested-m\((\d+)\)", name)
    if m:
        return nested_m(int(m.group(1)))
    m = re.fullmatch(r"r2-pair-(\d+)([ab])", name)
    if m and int(m.group(1)) in R2_PAIRS:
        return r2_pair(int(m.group(1)))[0 if m.group(2) == "a" else 1]
    m = re.fullmatch(r"r2-pair-self-([ab])", name)
    if m:
        return _self_r2()[0 if m.group(1) == "a" else 1]
    raise UnknownExample(name)
