"""Kauffman states: smoothing, tracing and classification of components.

Each smoothable crossing is cut out of a small box around its double
point. The strands are pre-cut into *pieces* between the cut ends
("ports"), so a state is traced combinatorially: a smoothing pairs the
four ports of each crossing, and walking piece -> connector -> piece
produces the open arc and the loops. Cover offsets are carried along the
walk, which gives each loop its homology class for free.

Nesting and inner/outer questions are parity questions for the planar,
annular and O-mixed cases; each piece and connector stores its crossing
parity with a fixed probe path from the leg, and a loop's parity is the
XOR along its walk. Toroidal and H-mixed null-homotopic loops are tested
with an explicit winding number in the universal cover.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .diagram import FIRST, Crossing, Diagram, check, segments_hitting_box
from .errors import (
    ExtendedStateEncountered,
    MixedClassificationAmbiguity,
    NonGenericRay,
    OddCrossingParity,
    TopologyCorruption,
)
from .geometry import Point, Q, Surface, cross, lerp, path_crossings, winding_number
from .laurent import normalize_class

# A-smoothing joins the outgoing over-end to the under-end lying
# counterclockwise of it; with the crossing-sign convention used here this
# makes a kink of sign +1 multiply the bracket by -A^3.
A_CLOCKWISE = False

# puncture reference for O-mixed diagrams: a point in the hole below the square
O_REF = Point(Q(-1, 16), Q(-1, 32))

LEG, HEAD = -1, -2
A_SMOOTH, B_SMOOTH = 0, 1


@dataclass(frozen=True, order=True)
class StateSummary:
    sigma: int
    k: int = 0
    m: int = 0
    n: int = 0
    l: int = 0
    torus_class: tuple[int, int] | None = None

    @property
    def loops(self) -> int:
        return self.k + self.m + self.n + self.l

    @property
    def components(self) -> int:
        """|s|: the closed loops plus the open arc."""
        return self.loops + 1

    def census(self) -> str:
        parts = [f"sigma={self.sigma}", f"k={self.k}", f"m={self.m}", f"n={self.n}", f"l={self.l}"]
        if self.torus_class is not None:
            parts.append(f"class=({self.torus_class[0]},{self.torus_class[1]})")
        return " ".join(parts)


@dataclass
class _Piece:
    strand: str
    points: list[Point]
    start: int | None          # port id, LEG, or None for a crossing-free loop
    end: int | None            # port id, HEAD, or None
    end_off: tuple[int, int]
    lk: dict[str, int] = field(default_factory=dict)
    bits: int = 0               # bit 0: probe to infinity / comb; bit 1: probe to O_REF


@dataclass
class Component:
    """A traced state component."""

    points: list[Point]
    homology: tuple[int, int]
    lk: dict[str, int]
    bits: int
    closed: bool


@dataclass
class StateGeometry:
    choice: str
    sigma: int
    arc: Component
    loops: list[Component]


def _add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def _norm_inf(d) -> Fraction:
    return max(abs(d[0]), abs(d[1]))


class StateEngine:
    """Pre-processed diagram ready for state enumeration."""

    def __init__(self, diagram: Diagram, seed: int = 0):
        check(diagram)
        self.d = diagram
        self.kind = diagram.kind
        self.surface = diagram.surface
        self.seed = seed
        self.smooth: list[Crossing] = [c for c in diagram.crossings if c.smoothable]
        self.c = len(self.smooth)
        self._radii()
        self._build_pieces()
        self._pairings()
        self._probe_bits()

    # -- surgery ------------------------------------------------------------
    def _radii(self) -> None:
        d = self.d
        others = [c.point for c in d.crossings]
        px, py = self.surface.periodic
        self.rel: list[tuple[Fraction, Fraction]] = []
        for c in self.smooth:
            P = c.point
            allowed = {(c.key.strand_a, c.key.seg_a, (0, 0)), (c.key.strand_b, c.key.seg_b, c.key.tau)}
            r = Q(1, 8)
            while True:
                ok = True
                for Qp in others:
                    if Qp is P:
                        continue
                    dx, dy = Qp.x - P.x, Qp.y - P.y
                    if px:
                        dx -= math.floor(dx + Q(1, 2))
                    if py:
                        dy -= math.floor(dy + Q(1, 2))
                    if max(abs(dx), abs(dy)) <= 2 * r:
                        ok = False
                        break
                if ok:
                    lo, hi = Point(P.x - r, P.y - r), Point(P.x + r, P.y + r)
                    for hit in segments_hitting_box(d, lo, hi):
                        if hit not in allowed:
                            ok = False
                            break
                if ok:
                    break
                r /= 2
                if r < Q(1, 2 ** 80):
                    raise TopologyCorruption(f"no surgery radius at crossing {c.key}")
            self.rel.append((r / _norm_inf(c.dir_a), r / _norm_inf(c.dir_b)))

    def port_point(self, port: int) -> Point:
        """Port position in the frame of its own branch strand."""
        ci, rest = divmod(port, 4)
        b, e = divmod(rest, 2)
        c = self.smooth[ci]
        s = 1 if e else -1
        if b == 0:
            base, dv, rel = c.point, c.dir_a, self.rel[ci][0]
        else:
            base, dv, rel = Point(c.point.x - c.key.tau[0], c.point.y - c.key.tau[1]), c.dir_b, self.rel[ci][1]
        return Point(base.x + s * rel * dv[0], base.y + s * rel * dv[1])

    # -- pieces -------------------------------------------------------------
    def _build_pieces(self) -> None:
        d = self.d
        events: dict[str, list[tuple[Fraction, int, int]]] = {s.id: [] for s in d.strands}
        for ci, c in enumerate(self.smooth):
            events[c.key.strand_a].append((c.key.seg_a + c.t_a, ci, 0))
            events[c.key.strand_b].append((c.key.seg_b + c.t_b, ci, 1))
        mixed: dict[str, list[tuple[Fraction, str, int]]] = {s.id: [] for s in d.strands}
        smap = d.strand_map
        for c in d.crossings:
            if c.kind != "mixed":
                continue
            sa, sb = smap[c.key.strand_a], smap[c.key.strand_b]
            if sa.moving:
                mixed[sa.id].append((c.key.seg_a + c.t_a, sb.fixed, c.sign))
            else:
                mixed[sb.id].append((c.key.seg_b + c.t_b, sa.fixed, c.sign))
        self.pieces: list[_Piece] = []
        self.port_piece: dict[int, tuple[int, bool]] = {}
        self.free_loops: list[_Piece] = []
        for s in d.strands:
            if not s.moving:
                continue
            evs = sorted(events[s.id])
            cuts = []
            for pos, ci, b in evs:
                rel = self.rel[ci][b]
                cuts.append((pos - rel, pos + rel, ci * 4 + b * 2))
            n = s.nseg
            h = s.homology()
            spans = []
            if not s.closed:
                prev, prev_port = Q(0), LEG
                for lo, hi, port in cuts:
                    spans.append((prev, lo, prev_port, port, (0, 0)))
                    prev, prev_port = hi, port + 1
                spans.append((prev, Q(n), prev_port, HEAD, (0, 0)))
            elif not cuts:
                spans.append((Q(0), Q(n), None, None, h))
            else:
                for (lo0, hi0, p0), (lo1, hi1, p1) in zip(cuts, cuts[1:]):
                    spans.append((hi0, lo1, p0 + 1, p1, (0, 0)))
                lo_f, _, p_f = cuts[0]
                _, hi_l, p_l = cuts[-1]
                spans.append((hi_l, lo_f + n, p_l + 1, p_f, h))
            for u, w, sp, ep, off in spans:
                pts = _between(s, u, w)
                lk: dict[str, int] = {}
                for pos, label, sign in mixed[s.id]:
                    if u < pos < w or (s.closed and u < pos + n < w):
                        lk[label] = lk.get(label, 0) + sign
                piece = _Piece(s.id, pts, sp, ep, off, lk)
                if sp is None:
                    self.free_loops.append(piece)
                    continue
                idx = len(self.pieces)
                self.pieces.append(piece)
                if sp >= 0:
                    self.port_piece[sp] = (idx, True)
                if ep is not None and ep >= 0:
                    self.port_piece[ep] = (idx, False)
                if sp == LEG:
                    self.leg_piece = idx
        if len(self.port_piece) != 4 * self.c:
            raise TopologyCorruption("port bookkeeping does not cover every crossing end")

    # -- smoothings ---------------------------------------------------------
    def _pairings(self) -> None:
        self.pairs: list[tuple[dict[int, int], dict[int, int]]] = []
        for ci, c in enumerate(self.smooth):
            ob = 0 if c.over == FIRST else 1
            ub = 1 - ob
            uo = c.dir_a if ob == 0 else c.dir_b
            uu = c.dir_b if ob == 0 else c.dir_a
            over_out, over_in = ci * 4 + ob * 2 + 1, ci * 4 + ob * 2
            under_out, under_in = ci * 4 + ub * 2 + 1, ci * 4 + ub * 2
            cw = under_out if cross(uo, uu) < 0 else under_in
            ccw = under_in if cw == under_out else under_out
            first, second = (cw, ccw) if A_CLOCKWISE else (ccw, cw)
            a = {over_out: first, first: over_out, over_in: second, second: over_in}
            b = {over_out: second, second: over_out, over_in: first, first: over_in}
            self.pairs.append((a, b))

    def connector(self, p: int, q: int) -> tuple[Point, Point]:
        """Connector endpoints in the frame of the crossing's first branch."""
        ci = p // 4
        tau = self.smooth[ci].key.tau

        def in_a(port):
            pp = self.port_point(port)
            return pp if (port % 4) < 2 else Point(pp.x + tau[0], pp.y + tau[1])

        return in_a(p), in_a(q)

    # -- probe parities -----------------------------------------------------
    def _probe_paths(self, rng: random.Random, attempt: int) -> list[list[Point]]:
        leg = self.d.leg
        if attempt == 0:
            x0 = leg.x
            ylev = Q(-1, 32)
        else:
            den = 1
            for s in self.d.strands:
                for p in s.points:
                    den = max(den, p.x.denominator, p.y.denominator)
            den = den * 4 + 1
            x0 = leg.x + Q(rng.randrange(1, den), den * rng.randrange(3, 97))
            ylev = Q(-1, 32) + Q(rng.randrange(1, den), den * rng.randrange(200, 400))
        head = [leg] if x0 == leg.x else [leg, Point(x0, leg.y)]
        if self.kind == "annulus":
            return [head + [Point(x0, Q(0))]]
        ymin = min(p.y for s in self.d.strands for p in s.points)
        paths = [head + [Point(x0, ymin - 1)]]
        if self.kind == "o-mixed":
            paths.append(head + [Point(x0, ylev), O_REF])
        return paths

    def _probe_bits(self) -> None:
        if self.kind in ("torus", "h-mixed"):
            return
        rng = random.Random(self.seed)
        surface = self.surface
        for attempt in range(9):
            try:
                paths = self._probe_paths(rng, attempt)
                piece_bits = []
                for i, pc in enumerate(self.pieces):
                    if i == self.leg_piece:
                        piece_bits.append(0)
                        continue
                    piece_bits.append(self._bits(paths, pc.points, surface))
                loop_bits = [self._bits(paths, pc.points, surface) for pc in self.free_loops]
                conn_bits = {}
                for ci in range(self.c):
                    for pairing in self.pairs[ci]:
                        for p, q in pairing.items():
                            if p < q:
                                a, b = self.connector(p, q)
                                conn_bits[(p, q)] = self._bits(paths, [a, b], surface)
                break
            except NonGenericRay:
                continue
        else:
            raise NonGenericRay("no generic probe path after 8 retries")
        for pc, bits in zip(self.pieces, piece_bits):
            pc.bits = bits
        for pc, bits in zip(self.free_loops, loop_bits):
            pc.bits = bits
        self.conn_bits = conn_bits

    @staticmethod
    def _bits(paths, pts, surface) -> int:
        out = 0
        for i, path in enumerate(paths):
            if path_crossings(path, pts, surface) % 2:
                out |= 1 << i
        return out

    # -- tracing ------------------------------------------------------------
    def choice_string(self, idx: int) -> str:
        return "".join("B" if (idx >> (self.c - 1 - i)) & 1 else "A" for i in range(self.c))

    def _walk(self, idx: int, want_points: bool):
        """Trace one state. Returns (arc, loops) as lists of walk records."""
        partner: dict[int, int] = {}
        for i in range(self.c):
            partner.update(self.pairs[i][(idx >> (self.c - 1 - i)) & 1])
        used = [False] * len(self.pieces)
        comps = []
        pieces = self.pieces
        smooth = self.smooth
        conn_bits = getattr(self, "conn_bits", {})

        def run(start_pi: int, closed: bool):
            pi, fwd, off = start_pi, True, (0, 0)
            bits = 0
            lk: dict[str, int] = {}
            pts: list[Point] = []
            while True:
                if used[pi]:
                    if closed and pi == start_pi and fwd:
                        return pts, off, lk, bits
                    raise TopologyCorruption("state walk revisited a piece")
                used[pi] = True
                pc = pieces[pi]
                bits ^= pc.bits
                sgn = 1 if fwd else -1
                for lab, v in pc.lk.items():
                    lk[lab] = lk.get(lab, 0) + sgn * v
                if want_points:
                    seq = pc.points if fwd else pc.points[::-1]
                    pts.extend(Point(p.x + off[0], p.y + off[1]) for p in seq)
                if fwd:
                    port = pc.end
                    if port == HEAD:
                        return pts, off, lk, bits
                    f = _add(off, pc.end_off)
                else:
                    port = pc.start
                    if port == LEG:
                        raise TopologyCorruption("walked backwards into the leg")
                    f = off
                q = partner[port]
                tau = smooth[port // 4].key.tau
                bp, bq = (port % 4) // 2, (q % 4) // 2
                if bp == 0 and bq == 1:
                    f = _add(f, tau)
                elif bp == 1 and bq == 0:
                    f = _sub(f, tau)
                key = (port, q) if port < q else (q, port)
                bits ^= conn_bits.get(key, 0)
                npi, at_start = self.port_piece[q]
                if at_start:
                    pi, fwd, off = npi, True, f
                else:
                    pi, fwd, off = npi, False, _sub(f, pieces[npi].end_off)

        arc = run(self.leg_piece, False)
        loops = []
        for pi in range(len(pieces)):
            if not used[pi]:
                pts, off, lk, bits = run(pi, True)
                if want_points:
                    first = pieces[pi].points[0]
                    pts.append(Point(first.x + off[0], first.y + off[1]))
                loops.append((pts, off, lk, bits))
        for pc in self.free_loops:
            loops.append((list(pc.points), pc.end_off, dict(pc.lk), pc.bits))
        return arc, loops

    def sigma(self, idx: int) -> int:
        nb = bin(idx).count("1")
        return self.c - 2 * nb

    def geometry(self, idx: int) -> StateGeometry:
        arc, loops = self._walk(idx, True)
        return StateGeometry(
            self.choice_string(idx), self.sigma(idx),
            Component(arc[0], (0, 0), arc[2], arc[3], False),
            [Component(p, off, lk, bits, True) for p, off, lk, bits in loops],
        )

    # -- classification -------------------------------------------------------
    def summary(self, idx: int) -> StateSummary:
        need_pts = self.kind in ("torus", "h-mixed")
        _, loops = self._walk(idx, need_pts)
        return self.classify([Component(p, off, lk, bits, True) for p, off, lk, bits in loops], self.sigma(idx))

    def classify(self, loops: Sequence[Component], sigma: int) -> StateSummary:
        k = m = n = l = 0
        classes: set[tuple[int, int]] = set()
        kind = self.kind
        leg = self.d.leg
        for comp in loops:
            if kind == "plane":
                if comp.bits & 1:
                    m += 1
                else:
                    k += 1
            elif kind == "annulus":
                a = comp.homology[0]
                if a == 0:
                    if comp.bits & 1:
                        m += 1
                    else:
                        k += 1
                elif abs(a) == 1:
                    if comp.bits & 1:
                        n += 1
                    else:
                        l += 1
                else:
                    raise TopologyCorruption(f"annular loop with class ({a},0) is not simple")
            elif kind == "o-mixed":
                lam = linking_number(comp, "O")
                if lam == 0:
                    if comp.bits & 1:
                        m += 1
                    else:
                        k += 1
                elif abs(lam) == 1:
                    if comp.bits & 2:
                        n += 1
                    else:
                        l += 1
                else:
                    raise ExtendedStateEncountered(f"loop links O {lam} times")
            elif kind == "torus":
                h = comp.homology
                if h == (0, 0):
                    if winding_number(comp.points, leg, Surface.TORUS):
                        m += 1
                    else:
                        k += 1
                else:
                    classes.add(normalize_class(*h))
                    l += 1
            elif kind == "h-mixed":
                h = (linking_number(comp, "H1"), linking_number(comp, "H2"))
                if h == (0, 0):
                    lift = unroll_square(comp.points)
                    if winding_number(lift, leg, Surface.TORUS):
                        m += 1
                    else:
                        k += 1
                else:
                    classes.add(normalize_class(*h))
                    l += 1
            else:
                raise TopologyCorruption(f"unknown diagram kind {kind}")
        if len(classes) > 1:
            raise ExtendedStateEncountered(f"non-parallel essential classes {sorted(classes)} in one state")
        tc = classes.pop() if classes else None
        return StateSummary(sigma, k, m, n, l, tc)

    # -- enumeration --------------------------------------------------------
    def states(self, lo: int = 0, hi: int | None = None) -> Iterator[tuple[str, StateSummary]]:
        hi = (1 << self.c) if hi is None else hi
        for idx in range(lo, hi):
            yield self.choice_string(idx), self.summary(idx)

    def census(self, lo: int = 0, hi: int | None = None) -> Counter:
        out: Counter = Counter()
        for _, s in self.states(lo, hi):
            out[s] += 1
        return out


def _pos_point(s, pos) -> Point:
    n = s.nseg
    f = math.floor(pos)
    wraps, k = divmod(f, n)
    if f == pos and k == 0 and wraps > 0:
        wraps, k = wraps - 1, n
    if k == n:
        p = s.points[n]
    else:
        p = lerp(s.points[k], s.points[k + 1], pos - f)
    if wraps:
        h = s.homology()
        p = Point(p.x + wraps * h[0], p.y + wraps * h[1])
    return p


def _vertex(s, j: int) -> Point:
    n = s.nseg
    wraps, k = divmod(j, n)
    p = s.points[k]
    if wraps:
        h = s.homology()
        p = Point(p.x + wraps * h[0], p.y + wraps * h[1])
    return p


def _between(s, u, w) -> list[Point]:
    pts = [_pos_point(s, u)]
    for j in range(math.floor(u) + 1, math.ceil(w)):
        pts.append(_vertex(s, j))
    pts.append(_pos_point(s, w))
    return pts


def linking_number(comp: Component, fixed: str) -> int:
    """Half the signed count of a loop's retained crossings with ``fixed``."""
    total = comp.lk.get(fixed, 0)
    if total % 2:
        raise OddCrossingParity(f"signed crossing sum {total} with {fixed} is odd")
    return total // 2


def unroll_square(points: Sequence[Point]) -> list[Point]:
    """Lift a planar H-mixed loop back to the torus cover.

    Excursions outside the unit square are return arcs; each one is
    replaced by the lattice jump between its exit and re-entry points.
    """

    def inside(p):
        return 0 <= p.x <= 1 and 0 <= p.y <= 1

    pts = list(points)
    if pts and pts[0] == pts[-1]:
        pts = pts[:-1]
    nn = len(pts)
    start = next((i for i in range(nn) if inside(pts[i]) and inside(pts[i - 1])), None)
    if start is None:
        raise MixedClassificationAmbiguity("loop never runs inside the fundamental square")
    pts = pts[start:] + pts[:start]
    out: list[Point] = []
    off = (0, 0)
    i = 0
    while i < nn:
        p = pts[i]
        if inside(p):
            out.append(Point(p.x + off[0], p.y + off[1]))
            i += 1
            continue
        exit_pt = pts[i - 1]
        j = i
        while j < nn and not inside(pts[j]):
            j += 1
        if j == nn:
            raise MixedClassificationAmbiguity("loop ends outside the fundamental square")
        entry = pts[j]
        jump = (exit_pt.x - entry.x, exit_pt.y - entry.y)
        if jump not in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            raise MixedClassificationAmbiguity(f"excursion from {exit_pt} to {entry} is not a return arc")
        off = (off[0] + int(jump[0]), off[1] + int(jump[1]))
        # the entry point coincides with the exit point after the jump
        i = j + 1
    out.append(out[0] + off)
    if off != (0, 0):
        raise MixedClassificationAmbiguity("null-linked loop unrolls to an essential curve")
    return out


def enumerate_states(diagram: Diagram, seed: int = 0) -> Iterator[tuple[str, StateSummary]]:
    yield from StateEngine(diagram, seed).states()


def smooth_all(diagram: Diagram, choice: str, seed: int = 0) -> StateGeometry:
    eng = StateEngine(diagram, seed)
    if len(choice) != eng.c or set(choice) - {"A", "B"}:
        raise ValueError(f"choice must be {eng.c} letters from A/B")
    idx = int(choice.replace("A", "0").replace("B", "1") or "0", 2)
    return eng.geometry(idx)


def trace_components(state: StateGeometry):
    """(open arc polyline, loop polylines, mixed annotations per loop)."""
    return state.arc.points, [c.points for c in state.loops], [dict(c.lk) for c in state.loops]


def classify_state(engine: StateEngine, state: StateGeometry) -> StateSummary:
    return engine.classify(state.loops, state.sigma)


def _census_chunk(args) -> Counter:
    diagram, seed, lo, hi = args
    return StateEngine(diagram, seed).census(lo, hi)


def census(diagram: Diagram, jobs: int = 1, seed: int = 0) -> Counter:
    """Multiset of state summaries, optionally split across processes."""
    eng = StateEngine(diagram, seed)
    total = 1 << eng.c
    if jobs <= 1 or total < 2:
        return eng.census()
    from concurrent.futures import ProcessPoolExecutor

    parts = min(jobs, total)
    bounds = [total * i // parts for i in range(parts + 1)]
    out: Counter = Counter()
    with ProcessPoolExecutor(max_workers=parts) as pool:
        for chunk in pool.map(_census_chunk, [(diagram, seed, bounds[i], bounds[i + 1]) for i in range(parts)]):
            out.update(chunk)
    return out
