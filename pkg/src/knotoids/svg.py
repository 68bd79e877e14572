"""SVG drawings of diagrams.

Annulus and torus diagrams are drawn in the fundamental domain with
identification arrows; strands are cut into pieces per unit cell and the
under branch of every crossing gets a small gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .diagram import FIRST, Diagram
from .geometry import Point, Surface


@dataclass(frozen=True)
class SvgOptions:
    size: int = 480
    margin: int = 40
    gap: float = 0.035  # fraction of the view width blanked on under branches


def _f(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def _pieces(d: Diagram, s) -> list[list[Point]]:
    """Split a strand into runs that stay in one cell of the quotient."""
    px, py = d.surface.periodic
    if not (px or py):
        return [list(s.points)]
    runs: list[list[Point]] = []
    for a, b in zip(s.points, s.points[1:]):
        ts = {Fraction(0), Fraction(1)}
        for axis, periodic in ((0, px), (1, py)):
            if not periodic or a[axis] == b[axis]:
                continue
            lo, hi = sorted((a[axis], b[axis]))
            for n in range(math.floor(lo) + 1, math.ceil(hi)):
                ts.add((n - a[axis]) / (b[axis] - a[axis]))
        ts = sorted(ts)
        for t0, t1 in zip(ts, ts[1:]):
            p = Point(a.x + t0 * (b.x - a.x), a.y + t0 * (b.y - a.y))
            q = Point(a.x + t1 * (b.x - a.x), a.y + t1 * (b.y - a.y))
            mx, my = (p.x + q.x) / 2, (p.y + q.y) / 2
            cx = math.floor(mx) if px else 0
            cy = math.floor(my) if py else 0
            p2, q2 = Point(p.x - cx, p.y - cy), Point(q.x - cx, q.y - cy)
            if runs and runs[-1][-1] == p2:
                runs[-1].append(q2)
            else:
                runs.append([p2, q2])
    return runs


def render_svg(d: Diagram, options: SvgOptions | None = None) -> str:
    """Deterministic SVG text for ``d``."""
    o = options or SvgOptions()
    pieces = {s.id: _pieces(d, s) for s in d.strands}
    if d.surface is Surface.PLANE:
        pts = [p for runs in pieces.values() for run in runs for p in run]
        xmin = float(min(p.x for p in pts))
        xmax = float(max(p.x for p in pts))
        ymin = float(min(p.y for p in pts))
        ymax = float(max(p.y for p in pts))
    else:
        xmin, xmax, ymin, ymax = 0.0, 1.0, 0.0, 1.0
    span = max(xmax - xmin, ymax - ymin, 1e-9)
    scale = (o.size - 2 * o.margin) / span

    def sx(x) -> float:
        return o.margin + (float(x) - xmin) * scale

    def sy(y) -> float:
        return o.size - o.margin - (float(y) - ymin) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{o.size}" height="{o.size}" viewBox="0 0 {o.size} {o.size}">',
        "<style>.strand{fill:none;stroke:#222;stroke-width:2}"
        ".fixed{fill:none;stroke:#b03030;stroke-width:3;stroke-dasharray:6 3}"
        ".gap{stroke:#fff;stroke-width:7}.domain{fill:none;stroke:#999;stroke-width:1}"
        ".arrow{stroke:#555;stroke-width:1.5;fill:none}.dot{fill:#222}.label{font:12px sans-serif}</style>",
    ]
    if d.surface is not Surface.PLANE:
        out.append(f'<rect class="domain" x="{_f(sx(0))}" y="{_f(sy(1))}" width="{_f(scale)}" height="{_f(scale)}"/>')
        out.extend(_arrows(sx, sy, horizontal=True))
        if d.surface is Surface.TORUS:
            out.extend(_arrows(sx, sy, horizontal=False))
    for s in d.strands:
        cls = "fixed" if s.fixed else "strand"
        for run in pieces[s.id]:
            path = " ".join(("M" if i == 0 else "L") + f"{_f(sx(p.x))},{_f(sy(p.y))}" for i, p in enumerate(run))
            out.append(f'<path class="{cls}" data-strand="{s.id}" d="{path}"/>')
    gap = o.gap * (o.size - 2 * o.margin)
    for c in d.crossings:
        if c.over is None:
            continue
        under_dir = c.dir_b if c.over == FIRST else c.dir_a
        p = c.point
        if d.surface is not Surface.PLANE:
            px, py = d.surface.periodic
            p = Point(p.x - math.floor(p.x) if px else p.x, p.y - math.floor(p.y) if py else p.y)
        ux, uy = float(under_dir[0]), float(under_dir[1])
        n = math.hypot(ux, uy)
        ux, uy = ux / n * gap / 2, uy / n * gap / 2
        cx, cy = sx(p.x), sy(p.y)
        over_dir = c.dir_a if c.over == FIRST else c.dir_b
        ox, oy = float(over_dir[0]), float(over_dir[1])
        m = math.hypot(ox, oy)
        ox, oy = ox / m * gap / 2, oy / m * gap / 2
        out.append(f'<line class="gap" x1="{_f(cx - ux)}" y1="{_f(cy + uy)}" x2="{_f(cx + ux)}" y2="{_f(cy - uy)}"/>')
        over_cls = "fixed" if d.strand_map[c.key.strand_a if c.over == FIRST else c.key.strand_b].fixed else "strand"
        out.append(f'<line class="{over_cls}" x1="{_f(cx - ox)}" y1="{_f(cy + oy)}" x2="{_f(cx + ox)}" y2="{_f(cy - oy)}"/>')
    for name, p in (("leg", d.leg), ("head", d.head)):
        if d.surface is not Surface.PLANE:
            px, py = d.surface.periodic
            p = Point(p.x - math.floor(p.x) if px else p.x, p.y - math.floor(p.y) if py else p.y)
        out.append(f'<circle class="dot" cx="{_f(sx(p.x))}" cy="{_f(sy(p.y))}" r="4"/>')
        out.append(f'<text class="label" x="{_f(sx(p.x) + 6)}" y="{_f(sy(p.y) - 6)}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _arrows(sx, sy, horizontal: bool) -> list[str]:
    """Matching arrows on an identified pair of sides."""
    out = []
    if horizontal:
        sides = ((0, 0, 0, 1), (1, 0, 1, 1))  # x = 0 and x = 1, pointing up
    else:
        sides = ((0, 0, 1, 0), (0, 1, 1, 1))  # y = 0 and y = 1, pointing right
    for x0, y0, x1, y1 in sides:
        mx, my = sx((x0 + x1) / 2), sy((y0 + y1) / 2)
        if horizontal:
            pts = f"{_f(mx - 5)},{_f(my + 5)} {_f(mx)},{_f(my - 3)} {_f(mx + 5)},{_f(my + 5)}"
            kind = "x"
        else:
            pts = f"{_f(mx - 5)},{_f(my - 5)} {_f(mx + 3)},{_f(my)} {_f(mx - 5)},{_f(my + 5)}"
            kind = "y"
        out.append(f'<polyline class="arrow" data-identify="{kind}" points="{pts}"/>')
    return out
