"""Small 2D geometry kernel: polygons, scan-line clipping, boundary walks.

Coordinates are millimetres with y pointing up. Polygons are plain vertex
lists without a repeated closing vertex; winding does not matter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

Point = tuple[float, float]

EPS = 1e-9


def dist(a: Point, b: Point) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])


def lerp(a: Point, b: Point, t: float) -> Point:
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def polyline_length(points: list[Point]) -> float:
    return sum(dist(points[i], points[i + 1]) for i in range(len(points) - 1))


def bounds_of(points: list[Point]) -> tuple[float, float, float, float]:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return min(xs), min(ys), max(xs), max(ys)


def translate(points: list[Point], dx: float, dy: float) -> list[Point]:
    return [(x + dx, y + dy) for x, y in points]


def polygon_area(poly: list[Point]) -> float:
    """Unsigned area by the shoelace formula."""
    s = 0.0
    for i, (x0, y0) in enumerate(poly):
        x1, y1 = poly[(i + 1) % len(poly)]
        s += x0 * y1 - x1 * y0
    return abs(s) / 2.0


def polygon_edges(poly: list[Point]):
    for i in range(len(poly)):
        yield poly[i], poly[(i + 1) % len(poly)]


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    l2 = dx * dx + dy * dy
    if l2 <= EPS:
        return math.hypot(p[0] - ax, p[1] - ay)
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / l2
    t = max(0.0, min(1.0, t))
    return math.hypot(p[0] - (ax + t * dx), p[1] - (ay + t * dy))


def distance_to_boundary(p: Point, poly: list[Point]) -> float:
    return min(point_segment_distance(p, a, b) for a, b in polygon_edges(poly))


def point_in_polygon(p: Point, poly: list[Point], *, boundary: bool = True,
                     tol: float = 1e-7) -> bool:
    """Even-odd containment test; boundary points count per `boundary`."""
    if distance_to_boundary(p, poly) <= tol:
        return boundary
    x, y = p
    inside = False
    for (x0, y0), (x1, y1) in polygon_edges(poly):
        if (y0 > y) != (y1 > y):
            xc = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            if xc > x:
                inside = not inside
    return inside


def clip_segment_to_polygon(a: Point, b: Point,
                            poly: list[Point]) -> list[tuple[Point, Point]]:
    """Portions of segment a-b inside the polygon (boundary inclusive).

    Candidate split parameters come from every edge intersection (including
    collinear overlaps); each gap between candidates is then classified by
    its midpoint, which stays robust when the segment grazes a vertex.
    """
    seg_len = dist(a, b)
    if seg_len <= EPS:
        return [(a, b)] if point_in_polygon(a, poly) else []
    dx, dy = b[0] - a[0], b[1] - a[1]
    ts = {0.0, 1.0}
    for c, e in polygon_edges(poly):
        fx, fy = e[0] - c[0], e[1] - c[1]
        rx, ry = c[0] - a[0], c[1] - a[1]
        denom = dx * fy - dy * fx
        if abs(denom) > EPS:
            t = (rx * fy - ry * fx) / denom
            u = (rx * dy - ry * dx) / denom
            if -EPS <= u <= 1.0 + EPS and -EPS <= t <= 1.0 + EPS:
                ts.add(min(1.0, max(0.0, t)))
        elif abs(rx * dy - ry * dx) <= EPS * max(1.0, seg_len):
            # collinear edge: its endpoints split the segment
            l2 = dx * dx + dy * dy
            for q in (c, e):
                t = ((q[0] - a[0]) * dx + (q[1] - a[1]) * dy) / l2
                if -EPS <= t <= 1.0 + EPS:
                    ts.add(min(1.0, max(0.0, t)))
    cuts = sorted(ts)
    spans: list[tuple[float, float]] = []
    for t0, t1 in zip(cuts, cuts[1:]):
        if (t1 - t0) * seg_len <= 1e-7:
            continue
        if point_in_polygon(lerp(a, b, (t0 + t1) / 2.0), poly):
            if spans and abs(spans[-1][1] - t0) * seg_len <= 1e-7:
                spans[-1] = (spans[-1][0], t1)
            else:
                spans.append((t0, t1))
    return [(lerp(a, b, t0), lerp(a, b, t1)) for t0, t1 in spans]


def scan_rows(poly: list[Point], angle_deg: float, spacing: float, *,
              centered: bool = False) -> list[tuple[float, list[tuple[Point, Point]]]]:
    """Parallel scan lines across a polygon, clipped to it.

    Lines run along `angle_deg` and step `spacing` apart along the left
    normal. `centered=False` places the first line spacing/2 past the
    polygon's minimal extent along the normal; `centered=True` spreads
    ceil(extent/spacing) lines with equal margins at both ends (the two
    agree when the extent is a multiple of the spacing).

    Returns (normal offset, spans) per line that still intersects the
    polygon, spans ordered along the line direction.
    """
    rad = math.radians(angle_deg)
    d = (math.cos(rad), math.sin(rad))
    n = (-d[1], d[0])
    us = [px * d[0] + py * d[1] for px, py in poly]
    vs = [px * n[0] + py * n[1] for px, py in poly]
    umin, umax = min(us) - 1.0, max(us) + 1.0
    vmin, vmax = min(vs), max(vs)
    extent = vmax - vmin
    if centered:
        count = max(1, math.ceil(extent / spacing - 1e-9))
        first = vmin + (extent - (count - 1) * spacing) / 2.0
        offsets = [first + k * spacing for k in range(count)]
    else:
        offsets = []
        k = 0
        while True:
            o = vmin + spacing / 2.0 + k * spacing
            if o > vmax + 1e-9:
                break
            offsets.append(o)
            k += 1
    rows = []
    for o in offsets:
        a = (d[0] * umin + n[0] * o, d[1] * umin + n[1] * o)
        b = (d[0] * umax + n[0] * o, d[1] * umax + n[1] * o)
        spans = clip_segment_to_polygon(a, b, poly)
        if spans:
            rows.append((o, spans))
    return rows


def nearest_boundary_point(p: Point, poly: list[Point]):
    """(distance, edge index, edge parameter, point) of the closest boundary point."""
    best = None
    for i, (a, b) in enumerate(polygon_edges(poly)):
        dx, dy = b[0] - a[0], b[1] - a[1]
        l2 = dx * dx + dy * dy
        t = 0.0 if l2 <= EPS else max(0.0, min(1.0, ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / l2))
        q = (a[0] + t * dx, a[1] + t * dy)
        d = dist(p, q)
        if best is None or d < best[0]:
            best = (d, i, t, q)
    return best


def boundary_path(poly: list[Point], p_from: Point, p_to: Point,
                  tol: float = 0.05) -> list[Point] | None:
    """Shorter of the two walks along the polygon boundary between two points.

    Both points must sit within `tol` of the boundary, otherwise None.
    The returned path starts at p_from and ends at p_to.
    """
    d0, i0, t0, _ = nearest_boundary_point(p_from, poly)
    d1, i1, t1, _ = nearest_boundary_point(p_to, poly)
    if d0 > tol or d1 > tol:
        return None
    n = len(poly)
    edge_len = [dist(poly[i], poly[(i + 1) % n]) for i in range(n)]
    perim = sum(edge_len)
    if perim <= EPS:
        return None
    cum = [0.0]
    for length in edge_len[:-1]:
        cum.append(cum[-1] + length)
    s0 = cum[i0] + t0 * edge_len[i0]
    s1 = cum[i1] + t1 * edge_len[i1]
    forward = (s1 - s0) % perim

    def walk(src: Point, dst: Point, start: float, span: float) -> list[Point]:
        hops = []
        for k in range(n):
            off = (cum[k] - start) % perim
            if 1e-9 < off < span - 1e-9:
                hops.append((off, poly[k]))
        hops.sort(key=lambda h: h[0])
        path = [src] + [p for _, p in hops] + [dst]
        out: list[Point] = []
        for q in path:
            if not out or dist(out[-1], q) > 1e-9:
                out.append(q)
        return out

    if forward <= perim - forward:
        return walk(p_from, p_to, s0, forward)
    back = walk(p_to, p_from, s1, perim - forward)
    back.reverse()
    return back


def disk_polygon(center: Point, diameter: float, max_chord: float = 0.4) -> list[Point]:
    """Regular polygon approximating a circle, vertex count scaling with size."""
    r = diameter / 2.0
    n = max(12, math.ceil(math.pi * diameter / max_chord))
    cx, cy = center
    return [(cx + r * math.cos(2.0 * math.pi * k / n),
             cy + r * math.sin(2.0 * math.pi * k / n)) for k in range(n)]


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle anchored at its lower-left corner (y-up)."""

    x: float
    y: float
    w: float
    h: float

    @property
    def x1(self) -> float:
        return self.x + self.w

    @property
    def y1(self) -> float:
        return self.y + self.h

    def polygon(self) -> list[Point]:
        return [(self.x, self.y), (self.x1, self.y), (self.x1, self.y1), (self.x, self.y1)]

    def outline(self) -> list[Point]:
        """Closed outline; degenerate rectangles flatten to a bare segment."""
        if self.h <= EPS:
            return [(self.x, self.y), (self.x1, self.y)]
        if self.w <= EPS:
            return [(self.x, self.y), (self.x, self.y1)]
        return self.polygon() + [(self.x, self.y)]

    def inset(self, margin: float) -> "Rect":
        return Rect(self.x + margin, self.y + margin,
                    self.w - 2.0 * margin, self.h - 2.0 * margin)
