"""SVG figures of one query: points, hull, query object, answer circle and touching point.

The canvas is a fixed 800 x 800 viewport.  World coordinates are scaled
uniformly so the bounding box of everything drawn fits with a 5% margin, and
the y axis points up.
"""
from __future__ import annotations

import xml.etree.ElementTree as ET
from typing import Optional, Sequence

from .convex import ConvexPolygon
from .geom import Circle, Point

SIZE = 800
MARGIN = 0.05

# styling constants
POINT_RADIUS = 1.5
POINT_FILL = "#333333"
HULL_STROKE = "#1f77b4"
QUERY_FILL = "#ff7f0e"
QUERY_OPACITY = "0.35"
QUERY_STROKE = "#d35400"
CIRCLE_STROKE = "#2ca02c"
TANGENCY_FILL = "#d62728"
TANGENCY_RADIUS = 4.0
STROKE_WIDTH = 1.5


class _Frame:
    def __init__(self, xs: Sequence[float], ys: Sequence[float]):
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        span = max(x1 - x0, y1 - y0, 1e-12)
        inner = SIZE * (1 - 2 * MARGIN)
        self.k = inner / span
        # centre the box inside the margin
        self.ox = SIZE * MARGIN + (inner - (x1 - x0) * self.k) / 2 - x0 * self.k
        self.oy = SIZE * MARGIN + (inner - (y1 - y0) * self.k) / 2 + y1 * self.k

    def x(self, v: float) -> str:
        return f"{self.ox + v * self.k:.3f}"

    def y(self, v: float) -> str:
        return f"{self.oy - v * self.k:.3f}"

    def len(self, v: float) -> str:
        return f"{v * self.k:.3f}"


def _extent(points, hull, Q, circle):
    xs, ys = [p[0] for p in points], [p[1] for p in points]
    xs += [p[0] for p in hull]
    ys += [p[1] for p in hull]
    circles = [c for c in (circle, Q if isinstance(Q, Circle) else None) if c is not None]
    for c in circles:
        xs += [c.center[0] - c.radius, c.center[0] + c.radius]
        ys += [c.center[1] - c.radius, c.center[1] + c.radius]
    if isinstance(Q, ConvexPolygon):
        xs += [v[0] for v in Q.vertices]
        ys += [v[1] for v in Q.vertices]
    elif Q is not None and not isinstance(Q, Circle):
        xs.append(Q[0])
        ys.append(Q[1])
    return xs, ys


def render(points: Sequence[Point], hull: Sequence[Point], Q, circle: Optional[Circle],
           tangency: Optional[Point], title: str = "") -> str:
    """SVG document (a string) for one query."""
    f = _Frame(*_extent(points, hull, Q, circle))
    root = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", width=str(SIZE),
                      height=str(SIZE), viewBox=f"0 0 {SIZE} {SIZE}")
    if title:
        ET.SubElement(root, "title").text = title
    ET.SubElement(root, "rect", width=str(SIZE), height=str(SIZE), fill="white")

    if isinstance(Q, ConvexPolygon):
        pts = " ".join(f"{f.x(x)},{f.y(y)}" for x, y in Q.vertices)
        tag = "polygon" if Q.m >= 3 else "polyline"
        ET.SubElement(root, tag, points=pts, fill=QUERY_FILL, stroke=QUERY_STROKE,
                      **{"fill-opacity": QUERY_OPACITY, "stroke-width": str(STROKE_WIDTH)})
    elif isinstance(Q, Circle):
        ET.SubElement(root, "circle", cx=f.x(Q.center[0]), cy=f.y(Q.center[1]), r=f.len(Q.radius),
                      fill=QUERY_FILL, stroke=QUERY_STROKE,
                      **{"fill-opacity": QUERY_OPACITY, "stroke-width": str(STROKE_WIDTH)})
    elif Q is not None:
        ET.SubElement(root, "circle", cx=f.x(Q[0]), cy=f.y(Q[1]), r=str(TANGENCY_RADIUS),
                      fill=QUERY_STROKE)

    if len(hull) >= 2:
        pts = " ".join(f"{f.x(x)},{f.y(y)}" for x, y in hull)
        ET.SubElement(root, "polygon", points=pts, fill="none", stroke=HULL_STROKE,
                      **{"stroke-width": str(STROKE_WIDTH)})
    for x, y in points:
        ET.SubElement(root, "circle", cx=f.x(x), cy=f.y(y), r=str(POINT_RADIUS), fill=POINT_FILL)
    if circle is not None:
        ET.SubElement(root, "circle", cx=f.x(circle.center[0]), cy=f.y(circle.center[1]),
                      r=f.len(circle.radius), fill="none", stroke=CIRCLE_STROKE,
                      **{"stroke-width": str(STROKE_WIDTH)})
    if tangency is not None:
        ET.SubElement(root, "circle", cx=f.x(tangency[0]), cy=f.y(tangency[1]),
                      r=str(TANGENCY_RADIUS), fill=TANGENCY_FILL)
    return ET.tostring(root, encoding="unicode", xml_declaration=False)
