"""SVG scenes of the conformal chart.

Every cycle is a Euclidean circle or line in the conformal chart, so arcs are
written as SVG elliptical-arc commands straight from their footprints. The
unit circle of the chart is drawn with radius 500, the y axis points up and
coordinates are rounded to 1e-3 so identical scenes give identical files.
"""
import io
import logging
from typing import Optional

import numpy as np
import svgwrite

from .errors import GeometryError, ParseError
from .geometry.cycles import Cycle
from .geometry.regions import Arc, ArcPolygon, IntersectionResult, Region, intersect_regions
from .geometry.space_core import TWO_PI, ModelChart, Point, SpaceKind, ideal_vector, to_chart
from .geometry.symmetry import SymmetryReport, is_centrally_symmetric_result
from .schemas import (
    CycleElement,
    IntersectionElement,
    PointElement,
    RegionElement,
    SceneSpec,
    build_region,
)

logger = logging.getLogger(__name__)

SCALE = 500.0
HALF_SIZE = 550

STYLES = {
    "default": {"stroke": "#333333", "fill": "none", "width": 1.5},
    "first": {"stroke": "#1f5fbf", "fill": "#1f5fbf", "width": 2.0},
    "second": {"stroke": "#bf3f1f", "fill": "#bf3f1f", "width": 2.0},
    "result": {"stroke": "#2f7f2f", "fill": "#8fcf8f", "width": 2.0},
    "highlight": {"stroke": "#cc00cc", "fill": "#cc00cc", "width": 2.5},
    "muted": {"stroke": "#999999", "fill": "none", "width": 1.0},
}


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def _xy(u) -> str:
    return f"{_fmt(SCALE * u[0])},{_fmt(-SCALE * u[1])}"


def _coord(v: float) -> float:
    return round(v, 3) + 0.0


class SceneRenderer:
    """Draws geometric objects of one space into an svgwrite drawing."""

    def __init__(self, space: SpaceKind):
        self.space = space
        self.chart = ModelChart.conformal(space)
        self.dwg = svgwrite.Drawing(size=(f"{2 * HALF_SIZE}px", f"{2 * HALF_SIZE}px"), profile="full", debug=False)
        self.dwg.viewbox(-HALF_SIZE, -HALF_SIZE, 2 * HALF_SIZE, 2 * HALF_SIZE)
        clip = self.dwg.defs.add(self.dwg.clipPath(id="model"))
        clip.add(self.dwg.circle(center=(0, 0), r=SCALE))
        self.dwg.add(self.dwg.circle(center=(0, 0), r=SCALE, fill="none", stroke="black", stroke_width=1))

    def _chart(self, p: Point) -> np.ndarray:
        return to_chart(self.chart, p)

    # -- arcs and polygons ---------------------------------------------------

    def _arc_piece(self, arc: Arc, t0: float, t1: float) -> str:
        footprint = arc.cycle.footprint()
        p0, pm, p1 = (self._chart(arc.point_at(t)) for t in (t0, 0.5 * (t0 + t1), t1))
        if footprint.is_line:
            return f"L{_xy(p1)}"
        chord = p1 - p0
        turn = chord[0] * (pm - p0)[1] - chord[1] * (pm - p0)[0]
        centre_side = chord[0] * (footprint.center - p0)[1] - chord[1] * (footprint.center - p0)[0]
        large = 1 if turn * centre_side > 0 else 0
        # counterclockwise in the chart is clockwise on screen once y is flipped
        sweep = 0 if turn > 0 else 1
        r = _fmt(SCALE * footprint.radius)
        return f"A{r},{r} 0 {large},{sweep} {_xy(p1)}"

    def polygon_path(self, polygon: ArcPolygon) -> str:
        parts = [f"M{_xy(self._chart(polygon.arcs[0].start_point))}"]
        for arc in polygon.arcs:
            # halves keep every SVG arc below a full turn
            parts.append(self._arc_piece(arc, 0.0, 0.5))
            parts.append(self._arc_piece(arc, 0.5, 1.0))
        parts.append("Z")
        return " ".join(parts)

    def add_polygon(self, polygon: ArcPolygon, style: str = "result"):
        st = STYLES[style]
        self.dwg.add(self.dwg.path(d=self.polygon_path(polygon), fill=st["fill"], fill_opacity=0.35,
                                   stroke=st["stroke"], stroke_width=st["width"]))

    # -- whole cycles ----------------------------------------------------------

    def add_cycle(self, cycle: Cycle, style: str = "default"):
        st = STYLES[style]
        footprint = cycle.footprint()
        extra = {"clip_path": "url(#model)"} if self.space.is_hyperbolic else {}
        if footprint.is_line:
            b = footprint.b_vec
            foot = -footprint.C * b / (2.0 * float(b @ b))
            direction = np.array([-b[1], b[0]]) / float(np.linalg.norm(b))
            start, end = foot - 3.0 * direction, foot + 3.0 * direction
            element = self.dwg.line(start=(_coord(SCALE * start[0]), _coord(-SCALE * start[1])),
                                    end=(_coord(SCALE * end[0]), _coord(-SCALE * end[1])), **extra)
        else:
            c = footprint.center
            element = self.dwg.circle(center=(_coord(SCALE * c[0]), _coord(-SCALE * c[1])),
                                      r=_coord(SCALE * footprint.radius), **extra)
        element.update({"fill": "none", "stroke": st["stroke"], "stroke_width": st["width"]})
        self.dwg.add(element)

    def add_region(self, region: Region, style: str = "default"):
        for cycle in region.boundary_components():
            self.add_cycle(cycle, style)

    # -- markers ---------------------------------------------------------------

    def add_point(self, p: Point, style: str = "highlight"):
        u = self._chart(p)
        self.dwg.add(self.dwg.circle(center=(_coord(SCALE * u[0]), _coord(-SCALE * u[1])), r=4,
                                     fill=STYLES[style]["fill"], stroke="none"))

    def add_center(self, p: Point, style: str = "highlight"):
        u = self._chart(p)
        x, y = SCALE * u[0], -SCALE * u[1]
        d = f"M{_fmt(x - 8)},{_fmt(y - 8)} L{_fmt(x + 8)},{_fmt(y + 8)} M{_fmt(x - 8)},{_fmt(y + 8)} L{_fmt(x + 8)},{_fmt(y - 8)}"
        self.dwg.add(self.dwg.path(d=d, fill="none", stroke=STYLES[style]["stroke"], stroke_width=2))

    def add_ideal_point(self, angle: float, style: str = "highlight"):
        v = ideal_vector(angle)
        self.dwg.add(self.dwg.circle(center=(_coord(SCALE * v[1]), _coord(-SCALE * v[2])), r=6,
                                     fill=STYLES[style]["fill"], stroke="none"))

    def add_result(self, result: IntersectionResult, report: Optional[SymmetryReport] = None,
                   style: str = "result"):
        if result.is_compact:
            self.add_polygon(result.polygon, style)
        elif result.ideal.component_count and self.space.is_hyperbolic:
            for angle in result.ideal.isolated_points():
                self.add_ideal_point(angle % TWO_PI)
        if report is not None and report.symmetric and report.center is not None:
            self.add_center(report.center)

    def to_string(self) -> str:
        out = io.StringIO()
        self.dwg.write(out, pretty=True, indent=2)
        return out.getvalue()


def render_scene(scene: SceneSpec) -> str:
    """SVG text for a validated scene."""
    renderer = SceneRenderer(SpaceKind.from_name(scene.space))
    try:
        for element in scene.elements:
            if isinstance(element, RegionElement):
                renderer.add_region(build_region(element.region), element.style)
            elif isinstance(element, CycleElement):
                renderer.add_cycle(element.cycle.to_cycle(renderer.space), element.style)
            elif isinstance(element, PointElement):
                renderer.add_point(element.point.to_point(renderer.space), element.style)
            elif isinstance(element, IntersectionElement):
                a, b = (build_region(spec) for spec in element.regions)
                renderer.add_region(a, "first")
                renderer.add_region(b, "second")
                result = intersect_regions(a, b)
                report = is_centrally_symmetric_result(result) if element.mark_center else None
                renderer.add_result(result, report, element.style)
    except GeometryError as exc:
        raise ParseError(f"scene element cannot be drawn: {exc}") from exc
    logger.debug("rendered %d element(s) in %s", len(scene.elements), scene.space)
    return renderer.to_string()


def render_intersection(a: Region, b: Region, result: IntersectionResult,
                        report: Optional[SymmetryReport] = None) -> str:
    renderer = SceneRenderer(a.space)
    renderer.add_region(a, "first")
    renderer.add_region(b, "second")
    renderer.add_result(result, report)
    return renderer.to_string()
