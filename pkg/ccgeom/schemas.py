"""File formats: region files, scene files and report documents.

Positions are written in geodesic polar coordinates about the base point of
the space (south pole, hyperboloid apex or origin), angles in radians and
lengths in units of the curvature +-1 space, so a file reads the same in
every chart.
"""
import json
import math
from dataclasses import asdict
from pathlib import Path
from typing import Annotated, Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, model_validator

from .errors import GeometryError, IOFailure, ParseError, SpaceMismatch
from .experiments.report import ExperimentReport
from .geometry.cycles import Circle, Cycle, GeodesicCycle, Hypercycle, Paracycle
from .geometry.regions import CoreSet, Disk, HalfPlane, Padded, Paraball, Region
from .geometry.space_core import (
    Geodesic,
    ModelChart,
    Point,
    SpaceKind,
    base_point,
    distance,
    geodesic_from_ideal,
    geodesic_through,
    point_at_polar,
    to_chart,
)

SCHEMA_VERSION = 1

SpaceName = Literal["S2", "E2", "H2"]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PolarPoint(_Strict):
    distance: float = Field(ge=0.0)
    angle: float = 0.0

    def to_point(self, space: SpaceKind) -> Point:
        if space.is_spherical and self.distance >= math.pi:
            raise ParseError("spherical points lie at distance below pi from the base point")
        return point_at_polar(space, self.distance, self.angle)


class LineSpec(_Strict):
    """A directed line: by its ideal end points (H2 only) or through two points."""

    ideal: Optional[tuple[float, float]] = None
    through: Optional[tuple[PolarPoint, PolarPoint]] = None

    @model_validator(mode="after")
    def _one_form(self) -> "LineSpec":
        if (self.ideal is None) == (self.through is None):
            raise ValueError("give exactly one of 'ideal' or 'through'")
        return self

    def to_geodesic(self, space: SpaceKind) -> Geodesic:
        if self.ideal is not None:
            if not space.is_hyperbolic:
                raise SpaceMismatch(f"ideal end points exist in H2 only, not {space}")
            return geodesic_from_ideal(*self.ideal)
        p, q = (pt.to_point(space) for pt in self.through)
        return geodesic_through(p, q)


class DiskSpec(_Strict):
    space: SpaceName
    kind: Literal["disk"]
    center: PolarPoint
    radius: float = Field(gt=0.0)


class ParaballSpec(_Strict):
    space: Literal["H2"]
    kind: Literal["paraball"]
    ideal_angle: float
    horo_param: float = Field(gt=-1.0, lt=1.0)


class PaddedSpec(_Strict):
    space: Literal["H2"]
    kind: Literal["padded"]
    lines: list[LineSpec] = Field(min_length=1)
    lam: float = Field(gt=0.0)


class HalfPlaneSpec(_Strict):
    space: SpaceName
    kind: Literal["halfplane"]
    line: LineSpec


RegionSpec = Annotated[Union[DiskSpec, ParaballSpec, PaddedSpec, HalfPlaneSpec], Field(discriminator="kind")]
_region_adapter = TypeAdapter(RegionSpec)


def build_region(spec) -> Region:
    """Geometric region described by a validated region spec."""
    space = SpaceKind.from_name(spec.space)
    try:
        if isinstance(spec, DiskSpec):
            return Disk(space, spec.center.to_point(space), spec.radius)
        if isinstance(spec, ParaballSpec):
            return Paraball(spec.ideal_angle, spec.horo_param)
        if isinstance(spec, PaddedSpec):
            return Padded(CoreSet(tuple(line.to_geodesic(space) for line in spec.lines)), spec.lam)
        return HalfPlane(spec.line.to_geodesic(space))
    except GeometryError as exc:
        raise ParseError(f"region does not describe a valid {spec.kind}: {exc}") from exc


def parse_region(text: str):
    try:
        return _region_adapter.validate_json(text)
    except ValidationError as exc:
        raise ParseError(f"invalid region file: {exc}") from exc


def load_region(path) -> tuple[Any, Region]:
    """Read a region file; returns the validated spec and the region."""
    spec = parse_region(_read(path))
    return spec, build_region(spec)


def dump_region(spec) -> str:
    return _region_adapter.dump_json(spec, indent=2).decode()


def polar_of(p: Point) -> PolarPoint:
    """Polar coordinates of p about the base point."""
    space = p.space
    d = distance(space, base_point(space), p)
    u = to_chart(ModelChart.conformal(space), p)
    angle = math.atan2(u[1], u[0]) if d > 1e-15 else 0.0
    return PolarPoint(distance=d, angle=angle)


# -- scenes -------------------------------------------------------------------

Style = Literal["default", "first", "second", "result", "highlight", "muted"]


class CycleSpec(_Strict):
    """A cycle: circle(center, radius), geodesic(line), hypercycle(line, distance) or paracycle."""

    kind: Literal["circle", "geodesic", "hypercycle", "paracycle"]
    center: Optional[PolarPoint] = None
    radius: Optional[float] = Field(default=None, gt=0.0)
    line: Optional[LineSpec] = None
    distance: Optional[float] = Field(default=None, gt=0.0)
    side: Literal[1, -1] = 1
    ideal_angle: Optional[float] = None
    horo_param: Optional[float] = Field(default=None, gt=-1.0, lt=1.0)

    @model_validator(mode="after")
    def _fields_for_kind(self) -> "CycleSpec":
        needed = {
            "circle": ("center", "radius"),
            "geodesic": ("line",),
            "hypercycle": ("line", "distance"),
            "paracycle": ("ideal_angle", "horo_param"),
        }[self.kind]
        missing = [name for name in needed if getattr(self, name) is None]
        if missing:
            raise ValueError(f"{self.kind} needs {', '.join(missing)}")
        return self

    def to_cycle(self, space: SpaceKind) -> Cycle:
        if self.kind == "circle":
            return Circle(space, self.center.to_point(space), self.radius)
        if self.kind == "geodesic":
            return GeodesicCycle(self.line.to_geodesic(space))
        if not space.is_hyperbolic:
            raise SpaceMismatch(f"{self.kind}s exist in H2 only")
        if self.kind == "hypercycle":
            return Hypercycle(self.line.to_geodesic(space), self.distance, self.side)
        return Paracycle(self.ideal_angle, self.horo_param)


class RegionElement(_Strict):
    type: Literal["region"]
    region: RegionSpec
    style: Style = "default"


class CycleElement(_Strict):
    type: Literal["cycle"]
    cycle: CycleSpec
    style: Style = "default"


class PointElement(_Strict):
    type: Literal["point"]
    point: PolarPoint
    style: Style = "highlight"


class IntersectionElement(_Strict):
    """Intersection of two regions, filled, with its centre marked when symmetric."""

    type: Literal["intersection"]
    regions: tuple[RegionSpec, RegionSpec]
    style: Style = "result"
    mark_center: bool = True


Element = Annotated[Union[RegionElement, CycleElement, PointElement, IntersectionElement],
                    Field(discriminator="type")]


class SceneSpec(_Strict):
    space: SpaceName
    chart: Literal["conformal"] = "conformal"
    elements: list[Element] = Field(default_factory=list)

    @model_validator(mode="after")
    def _one_space(self) -> "SceneSpec":
        specs = []
        for element in self.elements:
            if isinstance(element, RegionElement):
                specs.append(element.region)
            elif isinstance(element, IntersectionElement):
                specs.extend(element.regions)
        for spec in specs:
            if spec.space != self.space:
                raise ValueError(f"{spec.kind} in {spec.space} placed in a {self.space} scene")
        return self


def load_scene(path) -> SceneSpec:
    try:
        return SceneSpec.model_validate_json(_read(path))
    except ValidationError as exc:
        raise ParseError(f"invalid scene file: {exc}") from exc


# -- reports ------------------------------------------------------------------


class FailureEntry(BaseModel):
    seed: int
    description: str
    witness: dict[str, Any] = Field(default_factory=dict)


class ExperimentEntry(BaseModel):
    name: str
    passed: bool
    trials_run: int
    skipped: int = 0
    failures: list[FailureEntry] = Field(default_factory=list)
    metrics: dict[str, Any] = Field(default_factory=dict)
    notes: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _passed_iff_clean(self) -> "ExperimentEntry":
        if self.passed == bool(self.failures):
            raise ValueError("passed must hold exactly when there are no failures")
        return self


class ReportDocument(BaseModel):
    """Self-contained suite report; `config` holds everything needed to rerun it."""

    schema_version: int = SCHEMA_VERSION
    tool_version: str
    master_seed: int
    config: dict[str, Any]
    tolerances: dict[str, float]
    experiments: list[ExperimentEntry]
    passed: bool
    timings: Optional[dict[str, float]] = None

    @classmethod
    def from_reports(cls, reports: list[ExperimentReport], config, tool_version: str,
                     timings: Optional[dict] = None) -> "ReportDocument":
        settings = asdict(config)
        tolerances = settings.pop("tolerances")
        for key in ("verbose", "seed"):
            settings.pop(key)
        settings["spaces"] = list(settings["spaces"])
        return cls(
            tool_version=tool_version,
            master_seed=config.seed,
            config=dict(sorted(settings.items())),
            tolerances=dict(sorted(tolerances.items())),
            experiments=[ExperimentEntry(**r.to_dict()) for r in reports],
            passed=all(r.passed for r in reports),
            timings=timings,
        )

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True) + "\n"


class IntersectionDocument(BaseModel):
    """Result of `ccgeom intersect`, as written by --report."""

    schema_version: int = SCHEMA_VERSION
    tool_version: str
    space: SpaceName
    classification: str
    arc_count: Optional[int] = None
    ideal_points: Optional[str] = None
    verdict: str
    center: Optional[PolarPoint] = None
    residual: Optional[float] = None
    certificate: str = ""

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True) + "\n"


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise IOFailure(f"cannot read {path}: {exc}") from exc


def write_text(path, text: str):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise IOFailure(f"cannot write {path}: {exc}") from exc


def validate_report(text: str) -> ReportDocument:
    """Parse a written report back; raises ParseError when it does not match the schema."""
    try:
        return ReportDocument.model_validate(json.loads(text))
    except (ValidationError, json.JSONDecodeError) as exc:
        raise ParseError(f"invalid report document: {exc}") from exc
