"""Tests for SVG scene rendering."""
import json
import math

import pytest

from ccgeom.errors import ParseError, SpaceMismatch
from ccgeom.geometry.regions import Disk, intersect_regions
from ccgeom.geometry.space_core import H2, S2, point_at_polar
from ccgeom.geometry.symmetry import is_centrally_symmetric_result
from ccgeom.main import main
from ccgeom.scene import SceneRenderer, render_intersection, render_scene
from ccgeom.schemas import SceneSpec, load_scene


def _scene(space, *elements):
    return SceneSpec.model_validate({"space": space, "elements": list(elements)})


def _disk(space, angle, radius=0.8):
    return {"space": space, "kind": "disk", "center": {"distance": 0.5, "angle": angle}, "radius": radius}


class TestRenderer:
    def test_empty_scene_has_only_the_model_circle(self):
        svg = render_scene(_scene("H2"))
        assert svg.count("<circle") == 2  # clip path and outline
        assert "<path" not in svg
        assert 'id="model"' in svg

    def test_region_and_point(self):
        svg = render_scene(_scene(
            "S2",
            {"type": "region", "region": _disk("S2", 0.0), "style": "first"},
            {"type": "point", "point": {"distance": 0.2, "angle": 1.0}},
        ))
        assert svg.count("<circle") == 4
        assert "#1f5fbf" in svg

    def test_hyperbolic_cycles_are_clipped(self):
        svg = render_scene(_scene(
            "H2",
            {"type": "cycle", "cycle": {"kind": "hypercycle", "line": {"ideal": [0.0, 2.0]}, "distance": 0.4}},
            {"type": "cycle", "cycle": {"kind": "geodesic", "line": {"ideal": [0.0, math.pi]}}},
        ))
        assert svg.count('clip-path="url(#model)"') == 2
        # a diameter is drawn as a straight line
        assert "<line" in svg

    def test_intersection_marks_centre(self):
        svg = render_scene(_scene(
            "H2",
            {"type": "intersection", "regions": [_disk("H2", 0.0), _disk("H2", math.pi)]},
        ))
        # two boundary circles, the filled lens and the centre cross
        assert svg.count("<path") == 2
        assert " A" in svg

    def test_rendering_is_deterministic(self):
        scene = _scene("E2", {"type": "intersection", "regions": [_disk("E2", 0.0), _disk("E2", 2.0)]})
        assert render_scene(scene) == render_scene(scene)

    def test_no_negative_zero(self):
        svg = render_scene(_scene("E2", {"type": "point", "point": {"distance": 0.0}}))
        assert "-0.0" not in svg

    def test_render_intersection(self):
        a = Disk(S2, point_at_polar(S2, 0.5, 0.0), 0.8)
        b = Disk(S2, point_at_polar(S2, 0.5, math.pi), 0.8)
        result = intersect_regions(a, b)
        svg = render_intersection(a, b, result, is_centrally_symmetric_result(result))
        assert svg.count("<path") == 2

    def test_polygon_path_closes(self):
        a = Disk(H2, point_at_polar(H2, 0.5, 0.0), 0.8)
        b = Disk(H2, point_at_polar(H2, 0.5, math.pi), 0.8)
        path = SceneRenderer(H2).polygon_path(intersect_regions(a, b).polygon)
        assert path.startswith("M")
        assert path.endswith("Z")
        assert path.count("A") == 4


class TestSceneFiles:
    def test_mixed_spaces_rejected(self, tmp_path):
        path = tmp_path / "scene.json"
        path.write_text(json.dumps({"space": "H2", "elements": [{"type": "region", "region": _disk("E2", 0.0)}]}))
        with pytest.raises(ParseError):
            load_scene(path)

    def test_paracycle_outside_h2(self):
        scene = _scene("E2", {"type": "cycle", "cycle": {"kind": "paracycle", "ideal_angle": 0.0, "horo_param": 0.1}})
        with pytest.raises(SpaceMismatch):
            render_scene(scene)

    def test_render_command(self, tmp_path):
        scene = tmp_path / "scene.json"
        scene.write_text(json.dumps({"space": "H2", "elements": [
            {"type": "intersection", "regions": [_disk("H2", 0.0), _disk("H2", math.pi)]},
        ]}))
        first, second = tmp_path / "one.svg", tmp_path / "two.svg"
        assert main(["render", str(scene), str(first)]) == 0
        assert main(["render", str(scene), str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
