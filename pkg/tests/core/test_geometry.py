import math
import random

import numpy as np
import pytest
from netfig_core import (
    Angle,
    Anchor,
    Arc,
    Basis,
    Center,
    ClipConsumedCurve,
    Cubic,
    DegenerateEdge,
    InvalidOption,
    Keyword,
    Length,
    Point2,
    Polyline,
    Segment,
    Settings,
    bend_curve,
    clip_curve,
    loop_curve,
    plane_polygon,
    point_at_fraction,
    project,
    projection_basis,
    vertex_label_anchor,
)
from netfig_core.geometry import curve_end, curve_length, curve_start, sample_curve
from netfig_core.settings import Coordinates

ORIGIN = Point2(0.0, 0.0)


def _random_point(rng: random.Random) -> Point2:
    return Point2(rng.uniform(-5, 5), rng.uniform(-5, 5))


def _rotate(p: Point2, center: Point2, degrees: float) -> Point2:
    c, s = math.cos(math.radians(degrees)), math.sin(math.radians(degrees))
    d = p - center
    return center + Point2(c * d.x - s * d.y, s * d.x + c * d.y)


def _mirror(points: np.ndarray, a: Point2, b: Point2) -> np.ndarray:
    """Reflect points across the line through a and b"""
    d = np.array([b.x - a.x, b.y - a.y])
    d /= np.linalg.norm(d)
    rel = points - np.array([a.x, a.y])
    along = rel @ d
    return np.array([a.x, a.y]) + 2 * np.outer(along, d) - rel


class TestProjection:
    def test_identity_at_defaults(self):
        basis = projection_basis(Settings().coordinates)
        for x, y in [(0.0, 0.0), (1.5, -2.0), (0.785, 2.375)]:
            assert project(basis, x, y) == Point2(x, y)

    def test_layer_offset(self):
        basis = projection_basis(Coordinates())
        assert project(basis, 1.0, 1.0, 2, -1.5) == Point2(1.0, -0.5)
        assert project(basis, 1.0, 1.0, 2, -1.5) - project(basis, 1.0, 1.0, 1, -1.5) == Point2(
            0.0, -1.5
        )

    def test_flat_mode_leaves_out_height(self):
        basis = projection_basis(Coordinates())
        assert project(basis, 1.0, 1.0, 3, -1.5, include_z=False) == Point2(1.0, 1.0)

    def test_distance_scale(self):
        basis = projection_basis(Coordinates())
        assert project(basis, 1.0, 2.0, distance_scale=2.0) == Point2(2.0, 4.0)

    def test_axonometric_basis(self):
        basis = projection_basis(Coordinates(x_angle=-30, x_length=0.8, y_length=1.2))
        assert basis.ex.x == pytest.approx(0.8 * math.cos(math.radians(-30)))
        assert basis.ex.y == pytest.approx(-0.4)
        assert basis.ey == Point2(0.0, 1.2)

    def test_linearity(self):
        rng = random.Random(7)
        for _ in range(200):
            basis = Basis(_random_point(rng), _random_point(rng), _random_point(rng))
            x1, y1, x2, y2 = (rng.uniform(-10, 10) for _ in range(4))
            k = rng.uniform(-3, 3)
            combined = project(basis, x1 + k * x2, y1 + k * y2)
            expected = project(basis, x1, y1) + project(basis, x2, y2) * k
            assert combined.x == pytest.approx(expected.x, abs=1e-10)
            assert combined.y == pytest.approx(expected.y, abs=1e-10)


class TestBendCurve:
    def test_reference_arc(self):
        arc = bend_curve(ORIGIN, Point2(2.0, 0.0), 45)
        assert isinstance(arc, Arc)
        assert arc.radius == pytest.approx(math.sqrt(2), abs=1e-9)
        apex, _ = point_at_fraction(arc, 0.5)
        assert apex.x == pytest.approx(1.0, abs=1e-9)
        assert apex.y == pytest.approx(math.sqrt(2) - 1, abs=1e-9)

    def test_endpoints(self):
        a, b = Point2(0.3, -1.0), Point2(2.0, 1.7)
        arc = bend_curve(a, b, -60)
        assert curve_start(arc).distance(a) == pytest.approx(0, abs=1e-9)
        assert curve_end(arc).distance(b) == pytest.approx(0, abs=1e-9)

    def test_departure_angle(self):
        _, heading = point_at_fraction(bend_curve(ORIGIN, Point2(2.0, 0.0), 30), 0.0)
        assert heading == pytest.approx(30, abs=1e-9)

    def test_zero_bend_is_segment(self):
        assert bend_curve(ORIGIN, Point2(1.0, 1.0), 0) == Segment(ORIGIN, Point2(1.0, 1.0))

    def test_mirror_property(self):
        """-bend mirrors +bend across the chord"""
        rng = random.Random(42)
        for _ in range(1000):
            a, b = _random_point(rng), _random_point(rng)
            if a.distance(b) < 1e-3:
                continue
            bend = rng.uniform(-170, 170)
            if abs(bend) < 1:
                continue
            plus = sample_curve(bend_curve(a, b, bend), 64)
            minus = sample_curve(bend_curve(a, b, -bend), 64)
            np.testing.assert_allclose(_mirror(plus, a, b), minus, atol=1e-9)

    def test_reversal(self):
        a, b = Point2(0.0, 0.0), Point2(3.0, 1.0)
        forward = sample_curve(bend_curve(a, b, 40), 64)
        backward = sample_curve(bend_curve(b, a, -40), 64)
        np.testing.assert_allclose(forward, backward[::-1], atol=1e-9)

    @pytest.mark.parametrize('bend', [180, -180, 200])
    def test_bend_range(self, bend):
        with pytest.raises(InvalidOption):
            bend_curve(ORIGIN, Point2(1.0, 0.0), bend)

    def test_coincident_endpoints(self):
        with pytest.raises(DegenerateEdge):
            bend_curve(Point2(1.0, 1.0), Point2(1.0, 1.0), 30)


class TestClipCurve:
    def test_segment(self):
        clipped = clip_curve(Segment(ORIGIN, Point2(2.0, 0.0)), 0.3, 0.2)
        assert clipped == Segment(Point2(0.3, 0.0), Point2(1.8, 0.0))

    def test_arc_endpoints_on_borders(self):
        rng = random.Random(3)
        for _ in range(200):
            a, b = _random_point(rng), _random_point(rng)
            if a.distance(b) < 1.5:
                continue
            r_a, r_b = rng.uniform(0.05, 0.5), rng.uniform(0.05, 0.5)
            bend = rng.choice((-1, 1)) * rng.uniform(5, 120)
            clipped = clip_curve(bend_curve(a, b, bend), r_a, r_b)
            assert curve_start(clipped).distance(a) == pytest.approx(r_a, abs=1e-9)
            assert curve_end(clipped).distance(b) == pytest.approx(r_b, abs=1e-9)

    def test_cubic(self):
        cubic = Cubic(ORIGIN, Point2(1.0, 2.0), Point2(2.0, 2.0), Point2(3.0, 0.0))
        clipped = clip_curve(cubic, 0.4, 0.3)
        assert curve_start(clipped).distance(ORIGIN) == pytest.approx(0.4, abs=1e-9)
        assert curve_end(clipped).distance(Point2(3.0, 0.0)) == pytest.approx(0.3, abs=1e-9)

    def test_polyline(self):
        line = Polyline((ORIGIN, Point2(0.0, 1.0), Point2(2.0, 1.0)))
        clipped = clip_curve(line, 0.25, 0.5)
        assert clipped.points == (Point2(0.0, 0.25), Point2(0.0, 1.0), Point2(1.5, 1.0))

    def test_polyline_free_end(self):
        line = Polyline((ORIGIN, Point2(2.0, 0.0)))
        assert clip_curve(line, 0.5, 0.0).points == (Point2(0.5, 0.0), Point2(2.0, 0.0))

    def test_no_radii(self):
        segment = Segment(ORIGIN, Point2(1.0, 0.0))
        assert clip_curve(segment, 0, 0) is segment

    @pytest.mark.parametrize(
        'curve',
        [
            Segment(ORIGIN, Point2(0.2, 0.0)),
            bend_curve(ORIGIN, Point2(0.2, 0.0), 30),
            Polyline((ORIGIN, Point2(0.2, 0.0))),
            Cubic(ORIGIN, Point2(0.05, 0.05), Point2(0.15, 0.05), Point2(0.2, 0.0)),
        ],
    )
    def test_consumed(self, curve):
        """Vertices 0.2 apart with radius 0.3 swallow the edge"""
        with pytest.raises(ClipConsumedCurve):
            clip_curve(curve, 0.3, 0.3)


class TestLoopCurve:
    def test_default_loop(self):
        loop = loop_curve(ORIGIN, 0.3, 1.0, 0.0, 90.0)
        half = math.sqrt(0.5)
        out_dir, in_dir = Point2(half, half), Point2(half, -half)
        assert loop.p0.distance(out_dir * 0.3) == pytest.approx(0, abs=1e-12)
        assert loop.p1.distance(out_dir * 1.3) == pytest.approx(0, abs=1e-12)
        assert loop.p2.distance(in_dir * 1.3) == pytest.approx(0, abs=1e-12)
        assert loop.p3.distance(in_dir * 0.3) == pytest.approx(0, abs=1e-12)

    def test_position_rotates_loop(self):
        loop = loop_curve(ORIGIN, 0.0, 1.0, 90.0, 90.0)
        apex, _ = point_at_fraction(loop, 0.5)
        assert apex.x == pytest.approx(0, abs=1e-6)
        assert apex.y > 0

    @pytest.mark.parametrize('alpha', [45.0, 90.0, -30.0, 135.0, 210.0])
    def test_position_is_rotation(self, alpha):
        center = Point2(1.5, -0.5)
        base = loop_curve(center, 0.3, 1.0, 0.0, 60.0)
        turned = loop_curve(center, 0.3, 1.0, alpha, 60.0)
        for p, q in zip(
            (base.p0, base.p1, base.p2, base.p3), (turned.p0, turned.p1, turned.p2, turned.p3)
        ):
            assert q.distance(_rotate(p, center, alpha)) == pytest.approx(0, abs=1e-12)

    @pytest.mark.parametrize('loopsize, loopshape', [(0, 90), (1, 0), (1, 360)])
    def test_range(self, loopsize, loopshape):
        with pytest.raises(InvalidOption):
            loop_curve(ORIGIN, 0.3, loopsize, 0, loopshape)


class TestPointAtFraction:
    def test_segment(self):
        point, heading = point_at_fraction(Segment(ORIGIN, Point2(0.0, 2.0)), 0.25)
        assert point == Point2(0.0, 0.5)
        assert heading == 90

    def test_polyline_by_length(self):
        line = Polyline((ORIGIN, Point2(1.0, 0.0), Point2(1.0, 3.0)))
        point, heading = point_at_fraction(line, 0.5)
        assert point.x == pytest.approx(1.0)
        assert point.y == pytest.approx(1.0)
        assert heading == pytest.approx(90)

    def test_cubic_by_length(self):
        cubic = Cubic(ORIGIN, Point2(1.0, 0.0), Point2(2.0, 0.0), Point2(3.0, 0.0))
        point, _ = point_at_fraction(cubic, 0.5)
        assert point.x == pytest.approx(1.5, abs=1e-6)
        assert curve_length(cubic) == pytest.approx(3.0, abs=1e-9)

    @pytest.mark.parametrize(
        'curve',
        [
            Segment(ORIGIN, Point2(3.0, 4.0)),
            bend_curve(ORIGIN, Point2(2.0, 0.0), 60),
            bend_curve(ORIGIN, Point2(2.0, 0.0), -150),
            Cubic(ORIGIN, Point2(1.0, 2.0), Point2(2.0, 2.0), Point2(3.0, 0.0)),
            loop_curve(ORIGIN, 0.3, 1.0, 0.0, 90.0),
            Polyline((ORIGIN, Point2(1.0, 0.0), Point2(1.0, 3.0))),
        ],
    )
    def test_length_grows_with_fraction(self, curve):
        """Equal steps in t cover equal, non-zero stretches of the curve"""
        steps = 40
        points = [point_at_fraction(curve, i / steps)[0] for i in range(steps + 1)]
        chords = [p.distance(q) for p, q in zip(points, points[1:])]
        assert all(chord > 0 for chord in chords)
        assert chords == pytest.approx([curve_length(curve) / steps] * steps, rel=0.05)

    @pytest.mark.parametrize('t', [-0.1, 1.5])
    def test_range(self, t):
        with pytest.raises(InvalidOption):
            point_at_fraction(Segment(ORIGIN, Point2(1.0, 0.0)), t)


class TestVertexLabelAnchor:
    @pytest.mark.parametrize(
        'position, expected_point, expected_anchor',
        [
            (Center(), Point2(1.0, 1.0), Anchor.CENTER),
            (Angle(90), Point2(1.0, 1.5), Anchor.SOUTH),
            (Angle(0), Point2(1.5, 1.0), Anchor.WEST),
            (Keyword('below'), Point2(1.0, 0.5), Anchor.NORTH),
            (Keyword('left', Length(0.5)), Point2(0.0, 1.0), Anchor.EAST),
        ],
    )
    def test_positions(self, position, expected_point, expected_anchor):
        point, anchor = vertex_label_anchor(Point2(1.0, 1.0), 0.3, position, 0.2)
        assert point.distance(expected_point) == pytest.approx(0, abs=1e-12)
        assert anchor is expected_anchor

    def test_diagonal_keyword(self):
        _, anchor = vertex_label_anchor(ORIGIN, 0.3, Keyword('above left'), 0.0)
        assert anchor is Anchor.SOUTH_EAST


class TestPlanePolygon:
    def test_corners_counter_clockwise(self):
        basis = projection_basis(Coordinates())
        outline = plane_polygon(0.0, 0.0, 5.0, 4.0, 2, basis, -1.5)
        assert outline.corners == (
            Point2(0.0, -1.5),
            Point2(5.0, -1.5),
            Point2(5.0, 2.5),
            Point2(0.0, 2.5),
        )
        assert outline.grid == ()

    def test_grid_lines(self):
        """Plane at (-.5,-.5), 3 x 2.5, grid 5mm: 6 vertical and 5 horizontal lines"""
        basis = projection_basis(Coordinates())
        outline = plane_polygon(-0.5, -0.5, 3.0, 2.5, 1, basis, -2.0, 0.5)
        vertical = [line for line in outline.grid if line[0].x == line[1].x]
        horizontal = [line for line in outline.grid if line[0].y == line[1].y]
        assert len(vertical) == 6
        assert len(horizontal) == 5
        assert [start.x for start, _ in vertical] == [-0.5, 0.0, 0.5, 1.0, 1.5, 2.0]
