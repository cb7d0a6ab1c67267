"""
Screen-space geometry

All measures are centimeters in a y-up screen plane. Angles are degrees, counted
counter-clockwise from the +x axis.
"""

import math
from dataclasses import dataclass

import numpy as np
from loguru import logger

from .errors import ClipConsumedCurve, DegenerateEdge, InvalidOption
from .model import Angle, Center, Keyword, LabelPosition
from .option_types import COMPASS, POSITION_KEYWORDS, Anchor
from .settings import Coordinates

# Samples of the arc-length tables used for cubic curves
_TABLE_SAMPLES = 4097
_BISECT_STEPS = 64


@dataclass(frozen=True, slots=True)
class Point2:
    x: float
    y: float

    def __add__(self, other: 'Point2') -> 'Point2':
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: 'Point2') -> 'Point2':
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> 'Point2':
        return Point2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self) -> 'Point2':
        return Point2(-self.x, -self.y)

    @property
    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def angle(self) -> float:
        return math.degrees(math.atan2(self.y, self.x))

    def distance(self, other: 'Point2') -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


_QUARTERS = (Point2(1.0, 0.0), Point2(0.0, 1.0), Point2(-1.0, 0.0), Point2(0.0, -1.0))


def unit_vector(degrees: float) -> Point2:
    # Multiples of 90 degrees are exact
    quarter, rest = divmod(degrees, 90.0)
    if rest == 0:
        return _QUARTERS[int(quarter) % 4]
    rad = math.radians(degrees)
    return Point2(math.cos(rad), math.sin(rad))


@dataclass(frozen=True, slots=True)
class Basis:
    ex: Point2
    ey: Point2
    ez: Point2


@dataclass(frozen=True, slots=True)
class Segment:
    a: Point2
    b: Point2


@dataclass(frozen=True, slots=True)
class Arc:
    center: Point2
    radius: float
    start_angle: float
    sweep: float  # signed, positive is counter-clockwise

    @property
    def end_angle(self) -> float:
        return self.start_angle + self.sweep

    @property
    def sweep_direction(self) -> int:
        return 1 if self.sweep > 0 else -1

    def point(self, degrees: float) -> Point2:
        return self.center + unit_vector(degrees) * self.radius


@dataclass(frozen=True, slots=True)
class Cubic:
    p0: Point2
    p1: Point2
    p2: Point2
    p3: Point2


@dataclass(frozen=True, slots=True)
class Polyline:
    points: tuple[Point2, ...]

    def __post_init__(self):
        if len(self.points) < 2:
            raise InvalidOption('path', 'a polyline needs at least two points')


type Curve = Segment | Arc | Cubic | Polyline


def projection_basis(coordinates: Coordinates) -> Basis:
    """Screen vectors of the three model axes"""
    return Basis(
        ex=unit_vector(coordinates.x_angle) * coordinates.x_length,
        ey=unit_vector(coordinates.y_angle) * coordinates.y_length,
        ez=unit_vector(coordinates.z_angle) * coordinates.z_length,
    )


def project(
    basis: Basis,
    x: float,
    y: float,
    layer: int = 1,
    layer_distance: float = 0.0,
    distance_scale: float = 1.0,
    *,
    include_z: bool = True,
) -> Point2:
    """
    Screen position of a model point.

    The point sits at height ``layer_distance * (layer - 1)``; the height term is left
    out when ``include_z`` is false.
    """
    result = basis.ex * (distance_scale * x) + basis.ey * (distance_scale * y)
    if include_z:
        result = result + basis.ez * (layer_distance * (layer - 1))
    return result


def bend_curve(a: Point2, b: Point2, bend: float) -> Segment | Arc:
    """
    Circular arc from ``a`` to ``b`` leaving at ``bend`` degrees to the chord.

    Positive bends turn counter-clockwise; the arc enters ``b`` at the same angle.
    """
    if a == b:
        raise DegenerateEdge(f'Edge from {a} to itself cannot bend')
    if not abs(bend) < 180:
        raise InvalidOption('bend', f'{bend} must lie strictly between -180 and 180')
    if bend == 0:
        return Segment(a, b)

    chord = b - a
    length = chord.norm
    normal = Point2(-chord.y, chord.x) * (1 / length)
    theta = math.radians(bend)
    mid = (a + b) * 0.5
    center = mid - normal * (length * math.cos(theta) / (2 * math.sin(theta)))
    radius = length / (2 * abs(math.sin(theta)))
    return Arc(center, radius, (a - center).angle, -2 * bend)


def loop_curve(
    center: Point2, radius: float, loopsize: float, loopposition: float, loopshape: float
) -> Cubic:
    """
    Self-loop as a cubic through the vertex border.

    It leaves at ``loopposition + loopshape/2`` and returns at ``loopposition - loopshape/2``.
    """
    if not 0 < loopshape < 360:
        raise InvalidOption('loopshape', f'{loopshape} outside (0, 360)')
    if not loopsize > 0:
        raise InvalidOption('loopsize', f'{loopsize} must be positive')

    out_dir = unit_vector(loopposition + loopshape / 2)
    in_dir = unit_vector(loopposition - loopshape / 2)
    outer = radius + loopsize
    return Cubic(
        center + out_dir * radius,
        center + out_dir * outer,
        center + in_dir * outer,
        center + in_dir * radius,
    )


def curve_start(curve: Curve) -> Point2:
    match curve:
        case Segment(a, _):
            return a
        case Arc():
            return curve.point(curve.start_angle)
        case Cubic(p0, _, _, _):
            return p0
        case Polyline(points):
            return points[0]
    raise TypeError(f'Unsupported curve: {curve!r}')


def curve_end(curve: Curve) -> Point2:
    match curve:
        case Segment(_, b):
            return b
        case Arc():
            return curve.point(curve.end_angle)
        case Cubic(_, _, _, p3):
            return p3
        case Polyline(points):
            return points[-1]
    raise TypeError(f'Unsupported curve: {curve!r}')


def _cubic_points(curve: Cubic, ts: np.ndarray) -> np.ndarray:
    ctrl = np.array([[p.x, p.y] for p in (curve.p0, curve.p1, curve.p2, curve.p3)])
    t = ts[:, None]
    s = 1 - t
    return s**3 * ctrl[0] + 3 * s**2 * t * ctrl[1] + 3 * s * t**2 * ctrl[2] + t**3 * ctrl[3]


def _cubic_at(curve: Cubic, t: float) -> Point2:
    x, y = _cubic_points(curve, np.array([t]))[0]
    return Point2(float(x), float(y))


def _cubic_tangent(curve: Cubic, t: float) -> Point2:
    s = 1 - t
    d = (
        (curve.p1 - curve.p0) * (3 * s * s)
        + (curve.p2 - curve.p1) * (6 * s * t)
        + (curve.p3 - curve.p2) * (3 * t * t)
    )
    if d.norm == 0:
        return curve.p3 - curve.p0
    return d


def _split_cubic(curve: Cubic, t: float) -> tuple[Cubic, Cubic]:
    """de Casteljau split at ``t``"""
    p0, p1, p2, p3 = curve.p0, curve.p1, curve.p2, curve.p3
    q0 = p0 + (p1 - p0) * t
    q1 = p1 + (p2 - p1) * t
    q2 = p2 + (p3 - p2) * t
    r0 = q0 + (q1 - q0) * t
    r1 = q1 + (q2 - q1) * t
    s = r0 + (r1 - r0) * t
    return Cubic(p0, q0, r0, s), Cubic(s, r1, q2, p3)


def sample_curve(curve: Curve, count: int = 65) -> np.ndarray:
    """``count`` points along the curve parameter, shape ``(count, 2)``"""
    ts = np.linspace(0.0, 1.0, count)
    match curve:
        case Segment(a, b):
            return np.column_stack([a.x + ts * (b.x - a.x), a.y + ts * (b.y - a.y)])
        case Arc(center, radius, start, sweep):
            angles = np.radians(start + ts * sweep)
            return np.column_stack(
                [center.x + radius * np.cos(angles), center.y + radius * np.sin(angles)]
            )
        case Cubic():
            return _cubic_points(curve, ts)
        case Polyline(points):
            return np.array([[p.x, p.y] for p in points])
    raise TypeError(f'Unsupported curve: {curve!r}')


def _cubic_length_table(curve: Cubic) -> tuple[np.ndarray, np.ndarray]:
    ts = np.linspace(0.0, 1.0, _TABLE_SAMPLES)
    points = _cubic_points(curve, ts)
    steps = np.sqrt(np.sum(np.diff(points, axis=0) ** 2, axis=1))
    cumulative = np.zeros(_TABLE_SAMPLES)
    cumulative[1:] = np.cumsum(steps)
    return ts, cumulative


def _polyline_lengths(points: tuple[Point2, ...]) -> np.ndarray:
    coords = np.array([[p.x, p.y] for p in points])
    steps = np.sqrt(np.sum(np.diff(coords, axis=0) ** 2, axis=1))
    cumulative = np.zeros(len(points))
    cumulative[1:] = np.cumsum(steps)
    return cumulative


def curve_length(curve: Curve) -> float:
    match curve:
        case Segment(a, b):
            return a.distance(b)
        case Arc(_, radius, _, sweep):
            return radius * math.radians(abs(sweep))
        case Cubic():
            return float(_cubic_length_table(curve)[1][-1])
        case Polyline(points):
            return float(_polyline_lengths(points)[-1])
    raise TypeError(f'Unsupported curve: {curve!r}')


def _bisect(f, lo: float, hi: float) -> float:
    """Root of ``f`` between ``lo`` and ``hi`` given ``f(lo) < 0 <= f(hi)``; either order"""
    for _ in range(_BISECT_STEPS):
        mid = (lo + hi) / 2
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return hi


def _cubic_exit(curve: Cubic, anchor: Point2, r: float, *, from_start: bool) -> float:
    ts = np.linspace(0.0, 1.0, _TABLE_SAMPLES)
    if not from_start:
        ts = ts[::-1]
    points = _cubic_points(curve, ts)
    dist = np.hypot(points[:, 0] - anchor.x, points[:, 1] - anchor.y)
    outside = np.nonzero(dist >= r)[0]
    if outside.size == 0:
        raise ClipConsumedCurve('vertex borders cover the whole edge')
    i = int(outside[0])
    if i == 0:
        return float(ts[0])

    def f(t: float) -> float:
        return _cubic_at(curve, t).distance(anchor) - r

    return _bisect(f, float(ts[i - 1]), float(ts[i]))


def _segment_exit(p: Point2, q: Point2, anchor: Point2, r: float) -> Point2:
    """Point where ``p -> q`` leaves the circle ``(anchor, r)``; ``p`` inside, ``q`` outside"""
    d = q - p
    f = p - anchor
    a = d.x * d.x + d.y * d.y
    b = 2 * (f.x * d.x + f.y * d.y)
    c = f.x * f.x + f.y * f.y - r * r
    s = (-b + math.sqrt(max(b * b - 4 * a * c, 0.0))) / (2 * a)
    return p + d * min(max(s, 0.0), 1.0)


def _clip_polyline(points: tuple[Point2, ...], r_a: float, r_b: float) -> Polyline:
    pts = list(points)
    start, end = pts[0], pts[-1]

    head = 0
    first = start
    if r_a > 0:
        while head < len(pts) - 1 and pts[head + 1].distance(start) < r_a:
            head += 1
        if head == len(pts) - 1:
            raise ClipConsumedCurve('vertex borders cover the whole edge')
        first = _segment_exit(pts[head], pts[head + 1], start, r_a)

    tail = len(pts) - 1
    last = end
    if r_b > 0:
        while tail > 0 and pts[tail - 1].distance(end) < r_b:
            tail -= 1
        if tail == 0:
            raise ClipConsumedCurve('vertex borders cover the whole edge')
        last = _segment_exit(pts[tail], pts[tail - 1], end, r_b)
    tail -= 1

    # head/tail now index the segments holding the cut points
    if head > tail or (head == tail and first.distance(pts[head]) >= last.distance(pts[head])):
        raise ClipConsumedCurve('vertex borders cover the whole edge')
    return Polyline((first, *pts[head + 1 : tail + 1], last))


def clip_curve(curve: Curve, r_a: float, r_b: float) -> Curve:
    """
    Trim a curve drawn between two vertex centers to the vertex borders.

    The start is cut where the curve first leaves the circle of radius ``r_a`` around its
    start point, the end where it last enters the circle of radius ``r_b`` around its end.
    """
    if r_a == 0 and r_b == 0:
        return curve

    match curve:
        case Segment(a, b):
            length = a.distance(b)
            if r_a + r_b >= length:
                raise ClipConsumedCurve('vertex borders cover the whole edge')
            direction = (b - a) * (1 / length)
            return Segment(a + direction * r_a, b - direction * r_b)

        case Arc(center, radius, start, sweep):
            if r_a > 2 * radius or r_b > 2 * radius:
                raise ClipConsumedCurve('vertex borders cover the whole edge')
            phi_a = math.degrees(2 * math.asin(r_a / (2 * radius)))
            phi_b = math.degrees(2 * math.asin(r_b / (2 * radius)))
            if phi_a + phi_b >= abs(sweep):
                raise ClipConsumedCurve('vertex borders cover the whole edge')
            direction = curve.sweep_direction
            return Arc(
                center,
                radius,
                start + direction * phi_a,
                sweep - direction * (phi_a + phi_b),
            )

        case Cubic(p0, _, _, p3):
            t_a = _cubic_exit(curve, p0, r_a, from_start=True) if r_a > 0 else 0.0
            t_b = _cubic_exit(curve, p3, r_b, from_start=False) if r_b > 0 else 1.0
            if t_a >= t_b:
                raise ClipConsumedCurve('vertex borders cover the whole edge')
            _, tail = _split_cubic(curve, t_a)
            head, _ = _split_cubic(tail, (t_b - t_a) / (1 - t_a))
            return head

        case Polyline(points):
            return _clip_polyline(points, r_a, r_b)

    raise TypeError(f'Unsupported curve: {curve!r}')


def point_at_fraction(curve: Curve, t: float) -> tuple[Point2, float]:
    """Point at fraction ``t`` of the curve's length and the tangent direction there"""
    if not 0 <= t <= 1:
        raise InvalidOption('distance', f'{t} outside [0, 1]')

    match curve:
        case Segment(a, b):
            return a + (b - a) * t, (b - a).angle

        case Arc(center, radius, start, sweep):
            angle = start + t * sweep
            return curve.point(angle), angle + curve.sweep_direction * 90

        case Cubic():
            ts, cumulative = _cubic_length_table(curve)
            u = float(np.interp(t * cumulative[-1], cumulative, ts))
            return _cubic_at(curve, u), _cubic_tangent(curve, u).angle

        case Polyline(points):
            cumulative = _polyline_lengths(points)
            target = t * cumulative[-1]
            i = int(np.searchsorted(cumulative, target, side='right')) - 1
            i = min(max(i, 0), len(points) - 2)
            span = cumulative[i + 1] - cumulative[i]
            local = 0.0 if span == 0 else (target - cumulative[i]) / span
            p, q = points[i], points[i + 1]
            return p + (q - p) * float(local), (q - p).angle

    raise TypeError(f'Unsupported curve: {curve!r}')


def opposite_anchor(degrees: float) -> Anchor:
    """Compass anchor facing back towards a point lying in direction ``degrees``"""
    index = round(((degrees + 180) % 360) / 45) % len(COMPASS)
    return COMPASS[index]


def vertex_label_anchor(
    center: Point2, radius: float, position: LabelPosition, distance: float
) -> tuple[Point2, Anchor]:
    match position:
        case Center():
            return center, Anchor.CENTER
        case Angle(degrees):
            return center + unit_vector(degrees) * (radius + distance), opposite_anchor(degrees)
        case Keyword(token, offset):
            if token not in POSITION_KEYWORDS:
                raise InvalidOption('position', f'unknown keyword {token!r}')
            degrees = POSITION_KEYWORDS[token]
            reach = radius + distance + (offset.cm if offset is not None else 0.0)
            return center + unit_vector(degrees) * reach, opposite_anchor(degrees)
    raise TypeError(f'Unsupported position: {position!r}')


@dataclass(frozen=True, slots=True)
class PlaneOutline:
    corners: tuple[Point2, Point2, Point2, Point2]
    grid: tuple[tuple[Point2, Point2], ...]


def _grid_steps(origin: float, extent: float, step: float) -> list[float]:
    limit = origin + extent - 1e-9 * step
    values = []
    k = 0
    while (value := origin + k * step) < limit:
        values.append(value)
        k += 1
    return values


def plane_polygon(
    x: float,
    y: float,
    width: float,
    height: float,
    layer: int,
    basis: Basis,
    layer_distance: float,
    grid: float | None = None,
    *,
    include_z: bool = True,
) -> PlaneOutline:
    """
    Projected outline and grid of a plane.

    Corners run counter-clockwise from the origin. Grid lines sit at the origin plus
    whole multiples of ``grid`` and stop before the far border.
    """

    def at(px: float, py: float) -> Point2:
        return project(basis, px, py, layer, layer_distance, include_z=include_z)

    corners = (at(x, y), at(x + width, y), at(x + width, y + height), at(x, y + height))

    lines: list[tuple[Point2, Point2]] = []
    if grid is not None:
        for gx in _grid_steps(x, width, grid):
            lines.append((at(gx, y), at(gx, y + height)))
        for gy in _grid_steps(y, height, grid):
            lines.append((at(x, gy), at(x + width, gy)))
        logger.opt(lazy=True).trace('{log}', log=lambda: f'Plane grid: {len(lines)} lines')

    return PlaneOutline(corners, tuple(lines))
