"""
Scene building

Turns a network into an ordered list of drawing primitives in screen centimeters. The
list order is the painting order:

1. planes, highest layer first
2. background edges, highest layer first
3. per layer, highest first: its vertices, then its foreground intra-layer edges
4. foreground edges between layers
5. texts
"""

from collections import defaultdict
from dataclasses import dataclass

from loguru import logger

from .color import ColorSpec, Rgb, resolve_rgb
from .errors import ClipConsumedCurve, DegenerateEdge, InvalidOption, UnsupportedShape
from .geometry import (
    Basis,
    Curve,
    PlaneOutline,
    Point2,
    Polyline,
    bend_curve,
    clip_curve,
    curve_end,
    loop_curve,
    plane_polygon,
    point_at_fraction,
    project,
    projection_basis,
    sample_curve,
    unit_vector,
    vertex_label_anchor,
)
from .model import Network, Point, VertexRef
from .option_types import FONT_SIZE_PT, Anchor, RenderMode, Shape
from .resolve import (
    ResolvedEdge,
    ResolvedVertex,
    resolve_edge,
    resolve_plane,
    resolve_text,
    resolve_vertex,
)
from .settings import Settings
from .units import PX_PER_CM, PX_PER_PT

BOUNDS_MARGIN = 0.25

# Character width and line height per font px
CHAR_WIDTH = 0.6
LINE_HEIGHT = 1.2

ARROW_LENGTH = 4.0
ARROW_HALF_WIDTH = 1.5

NATIVE_SHAPES = frozenset({Shape.CIRCLE, Shape.RECTANGLE, Shape.DIAMOND})

# Position of each anchor on a box, in half extents from its center
ANCHOR_OFFSETS: dict[Anchor, tuple[int, int]] = {
    Anchor.CENTER: (0, 0),
    Anchor.EAST: (1, 0),
    Anchor.NORTH_EAST: (1, 1),
    Anchor.NORTH: (0, 1),
    Anchor.NORTH_WEST: (-1, 1),
    Anchor.WEST: (-1, 0),
    Anchor.SOUTH_WEST: (-1, -1),
    Anchor.SOUTH: (0, -1),
    Anchor.SOUTH_EAST: (1, -1),
}


def map_fontsize(size_command: str, fontscale: float = 1.0) -> float:
    """Pixel size of a LaTeX font size command"""
    name = size_command.removeprefix('\\')
    if name not in FONT_SIZE_PT:
        raise InvalidOption('fontsize', f'unknown font size command {size_command!r}')
    if not fontscale > 0:
        raise InvalidOption('fontscale', f'{fontscale} must be positive')
    return FONT_SIZE_PT[name] * fontscale * PX_PER_PT


@dataclass(frozen=True, slots=True)
class Paint:
    color: Rgb
    opacity: float


@dataclass(frozen=True, slots=True)
class Stroke:
    width: float  # cm
    color: Rgb
    opacity: float


@dataclass(frozen=True, slots=True)
class Label:
    point: Point2
    anchor: Anchor
    lines: tuple[str, ...]
    font_px: float
    paint: Paint
    rotation: float = 0.0
    italic: bool = False
    inner_sep: float = 0.0  # cm
    box: Paint | None = None

    @property
    def size(self) -> tuple[float, float]:
        """Estimated box width and height in cm"""
        longest = max((len(line) for line in self.lines), default=0)
        width = CHAR_WIDTH * self.font_px * longest / PX_PER_CM + 2 * self.inner_sep
        height = LINE_HEIGHT * self.font_px * len(self.lines) / PX_PER_CM + 2 * self.inner_sep
        return width, height

    @property
    def center(self) -> Point2:
        width, height = self.size
        dx, dy = ANCHOR_OFFSETS[self.anchor]
        return self.point - Point2(dx * width / 2, dy * height / 2)


@dataclass(frozen=True, slots=True)
class PlanePrim:
    layer: int
    outline: PlaneOutline
    fill: Paint | None
    border: Stroke | None
    grid: Stroke | None
    image: str | None
    image_opacity: float


@dataclass(frozen=True, slots=True)
class EdgePrim:
    u: str
    v: str
    layer: int | None  # None for edges between layers
    curve: Curve
    stroke: Stroke
    arrow: tuple[Point2, Point2, Point2] | None
    label: Label | None


@dataclass(frozen=True, slots=True)
class VertexPrim:
    id: str
    layer: int
    center: Point2
    radius: float
    shape: Shape
    fill: Paint
    border: Stroke
    label: Label | None


@dataclass(frozen=True, slots=True)
class TextPrim:
    layer: int
    label: Label


type Primitive = PlanePrim | EdgePrim | VertexPrim | TextPrim


@dataclass(frozen=True, slots=True)
class Scene:
    primitives: tuple[Primitive, ...]
    bounds: tuple[float, float, float, float]  # x_min, y_min, x_max, y_max in cm


def wrap_text(text: str, width: float | None, font_px: float) -> tuple[str, ...]:
    """Greedy word wrap to ``width`` cm using the fixed character width estimate"""
    if width is None:
        return (text,)
    limit = max(1, int(width * PX_PER_CM / (CHAR_WIDTH * font_px)))
    lines: list[str] = []
    current = ''
    for word in text.split():
        candidate = f'{current} {word}' if current else word
        if len(candidate) <= limit or not current:
            current = candidate
        else:
            lines.append(current)
            current = word
    lines.append(current)
    return tuple(lines)


class _Builder:
    def __init__(self, settings: Settings):
        self.settings = settings
        self.palette = settings.palette
        self.basis: Basis = projection_basis(settings.coordinates)
        self.include_z = settings.mode is RenderMode.MULTILAYER_3D
        self.layer_distance = settings.effective_layer_distance.cm
        self.vertices: dict[str, tuple[ResolvedVertex, Point2]] = {}

    def rgb(self, color: ColorSpec) -> Rgb:
        return resolve_rgb(color, self.palette)

    def at(self, x: float, y: float, layer: int) -> Point2:
        return project(self.basis, x, y, layer, self.layer_distance, include_z=self.include_z)

    def shape(self, vertex: ResolvedVertex) -> Shape:
        try:
            shape = Shape(vertex.shape)
        except ValueError as e:
            raise UnsupportedShape(vertex.shape).with_source(f'Vertex {vertex.id}') from e
        if shape not in NATIVE_SHAPES:
            logger.warning(f'Vertex {vertex.id}: shape {shape.value!r} is drawn as a circle')
            return Shape.CIRCLE
        return shape

    def vertex(self, vertex: ResolvedVertex) -> VertexPrim:
        center = self.at(vertex.x, vertex.y, vertex.layer)
        self.vertices[vertex.id] = (vertex, center)
        if vertex.style is not None:
            logger.warning(f'Vertex {vertex.id}: style {vertex.style!r} is ignored in SVG output')

        label = None
        if vertex.label is not None:
            point, anchor = vertex_label_anchor(
                center, vertex.radius, vertex.position, vertex.distance
            )
            label = Label(
                point=point,
                anchor=anchor,
                lines=(vertex.label.replace('$', ''),),
                font_px=map_fontsize(vertex.font, vertex.font_scale),
                paint=Paint(self.rgb(vertex.font_color), vertex.text_opacity),
                rotation=vertex.text_rotation,
                italic=vertex.math,
            )

        return VertexPrim(
            id=vertex.id,
            layer=vertex.layer,
            center=center,
            radius=vertex.radius,
            shape=self.shape(vertex),
            fill=Paint(self.rgb(vertex.fill), vertex.fill_opacity),
            border=Stroke(vertex.line_width.cm, self.rgb(vertex.line_color), vertex.line_opacity),
            label=label,
        )

    def edge_curve(self, edge: ResolvedEdge) -> Curve:
        u, pu = self.vertices[edge.u]
        v, pv = self.vertices[edge.v]

        if edge.path is not None:
            points = []
            for waypoint in edge.path:
                match waypoint:
                    case VertexRef(vertex_id):
                        points.append(self.vertices[vertex_id][1])
                    case Point(x, y):
                        scale = self.settings.distance_scale
                        points.append(self.at(x.cm * scale, y.cm * scale, edge.u_layer))
            first, last = edge.path[0], edge.path[-1]
            r_a = u.radius if isinstance(first, VertexRef) and first.id == edge.u else 0.0
            r_b = v.radius if isinstance(last, VertexRef) and last.id == edge.v else 0.0
            return clip_curve(Polyline(tuple(points)), r_a, r_b)

        if edge.is_loop:
            return loop_curve(pu, u.radius, edge.loopsize.cm, edge.loopposition, edge.loopshape)

        return clip_curve(bend_curve(pu, pv, edge.bend), u.radius, v.radius)

    def edge(self, edge: ResolvedEdge) -> EdgePrim | None:
        name = f'Edge {edge.u}->{edge.v}'
        try:
            curve = self.edge_curve(edge)
        except ClipConsumedCurve:
            logger.warning(f'{name}: the vertices cover the whole edge, not drawn')
            return None
        except DegenerateEdge:
            logger.warning(f'{name}: endpoints coincide, not drawn')
            return None
        if edge.style is not None:
            logger.warning(f'{name}: style {edge.style!r} is ignored in SVG output')

        width = edge.lw.cm
        arrow = None
        if edge.arrow is not None:
            tip = curve_end(curve)
            _, heading = point_at_fraction(curve, 1.0)
            back = unit_vector(heading) * (ARROW_LENGTH * width)
            side = unit_vector(heading + 90) * (ARROW_HALF_WIDTH * width)
            base = tip - back
            arrow = (tip, base + side, base - side)

        label = None
        if edge.label is not None and edge.path is None:
            point, _ = point_at_fraction(curve, edge.distance)
            if edge.position is None:
                anchor = Anchor.CENTER
            else:
                point, anchor = vertex_label_anchor(point, 0.0, edge.position, 0.0)
            label = Label(
                point=point,
                anchor=anchor,
                lines=(edge.label.replace('$', ''),),
                font_px=map_fontsize(edge.font, edge.font_scale),
                paint=Paint(self.rgb(edge.font_color), edge.text_opacity),
                rotation=edge.text_rotation,
                italic=edge.math,
                inner_sep=edge.inner_sep.cm,
                box=Paint(self.rgb(edge.text_fill_color), edge.text_fill_opacity),
            )

        return EdgePrim(
            u=edge.u,
            v=edge.v,
            layer=edge.u_layer if edge.intra_layer else None,
            curve=curve,
            stroke=Stroke(width, self.rgb(edge.color), edge.opacity),
            arrow=arrow,
            label=label,
        )


def _label_points(label: Label) -> list[Point2]:
    width, height = label.size
    center = label.center
    return [
        center + Point2(sx * width / 2, sy * height / 2) for sx in (-1, 1) for sy in (-1, 1)
    ]


def _primitive_points(prim: Primitive) -> list[Point2]:
    match prim:
        case PlanePrim(outline=outline):
            return list(outline.corners)
        case VertexPrim(center=center, radius=radius, label=label):
            points = [center + Point2(radius, radius), center - Point2(radius, radius)]
            return points + (_label_points(label) if label else [])
        case EdgePrim(curve=curve, arrow=arrow, label=label):
            points = [Point2(float(x), float(y)) for x, y in sample_curve(curve)]
            points += list(arrow or ())
            return points + (_label_points(label) if label else [])
        case TextPrim(label=label):
            return _label_points(label)
    raise TypeError(f'Unsupported primitive: {prim!r}')


def scene_bounds(primitives: tuple[Primitive, ...]) -> tuple[float, float, float, float]:
    points = [p for prim in primitives for p in _primitive_points(prim)]
    if not points:
        points = [Point2(0.0, 0.0)]
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    return (
        min(xs) - BOUNDS_MARGIN,
        min(ys) - BOUNDS_MARGIN,
        max(xs) + BOUNDS_MARGIN,
        max(ys) + BOUNDS_MARGIN,
    )


def scene_build(network: Network, settings: Settings | None = None) -> Scene:
    settings = Settings() if settings is None else settings
    builder = _Builder(settings)

    for layer, _ in network.layer_blocks:
        logger.warning(f'Layer {layer} block holds raw TeX and is skipped in SVG output')

    planes = []
    for spec in network.planes:
        plane = resolve_plane(spec, settings)
        if plane.style is not None:
            logger.warning(f'Plane on layer {plane.layer}: style is ignored in SVG output')
        outline = plane_polygon(
            plane.x,
            plane.y,
            plane.width,
            plane.height,
            plane.layer,
            builder.basis,
            builder.layer_distance,
            plane.grid,
            include_z=builder.include_z,
        )
        planes.append(
            PlanePrim(
                layer=plane.layer,
                outline=outline,
                fill=Paint(builder.rgb(plane.fill), plane.fill_opacity) if plane.fill else None,
                border=(
                    Stroke(plane.line_width.cm, builder.rgb(plane.line_color), plane.line_opacity)
                    if plane.border
                    else None
                ),
                grid=(
                    Stroke(
                        plane.grid_line_width.cm, builder.rgb(plane.grid_color), plane.grid_opacity
                    )
                    if plane.grid is not None
                    else None
                ),
                image=plane.image,
                image_opacity=plane.image_opacity,
            )
        )

    vertices_by_layer: dict[int, list[VertexPrim]] = defaultdict(list)
    for spec in network.vertices:
        resolved = resolve_vertex(spec, settings)
        prim = builder.vertex(resolved)
        if not resolved.pseudo:
            vertices_by_layer[resolved.layer].append(prim)

    background: list[tuple[int, EdgePrim]] = []
    foreground_by_layer: dict[int, list[EdgePrim]] = defaultdict(list)
    between_layers: list[EdgePrim] = []
    for spec in network.edges:
        resolved = resolve_edge(spec, settings, network)
        prim = builder.edge(resolved)
        if prim is None:
            continue
        if resolved.in_background:
            background.append((max(resolved.u_layer, resolved.v_layer), prim))
        elif prim.layer is None:
            between_layers.append(prim)
        else:
            foreground_by_layer[prim.layer].append(prim)

    texts = []
    for spec in network.texts:
        text = resolve_text(spec, settings)
        if text.style is not None:
            logger.warning(f'Text {text.content!r}: style is ignored in SVG output')
        origin = builder.at(text.x, text.y, text.layer)
        point, anchor = vertex_label_anchor(origin, 0.0, text.position, text.distance)
        font_px = map_fontsize(text.font)
        label = Label(
            point=point,
            anchor=Anchor(text.anchor) if text.anchor is not None else anchor,
            lines=wrap_text(text.content, text.width, font_px),
            font_px=font_px,
            paint=Paint(builder.rgb(text.color), text.opacity),
            rotation=text.rotation,
            inner_sep=text.inner_sep.cm,
        )
        texts.append(TextPrim(text.layer, label))

    ordered: list[Primitive] = sorted(planes, key=lambda p: -p.layer)
    ordered += [prim for _, prim in sorted(background, key=lambda item: -item[0])]
    for layer in sorted(set(vertices_by_layer) | set(foreground_by_layer), reverse=True):
        ordered += vertices_by_layer[layer]
        ordered += foreground_by_layer[layer]
    ordered += between_layers
    ordered += texts

    primitives = tuple(ordered)
    logger.opt(lazy=True).debug('{log}', log=lambda: f'Scene holds {len(primitives)} primitives')
    return Scene(primitives, scene_bounds(primitives))
