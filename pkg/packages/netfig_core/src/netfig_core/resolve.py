"""
Option resolution

Merges the options of one element with the document defaults held by :class:`Settings`.
The resolved records carry every value the emitters need, with coordinates already
multiplied by the distance scale.
"""

from dataclasses import dataclass

from loguru import logger

from .color import ColorSpec, Triple, triple_spec
from .model import (
    Center,
    EdgeSpec,
    LabelPosition,
    Network,
    PlaneSpec,
    TextSpec,
    VertexSpec,
    Waypoint,
)
from .option_types import RenderMode
from .settings import Settings
from .units import Length


def _math_wrapped(label: str | None, math: bool) -> str | None:
    if label is None or not math or label.startswith('$'):
        return label
    return f'${label}$'


@dataclass(frozen=True, slots=True)
class ResolvedVertex:
    id: str
    x: float
    y: float
    radius: float
    shape: str
    fill: ColorSpec
    fill_opacity: float
    line_width: Length
    line_color: ColorSpec
    line_opacity: float
    label: str | None
    math: bool
    font: str
    font_scale: float
    font_color: ColorSpec
    text_opacity: float
    text_rotation: float
    position: LabelPosition
    distance: float
    style: str | None
    layer: int
    pseudo: bool

    @property
    def tex_label(self) -> str | None:
        return _math_wrapped(self.label, self.math)


@dataclass(frozen=True, slots=True)
class ResolvedEdge:
    u: str
    v: str
    u_layer: int
    v_layer: int
    lw: Length
    color: ColorSpec
    opacity: float
    bend: float
    label: str | None
    math: bool
    font: str
    font_scale: float
    font_color: ColorSpec
    text_opacity: float
    text_fill_color: ColorSpec
    text_fill_opacity: float
    inner_sep: Length
    text_rotation: float
    position: LabelPosition | None
    distance: float
    style: str | None
    path: tuple[Waypoint, ...] | None
    loopsize: Length
    loopposition: float
    loopshape: float
    arrow: str | None
    in_background: bool

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def intra_layer(self) -> bool:
        return self.u_layer == self.v_layer

    @property
    def tex_label(self) -> str | None:
        return _math_wrapped(self.label, self.math)


@dataclass(frozen=True, slots=True)
class ResolvedText:
    content: str
    x: float
    y: float
    font: str
    color: ColorSpec
    opacity: float
    position: LabelPosition
    distance: float
    rotation: float
    anchor: str | None
    width: float | None
    style: str | None
    layer: int
    inner_sep: Length


@dataclass(frozen=True, slots=True)
class ResolvedPlane:
    x: float
    y: float
    width: float
    height: float
    fill: ColorSpec | None
    fill_opacity: float
    image: str | None
    image_opacity: float
    border: bool
    line_width: Length
    line_color: ColorSpec
    line_opacity: float
    grid: float | None
    grid_line_width: Length
    grid_color: ColorSpec
    grid_opacity: float
    layer: int
    style: str | None
    in_bg: bool


def _pick[T](value: T | None, default: T) -> T:
    return default if value is None else value


def _element_color(
    what: str,
    color: ColorSpec | None,
    rgb_mode: bool,
    rgb: tuple[int, int, int] | None,
    default: ColorSpec,
) -> ColorSpec:
    if rgb_mode:
        if rgb is not None:
            return triple_spec(rgb)
        if color is not None and isinstance(color.variant, Triple):
            return color
        logger.warning(f'{what}: RGB is set but no RGB values were given, using the default color')
        return default
    return _pick(color, default)


def _layer_of(spec: VertexSpec | TextSpec, what: str, settings: Settings) -> int:
    if spec.layer is not None:
        return spec.layer
    if settings.mode is not RenderMode.FLAT:
        logger.warning(f'{what} has no layer in {settings.mode.value} mode, placing it on layer 1')
    return 1


def resolve_vertex(spec: VertexSpec, settings: Settings) -> ResolvedVertex:
    style = settings.vertex_style
    scale = settings.distance_scale

    if spec.no_label:
        label = None
    elif spec.id_as_label:
        label = spec.id
    else:
        label = spec.label

    if spec.pseudo:
        radius = 0.0
        label = None
    else:
        min_size = settings.effective_min_size.cm
        radius = max(spec.size.cm if spec.size is not None else 0.0, min_size) / 2

    return ResolvedVertex(
        id=spec.id,
        x=(spec.x.cm if spec.x is not None else 0.0) * scale,
        y=(spec.y.cm if spec.y is not None else 0.0) * scale,
        radius=radius,
        shape=_pick(spec.shape, style.shape),
        fill=_element_color(
            f'Vertex {spec.id}', spec.color, spec.rgb_mode, spec.rgb, style.fill_color
        ),
        fill_opacity=_pick(spec.opacity, style.fill_opacity),
        line_width=style.line_width,
        line_color=style.line_color,
        line_opacity=style.line_opacity,
        label=label,
        math=spec.math,
        font=_pick(spec.fontsize, style.text_font),
        font_scale=_pick(spec.fontscale, 1.0),
        font_color=_pick(spec.fontcolor, style.text_color),
        text_opacity=style.text_opacity,
        text_rotation=style.text_rotation,
        position=_pick(spec.position, Center()),
        distance=spec.distance.cm if spec.distance is not None else 0.0,
        style=spec.style,
        layer=_layer_of(spec, f'Vertex {spec.id}', settings),
        pseudo=spec.pseudo,
    )


def _vertex_layer(network: Network, vertex_id: str) -> int:
    vertex = network.vertex_map().get(vertex_id)
    if vertex is None:
        return 1
    return vertex.layer or 1


def resolve_edge(spec: EdgeSpec, settings: Settings, network: Network) -> ResolvedEdge:
    style = settings.edge_style
    label = None if spec.no_label else spec.label

    return ResolvedEdge(
        u=spec.u,
        v=spec.v,
        u_layer=_vertex_layer(network, spec.u),
        v_layer=_vertex_layer(network, spec.v),
        lw=_pick(spec.lw, style.line_width),
        color=_element_color(
            f'Edge {spec.u}->{spec.v}', spec.color, spec.rgb_mode, spec.rgb, style.color
        ),
        opacity=_pick(spec.opacity, style.opacity),
        bend=_pick(spec.bend, 0.0),
        label=label,
        math=spec.math,
        font=_pick(spec.fontsize, style.text_font),
        font_scale=_pick(spec.fontscale, 1.0),
        font_color=_pick(spec.fontcolor, style.text_color),
        text_opacity=style.text_opacity,
        text_fill_color=style.text_fill_color,
        text_fill_opacity=style.text_fill_opacity,
        inner_sep=style.inner_sep,
        text_rotation=style.text_rotation,
        position=spec.position,
        distance=_pick(spec.distance, 0.5),
        style=spec.style,
        path=spec.path,
        loopsize=_pick(spec.loopsize, Length.of(1)),
        loopposition=_pick(spec.loopposition, 0.0),
        loopshape=_pick(spec.loopshape, 90.0),
        arrow=style.arrow if spec.direct else None,
        in_background=False if spec.not_in_bg else settings.edges_in_bg,
    )


def resolve_text(spec: TextSpec, settings: Settings) -> ResolvedText:
    style = settings.text_style
    scale = settings.distance_scale
    return ResolvedText(
        content=spec.content,
        x=(spec.x.cm if spec.x is not None else 0.0) * scale,
        y=(spec.y.cm if spec.y is not None else 0.0) * scale,
        font=_pick(spec.fontsize, style.text_font),
        color=_element_color(
            f'Text {spec.content!r}', spec.color, spec.rgb_mode, spec.rgb, style.text_color
        ),
        opacity=_pick(spec.opacity, style.text_opacity),
        position=_pick(spec.position, Center()),
        distance=spec.distance.cm if spec.distance is not None else 0.0,
        rotation=_pick(spec.rotation, style.text_rotation),
        anchor=spec.anchor,
        width=spec.width.cm if spec.width is not None else None,
        style=spec.style,
        layer=spec.layer or 1,
        inner_sep=style.inner_sep,
    )


def resolve_plane(spec: PlaneSpec, settings: Settings) -> ResolvedPlane:
    style = settings.plane_style
    scale = settings.distance_scale
    opacity = _pick(spec.opacity, style.fill_opacity)

    if spec.no_fill or (spec.image is not None and not spec.image_and_fill):
        fill = None
    else:
        fill = _element_color('Plane', spec.color, spec.rgb_mode, spec.rgb, style.fill_color)

    return ResolvedPlane(
        x=(spec.x.cm if spec.x is not None else 0.0) * scale,
        y=(spec.y.cm if spec.y is not None else 0.0) * scale,
        width=_pick(spec.width, settings.plane_width).cm,
        height=_pick(spec.height, settings.plane_height).cm,
        fill=fill,
        fill_opacity=opacity,
        image=spec.image,
        image_opacity=opacity if spec.image_and_fill else 1.0,
        border=not spec.no_border,
        line_width=style.line_width,
        line_color=style.line_color,
        line_opacity=style.line_opacity,
        grid=spec.grid.cm if spec.grid is not None else None,
        grid_line_width=style.grid_line_width,
        grid_color=style.grid_color,
        grid_opacity=style.grid_opacity,
        layer=_pick(spec.layer, 1),
        style=spec.style,
        in_bg=spec.in_bg,
    )
