"""
Element specifications

Raw user options of ``\\Vertex``, ``\\Edge``, ``\\Text`` and ``\\Plane``. ``None`` always
means "not given", so defaults can be applied later without confusing them with zero.
"""

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from loguru import logger

from .color import ColorSpec, Triple
from .errors import (
    DuplicateVertexId,
    InvalidOption,
    ParseError,
    UnknownEndpoint,
    UnknownPathRef,
)
from .option_types import FONT_SIZE_PT, POSITION_KEYWORDS, Anchor, Unit
from .units import Length, parse_length

type RgbTriple = tuple[int, int, int]

_ID_FORBIDDEN = re.compile(r'[\s$\\{}(),]')


@dataclass(frozen=True, slots=True)
class Center:
    pass


@dataclass(frozen=True, slots=True)
class Keyword:
    token: str
    offset: Length | None = None


@dataclass(frozen=True, slots=True)
class Angle:
    degrees: float


type LabelPosition = Center | Keyword | Angle


@dataclass(frozen=True, slots=True)
class VertexRef:
    id: str


@dataclass(frozen=True, slots=True)
class Point:
    x: Length
    y: Length


type Waypoint = VertexRef | Point


def parse_position(text: str, default_unit: Unit | str = Unit.CM) -> LabelPosition:
    """``center``, a compass keyword with optional ``=offset``, or an angle in degrees"""
    stripped = ' '.join(text.split())
    if not stripped:
        raise ParseError('empty position')
    if stripped == 'center':
        return Center()

    keyword, _, offset = stripped.partition('=')
    keyword = keyword.strip()
    if keyword in POSITION_KEYWORDS:
        return Keyword(keyword, parse_length(offset, default_unit) if offset else None)

    try:
        degrees = float(stripped)
    except ValueError as e:
        raise ParseError(f'unknown label position {text!r}') from e
    return Angle(degrees)


def validate_id(vertex_id: str):
    if not vertex_id:
        raise InvalidOption('id', 'vertex ids must be non-empty')
    bad = _ID_FORBIDDEN.search(vertex_id)
    if bad:
        raise InvalidOption('id', f'{vertex_id!r} contains forbidden character {bad.group()!r}')


def _check_unit_interval(name: str, value: float | None):
    if value is not None and not 0 <= value <= 1:
        raise InvalidOption(name, f'{value} outside [0, 1]')


def _check_positive(name: str, value: float | None):
    if value is not None and not value > 0:
        raise InvalidOption(name, f'{value} must be positive')


def _check_non_negative(name: str, length: Length | None):
    if length is not None and length.cm < 0:
        raise InvalidOption(name, f'{length.cm}cm must not be negative')


def _check_angle(name: str, value: float | None):
    if value is not None and not -360 <= value <= 360:
        raise InvalidOption(name, f'{value} outside [-360, 360]')


def _check_fontsize(name: str, value: str | None):
    if value is not None and value not in FONT_SIZE_PT:
        raise InvalidOption(name, f'unknown font size command {value!r}')


def _check_position(position: LabelPosition | None):
    match position:
        case Angle(degrees):
            _check_angle('position', degrees)
        case Keyword(token, offset):
            if token not in POSITION_KEYWORDS:
                raise InvalidOption('position', f'unknown keyword {token!r}')
            _check_non_negative('position', offset)


def _check_rgb(rgb: RgbTriple | None):
    if rgb is not None and not all(0 <= c <= 255 for c in rgb):
        raise InvalidOption('rgb', f'{rgb} outside 0..255')


def _check_layer(layer: int | None):
    if layer is not None and layer < 1:
        raise InvalidOption('layer', f'{layer} must be at least 1')


@dataclass(frozen=True, slots=True)
class VertexSpec:
    id: str
    x: Length | None = None
    y: Length | None = None
    size: Length | None = None
    color: ColorSpec | None = None
    opacity: float | None = None
    shape: str | None = None
    label: str | None = None
    fontsize: str | None = None
    fontcolor: ColorSpec | None = None
    fontscale: float | None = None
    position: LabelPosition | None = None
    distance: Length | None = None
    style: str | None = None
    layer: int | None = None
    no_label: bool = False
    id_as_label: bool = False
    math: bool = False
    rgb_mode: bool = False
    pseudo: bool = False
    rgb: RgbTriple | None = None

    def validate(self):
        validate_id(self.id)
        _check_non_negative('size', self.size)
        _check_unit_interval('opacity', self.opacity)
        _check_positive('fontscale', self.fontscale)
        _check_fontsize('fontsize', self.fontsize)
        if self.fontcolor is not None and isinstance(self.fontcolor.variant, Triple):
            raise InvalidOption('fontcolor', 'RGB font colors are not supported')
        if self.shape is not None and not self.shape.strip():
            raise InvalidOption('shape', 'empty shape')
        _check_position(self.position)
        _check_non_negative('distance', self.distance)
        _check_layer(self.layer)
        _check_rgb(self.rgb)


@dataclass(frozen=True, slots=True)
class EdgeSpec:
    u: str
    v: str
    lw: Length | None = None
    color: ColorSpec | None = None
    opacity: float | None = None
    bend: float | None = None
    label: str | None = None
    fontsize: str | None = None
    fontcolor: ColorSpec | None = None
    fontscale: float | None = None
    position: LabelPosition | None = None
    distance: float | None = None
    style: str | None = None
    path: tuple[Waypoint, ...] | None = None
    loopsize: Length | None = None
    loopposition: float | None = None
    loopshape: float | None = None
    direct: bool = False
    math: bool = False
    rgb_mode: bool = False
    not_in_bg: bool = False
    no_label: bool = False
    rgb: RgbTriple | None = None

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def validate(self):
        _check_non_negative('lw', self.lw)
        _check_unit_interval('opacity', self.opacity)
        if self.bend is not None and not abs(self.bend) < 180:
            raise InvalidOption('bend', f'{self.bend} must lie strictly between -180 and 180')
        _check_positive('fontscale', self.fontscale)
        _check_fontsize('fontsize', self.fontsize)
        if self.fontcolor is not None and isinstance(self.fontcolor.variant, Triple):
            raise InvalidOption('fontcolor', 'RGB font colors are not supported')
        _check_position(self.position)
        _check_unit_interval('distance', self.distance)
        if self.loopsize is not None and not self.loopsize.cm > 0:
            raise InvalidOption('loopsize', f'{self.loopsize.cm}cm must be positive')
        _check_angle('loopposition', self.loopposition)
        if self.loopshape is not None and not 0 < self.loopshape < 360:
            raise InvalidOption('loopshape', f'{self.loopshape} outside (0, 360)')
        _check_rgb(self.rgb)
        if self.path is not None:
            if len(self.path) < 2:
                raise InvalidOption('path', 'a path needs at least two waypoints')
            if self.bend:
                raise InvalidOption('path', 'bend is not supported on path edges')
            if self.label is not None and not self.no_label:
                raise InvalidOption('path', 'labels are not supported on path edges')


@dataclass(frozen=True, slots=True)
class TextSpec:
    content: str
    x: Length | None = None
    y: Length | None = None
    fontsize: str | None = None
    color: ColorSpec | None = None
    opacity: float | None = None
    position: LabelPosition | None = None
    distance: Length | None = None
    rotation: float | None = None
    anchor: str | None = None
    width: Length | None = None
    style: str | None = None
    layer: int | None = None
    rgb_mode: bool = False
    rgb: RgbTriple | None = None

    def validate(self):
        _check_fontsize('fontsize', self.fontsize)
        _check_unit_interval('opacity', self.opacity)
        _check_position(self.position)
        _check_non_negative('distance', self.distance)
        _check_angle('rotation', self.rotation)
        if self.anchor is not None and self.anchor not in {a.value for a in Anchor}:
            raise InvalidOption('anchor', f'unknown anchor {self.anchor!r}')
        if self.width is not None and not self.width.cm > 0:
            raise InvalidOption('width', f'{self.width.cm}cm must be positive')
        _check_layer(self.layer)
        _check_rgb(self.rgb)


@dataclass(frozen=True, slots=True)
class PlaneSpec:
    x: Length | None = None
    y: Length | None = None
    width: Length | None = None
    height: Length | None = None
    color: ColorSpec | None = None
    opacity: float | None = None
    grid: Length | None = None
    image: str | None = None
    style: str | None = None
    layer: int | None = None
    rgb_mode: bool = False
    no_fill: bool = False
    no_border: bool = False
    image_and_fill: bool = False
    in_bg: bool = False
    rgb: RgbTriple | None = None

    def validate(self):
        for name, length in (('width', self.width), ('height', self.height), ('grid', self.grid)):
            if length is not None and not length.cm > 0:
                raise InvalidOption(name, f'{length.cm}cm must be positive')
        _check_unit_interval('opacity', self.opacity)
        _check_layer(self.layer)
        _check_rgb(self.rgb)


@dataclass(frozen=True, slots=True)
class Network:
    vertices: tuple[VertexSpec, ...] = ()
    edges: tuple[EdgeSpec, ...] = ()
    texts: tuple[TextSpec, ...] = ()
    planes: tuple[PlaneSpec, ...] = ()
    layer_blocks: tuple[tuple[int, str], ...] = ()
    _by_id: dict[str, VertexSpec] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, '_by_id', {v.id: v for v in self.vertices})

    def vertex_map(self) -> Mapping[str, VertexSpec]:
        return MappingProxyType(self._by_id)


def build_network(
    vertex_specs: Iterable[VertexSpec] = (),
    edge_specs: Iterable[EdgeSpec] = (),
    text_specs: Iterable[TextSpec] = (),
    plane_specs: Iterable[PlaneSpec] = (),
    layer_blocks: Iterable[tuple[int, str]] = (),
) -> Network:
    """
    Validate element specs and assemble them into a :class:`Network`.

    Declaration order is kept as given. Edges may only reference declared vertices.
    """
    vertices = tuple(vertex_specs)
    edges = tuple(edge_specs)
    texts = tuple(text_specs)
    planes = tuple(plane_specs)
    blocks = tuple(layer_blocks)

    seen: set[str] = set()
    for vertex in vertices:
        vertex.validate()
        if vertex.id in seen:
            raise DuplicateVertexId(vertex.id)
        seen.add(vertex.id)

    for index, edge in enumerate(edges):
        for endpoint in (edge.u, edge.v):
            if endpoint not in seen:
                raise UnknownEndpoint(index, endpoint)
        edge.validate()
        for waypoint in edge.path or ():
            if isinstance(waypoint, VertexRef) and waypoint.id not in seen:
                raise UnknownPathRef(waypoint.id)

    for text in texts:
        text.validate()
    for plane in planes:
        plane.validate()
    for layer, _ in blocks:
        _check_layer(layer)

    logger.opt(lazy=True).debug(
        '{log}',
        log=lambda: (
            f'Built network: {len(vertices)} vertices, {len(edges)} edges, '
            f'{len(texts)} texts, {len(planes)} planes'
        ),
    )
    return Network(vertices, edges, texts, planes, blocks)
