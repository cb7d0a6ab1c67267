"""
tikz-network source output

Only explicitly set options are written, in the option-table order of each command.
"""

from collections.abc import Iterator
from dataclasses import dataclass

from loguru import logger

from .color import ColorSpec, Triple
from .model import (
    Angle,
    Center,
    EdgeSpec,
    Keyword,
    LabelPosition,
    Network,
    PlaneSpec,
    Point,
    TextSpec,
    VertexRef,
    VertexSpec,
    Waypoint,
)
from .option_types import RenderMode, Unit
from .settings import Coordinates, Settings, changed_fields, coordinate_key, style_key
from .units import Length

_BRACE_TRIGGERS = (',', '=', ']')

_MULTILAYER_OPTION = {
    RenderMode.FLAT: '',
    RenderMode.MULTILAYER: '[multilayer]',
    RenderMode.MULTILAYER_3D: '[multilayer=3d]',
}


@dataclass(frozen=True, slots=True)
class ClipRect:
    """``\\clip (x0,y0) rectangle (x1,y1);`` in default units"""

    x0: float
    y0: float
    x1: float
    y1: float


def format_number(value: float) -> str:
    """At most three decimals, no trailing zeros, no negative zero"""
    text = f'{value:.3f}'.rstrip('0').rstrip('.')
    return '0' if text in ('-0', '') else text


def _measure(length: Length, unit: Unit) -> str:
    return format_number(length.to(unit))


def _measure_with_unit(length: Length, unit: Unit) -> str:
    return f'{_measure(length, unit)}{unit.value}'


def _pt(length: Length) -> str:
    return f'{format_number(length.to(Unit.PT))}pt'


def _text(value: str) -> str:
    return f'{{{value}}}' if any(c in value for c in _BRACE_TRIGGERS) else value


def _position(position: LabelPosition, unit: Unit) -> str:
    match position:
        case Center():
            return 'center'
        case Keyword(token, None):
            return token
        case Keyword(token, offset):
            return f'{token}={_measure_with_unit(offset, unit)}'
        case Angle(degrees):
            return format_number(degrees)
    raise TypeError(f'Unsupported position: {position!r}')


def _path(path: tuple[Waypoint, ...], unit: Unit) -> str:
    items = []
    for waypoint in path:
        match waypoint:
            case VertexRef(vertex_id):
                items.append(vertex_id)
            case Point(x, y):
                items.append(f'{{{_measure(x, unit)},{_measure(y, unit)}}}')
    return '{' + ','.join(items) + '}'


def _color(
    color: ColorSpec | None, rgb_mode: bool, rgb: tuple[int, int, int] | None
) -> tuple[str | None, bool]:
    """Color option text and whether the ``RGB`` flag is needed"""
    if rgb_mode and rgb is not None:
        r, g, b = rgb
        return f'{{{r},{g},{b}}}', True
    if color is None:
        return None, rgb_mode
    return color.source_text, rgb_mode or isinstance(color.variant, Triple)


class _Options:
    """Accumulates ``key=value`` and bare flag tokens"""

    def __init__(self):
        self.items: list[str] = []

    def add(self, key: str, value: str | None):
        if value is not None:
            self.items.append(f'{key}={value}')

    def flag(self, name: str, enabled: bool):
        if enabled:
            self.items.append(name)

    def render(self) -> str:
        return f'[{",".join(self.items)}]' if self.items else ''


def _maybe[T](value: T | None, fmt) -> str | None:
    return None if value is None else fmt(value)


def vertex_options(spec: VertexSpec, unit: Unit) -> str:
    opts = _Options()
    color, rgb_flag = _color(spec.color, spec.rgb_mode, spec.rgb)
    opts.add('x', _maybe(spec.x, lambda v: _measure(v, unit)))
    opts.add('y', _maybe(spec.y, lambda v: _measure(v, unit)))
    opts.add('size', _maybe(spec.size, lambda v: _measure(v, unit)))
    opts.add('color', color)
    opts.add('opacity', _maybe(spec.opacity, format_number))
    opts.add('shape', spec.shape)
    opts.add('label', _maybe(spec.label, _text))
    opts.add('fontsize', _maybe(spec.fontsize, lambda v: f'\\{v}'))
    opts.add('fontcolor', _maybe(spec.fontcolor, lambda v: v.source_text))
    opts.add('fontscale', _maybe(spec.fontscale, format_number))
    opts.add('position', _maybe(spec.position, lambda v: _position(v, unit)))
    opts.add('distance', _maybe(spec.distance, lambda v: _measure_with_unit(v, unit)))
    opts.add('style', _maybe(spec.style, lambda v: f'{{{v}}}'))
    opts.add('layer', _maybe(spec.layer, str))
    opts.flag('NoLabel', spec.no_label)
    opts.flag('IdAsLabel', spec.id_as_label)
    opts.flag('Math', spec.math)
    opts.flag('RGB', rgb_flag)
    opts.flag('Pseudo', spec.pseudo)
    return opts.render()


def edge_options(spec: EdgeSpec, unit: Unit) -> str:
    opts = _Options()
    color, rgb_flag = _color(spec.color, spec.rgb_mode, spec.rgb)
    opts.add('lw', _maybe(spec.lw, _pt))
    opts.add('color', color)
    opts.add('opacity', _maybe(spec.opacity, format_number))
    opts.add('bend', _maybe(spec.bend, format_number))
    if not spec.no_label:
        opts.add('label', _maybe(spec.label, _text))
    opts.add('fontsize', _maybe(spec.fontsize, lambda v: f'\\{v}'))
    opts.add('fontcolor', _maybe(spec.fontcolor, lambda v: v.source_text))
    opts.add('fontscale', _maybe(spec.fontscale, format_number))
    opts.add('position', _maybe(spec.position, lambda v: _position(v, unit)))
    opts.add('distance', _maybe(spec.distance, format_number))
    opts.add('style', _maybe(spec.style, lambda v: f'{{{v}}}'))
    opts.add('path', _maybe(spec.path, lambda v: _path(v, unit)))
    opts.add('loopsize', _maybe(spec.loopsize, lambda v: _measure_with_unit(v, unit)))
    opts.add('loopposition', _maybe(spec.loopposition, format_number))
    opts.add('loopshape', _maybe(spec.loopshape, format_number))
    opts.flag('Direct', spec.direct)
    opts.flag('Math', spec.math)
    opts.flag('RGB', rgb_flag)
    opts.flag('NotInBG', spec.not_in_bg)
    return opts.render()


def text_options(spec: TextSpec, unit: Unit) -> str:
    opts = _Options()
    color, rgb_flag = _color(spec.color, spec.rgb_mode, spec.rgb)
    opts.add('x', _maybe(spec.x, lambda v: _measure(v, unit)))
    opts.add('y', _maybe(spec.y, lambda v: _measure(v, unit)))
    opts.add('fontsize', _maybe(spec.fontsize, lambda v: f'\\{v}'))
    opts.add('color', color)
    opts.add('opacity', _maybe(spec.opacity, format_number))
    opts.add('position', _maybe(spec.position, lambda v: _position(v, unit)))
    opts.add('distance', _maybe(spec.distance, lambda v: _measure_with_unit(v, unit)))
    opts.add('rotation', _maybe(spec.rotation, format_number))
    opts.add('anchor', spec.anchor)
    opts.add('width', _maybe(spec.width, lambda v: _measure_with_unit(v, unit)))
    opts.add('style', _maybe(spec.style, lambda v: f'{{{v}}}'))
    opts.add('layer', _maybe(spec.layer, str))
    opts.flag('RGB', rgb_flag)
    return opts.render()


def plane_options(spec: PlaneSpec, unit: Unit) -> str:
    opts = _Options()
    color, rgb_flag = _color(spec.color, spec.rgb_mode, spec.rgb)
    opts.add('x', _maybe(spec.x, lambda v: _measure(v, unit)))
    opts.add('y', _maybe(spec.y, lambda v: _measure(v, unit)))
    opts.add('width', _maybe(spec.width, lambda v: _measure(v, unit)))
    opts.add('height', _maybe(spec.height, lambda v: _measure(v, unit)))
    opts.add('color', color)
    opts.add('opacity', _maybe(spec.opacity, format_number))
    opts.add('grid', _maybe(spec.grid, lambda v: _measure(v, unit)))
    opts.add('image', spec.image)
    opts.add('style', _maybe(spec.style, lambda v: f'{{{v}}}'))
    opts.add('layer', _maybe(spec.layer, str))
    opts.flag('RGB', rgb_flag)
    opts.flag('NoFill', spec.no_fill)
    opts.flag('NoBorder', spec.no_border)
    opts.flag('ImageAndFill', spec.image_and_fill)
    opts.flag('InBG', spec.in_bg)
    return opts.render()


def _style_value(name: str, value, unit: Unit) -> str:
    if name == 'min_size':
        return _measure(value, unit)
    if name == 'text_font':
        return f'\\{value}'
    match value:
        case Length():
            return _pt(value)
        case ColorSpec():
            return value.source_text
        case float() | int():
            return format_number(value)
    return str(value)


def _setting_lines(settings: Settings) -> Iterator[str]:
    default = Settings()
    unit = settings.default_unit

    for name, rgb in settings.colors:
        yield f'\\definecolor{{{name}}}{{RGB}}{{{rgb.r},{rgb.g},{rgb.b}}}'
    if settings.default_unit is not default.default_unit:
        yield f'\\SetDefaultUnit{{{unit.value}}}'
    if settings.distance_scale != default.distance_scale:
        yield f'\\SetDistanceScale{{{format_number(settings.distance_scale)}}}'

    axes = changed_fields(settings.coordinates, Coordinates())
    if axes:
        items = (
            f'{coordinate_key(name)}={format_number(getattr(settings.coordinates, name))}'
            for name in axes
        )
        yield f'\\SetCoordinates[{",".join(items)}]'

    if settings.layer_distance is not None:
        yield f'\\SetLayerDistance{{{_measure(settings.layer_distance, unit)}}}'

    for command, attr in (
        ('SetVertexStyle', 'vertex_style'),
        ('SetEdgeStyle', 'edge_style'),
        ('SetTextStyle', 'text_style'),
        ('SetPlaneStyle', 'plane_style'),
    ):
        style = getattr(settings, attr)
        changed = changed_fields(style, getattr(default, attr))
        if changed:
            items = (
                f'{style_key(name)}={_style_value(name, getattr(style, name), unit)}'
                for name in changed
            )
            yield f'\\{command}[{",".join(items)}]'

    if settings.plane_width != default.plane_width:
        yield f'\\SetPlaneWidth{{{_measure(settings.plane_width, unit)}}}'
    if settings.plane_height != default.plane_height:
        yield f'\\SetPlaneHeight{{{_measure(settings.plane_height, unit)}}}'
    if not settings.edges_in_bg:
        yield '\\EdgesNotInBG'


def _element_lines(network: Network, unit: Unit) -> Iterator[str]:
    for plane in network.planes:
        yield f'\\Plane{plane_options(plane, unit)}'
    for layer, raw in network.layer_blocks:
        yield f'\\begin{{Layer}}[layer={layer}]'
        yield from raw.splitlines()
        yield '\\end{Layer}'
    for vertex in network.vertices:
        yield f'\\Vertex{vertex_options(vertex, unit)}{{{vertex.id}}}'
    for edge in network.edges:
        yield f'\\Edge{edge_options(edge, unit)}({edge.u})({edge.v})'
    for text in network.texts:
        yield f'\\Text{text_options(text, unit)}{{{text.content}}}'


def emit_tex(
    network: Network,
    settings: Settings | None = None,
    *,
    standalone: bool = False,
    clip: ClipRect | None = None,
) -> str:
    """
    tikz-network source for a network.

    With ``standalone`` the picture is wrapped in a complete ``standalone`` document.
    """
    settings = Settings() if settings is None else settings
    unit = settings.default_unit

    lines: list[str] = []
    if standalone:
        lines += ['\\documentclass{standalone}', '\\usepackage{tikz-network}', '\\begin{document}']
    lines += _setting_lines(settings)
    lines.append(f'\\begin{{tikzpicture}}{_MULTILAYER_OPTION[settings.mode]}')
    if clip is not None:
        corners = (format_number(v) for v in (clip.x0, clip.y0, clip.x1, clip.y1))
        lines.append('\\clip ({},{}) rectangle ({},{});'.format(*corners))
    lines += _element_lines(network, unit)
    lines.append('\\end{tikzpicture}')
    if standalone:
        lines.append('\\end{document}')

    logger.opt(lazy=True).debug('{log}', log=lambda: f'Emitted {len(lines)} lines of TeX')
    return '\n'.join(lines) + '\n'

