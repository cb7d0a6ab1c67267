"""
SVG output

Renders a :class:`Scene` with :mod:`xml.etree.ElementTree`. The model is y-up; a single
``scale(1,-1)`` group flips it into SVG's y-down space. One centimeter is 96/2.54 px.
"""

import xml.etree.ElementTree as ET

from loguru import logger

from .geometry import Arc, Cubic, Curve, Point2, Polyline, Segment, curve_start
from .model import Network
from .option_types import Shape
from .scene import (
    EdgePrim,
    Label,
    Paint,
    PlanePrim,
    Scene,
    Stroke,
    TextPrim,
    VertexPrim,
    map_fontsize,
    scene_build,
)
from .settings import Settings
from .units import PX_PER_CM

__all__ = ['SVG_NS', 'XLINK_NS', 'map_fontsize', 'render_network_svg', 'render_svg']

SVG_NS = 'http://www.w3.org/2000/svg'
XLINK_NS = 'http://www.w3.org/1999/xlink'
ET.register_namespace('', SVG_NS)
ET.register_namespace('xlink', XLINK_NS)

FONT_FAMILY = 'serif'


def _q(tag: str) -> str:
    return f'{{{SVG_NS}}}{tag}'


def _num(value: float) -> str:
    text = f'{value:.6f}'.rstrip('0').rstrip('.')
    return '0' if text in ('-0', '') else text


def _px(value: float) -> str:
    return _num(value * PX_PER_CM)


def _xy(point: Point2) -> str:
    return f'{_px(point.x)} {_px(point.y)}'


def _fill_attrs(paint: Paint | None) -> dict[str, str]:
    if paint is None:
        return {'fill': 'none'}
    attrs = {'fill': paint.color.hex}
    if paint.opacity != 1:
        attrs['fill-opacity'] = _num(paint.opacity)
    return attrs


def _stroke_attrs(stroke: Stroke | None) -> dict[str, str]:
    if stroke is None:
        return {'stroke': 'none'}
    attrs = {'stroke': stroke.color.hex, 'stroke-width': _px(stroke.width)}
    if stroke.opacity != 1:
        attrs['stroke-opacity'] = _num(stroke.opacity)
    return attrs


def path_data(curve: Curve) -> str:
    """``d`` attribute of a curve in model px"""
    start = curve_start(curve)
    match curve:
        case Segment(_, b):
            return f'M {_xy(start)} L {_xy(b)}'
        case Arc(_, radius, _, sweep):
            end = curve.point(curve.end_angle)
            large = 1 if abs(sweep) > 180 else 0
            # y-up user space: positive sweep is counter-clockwise
            direction = 1 if sweep > 0 else 0
            r = _px(radius)
            return f'M {_xy(start)} A {r} {r} 0 {large} {direction} {_xy(end)}'
        case Cubic(_, p1, p2, p3):
            return f'M {_xy(start)} C {_xy(p1)} {_xy(p2)} {_xy(p3)}'
        case Polyline(points):
            return f'M {_xy(start)} ' + ' '.join(f'L {_xy(p)}' for p in points[1:])
    raise TypeError(f'Unsupported curve: {curve!r}')


def _label(parent: ET.Element, label: Label):
    """Box and text, in a group counter-flipped and rotated about the anchor point"""
    group = ET.SubElement(
        parent,
        _q('g'),
        {
            'transform': (
                f'translate({_px(label.point.x)} {_px(label.point.y)}) '
                f'scale(1 -1) rotate({_num(-label.rotation)})'
            )
        },
    )
    width, height = label.size
    center = label.center - label.point
    cx, cy = center.x, -center.y

    if label.box is not None:
        ET.SubElement(
            group,
            _q('rect'),
            {
                'x': _px(cx - width / 2),
                'y': _px(cy - height / 2),
                'width': _px(width),
                'height': _px(height),
                **_fill_attrs(label.box),
            },
        )

    text_attrs = {
        'x': _px(cx),
        'y': _px(cy),
        'font-family': FONT_FAMILY,
        'font-size': _num(label.font_px),
        'text-anchor': 'middle',
        'dominant-baseline': 'central',
        **_fill_attrs(label.paint),
    }
    if label.italic:
        text_attrs['font-style'] = 'italic'
    text = ET.SubElement(group, _q('text'), text_attrs)

    if len(label.lines) == 1:
        text.text = label.lines[0]
        return
    line_px = label.font_px * 1.2
    first = float(text_attrs['y']) - line_px * (len(label.lines) - 1) / 2
    for i, line in enumerate(label.lines):
        y = _num(first + i * line_px)
        span = ET.SubElement(text, _q('tspan'), {'x': text_attrs['x'], 'y': y})
        span.text = line


def _plane(parent: ET.Element, prim: PlanePrim):
    p00, p10, _, p01 = prim.outline.corners
    points = ' '.join(f'{_px(p.x)},{_px(p.y)}' for p in prim.outline.corners)

    if prim.fill is not None:
        fill = {'points': points, **_fill_attrs(prim.fill), 'stroke': 'none'}
        ET.SubElement(parent, _q('polygon'), fill)

    if prim.image is not None:
        a, b = p10 - p00, p00 - p01
        matrix = ' '.join(_px(v) for v in (a.x, a.y, b.x, b.y, p01.x, p01.y))
        attrs = {
            'x': '0',
            'y': '0',
            'width': '1',
            'height': '1',
            'preserveAspectRatio': 'none',
            'transform': f'matrix({matrix})',
            f'{{{XLINK_NS}}}href': prim.image,
        }
        if prim.image_opacity != 1:
            attrs['opacity'] = _num(prim.image_opacity)
        ET.SubElement(parent, _q('image'), attrs)

    if prim.grid is not None:
        for start, end in prim.outline.grid:
            ET.SubElement(
                parent,
                _q('line'),
                {
                    'x1': _px(start.x),
                    'y1': _px(start.y),
                    'x2': _px(end.x),
                    'y2': _px(end.y),
                    **_stroke_attrs(prim.grid),
                },
            )

    if prim.border is not None:
        border = {'points': points, 'fill': 'none', **_stroke_attrs(prim.border)}
        ET.SubElement(parent, _q('polygon'), border)


def _edge(parent: ET.Element, prim: EdgePrim):
    attrs = {'d': path_data(prim.curve), 'fill': 'none', **_stroke_attrs(prim.stroke)}
    ET.SubElement(parent, _q('path'), attrs)
    if prim.arrow is not None:
        points = ' '.join(f'{_px(p.x)},{_px(p.y)}' for p in prim.arrow)
        ET.SubElement(
            parent,
            _q('polygon'),
            {'points': points, **_fill_attrs(Paint(prim.stroke.color, prim.stroke.opacity))},
        )
    if prim.label is not None:
        _label(parent, prim.label)


def _vertex(parent: ET.Element, prim: VertexPrim):
    style = {**_fill_attrs(prim.fill), **_stroke_attrs(prim.border)}
    c, r = prim.center, prim.radius
    match prim.shape:
        case Shape.RECTANGLE:
            ET.SubElement(
                parent,
                _q('rect'),
                {
                    'x': _px(c.x - r),
                    'y': _px(c.y - r),
                    'width': _px(2 * r),
                    'height': _px(2 * r),
                    **style,
                },
            )
        case Shape.DIAMOND:
            corners = (c + Point2(r, 0), c + Point2(0, r), c - Point2(r, 0), c - Point2(0, r))
            points = ' '.join(f'{_px(p.x)},{_px(p.y)}' for p in corners)
            ET.SubElement(parent, _q('polygon'), {'points': points, **style})
        case _:
            circle = {'cx': _px(c.x), 'cy': _px(c.y), 'r': _px(r), **style}
            ET.SubElement(parent, _q('circle'), circle)
    if prim.label is not None:
        _label(parent, prim.label)


def render_svg(scene: Scene) -> str:
    """Standalone SVG 1.1 document for a scene"""
    x_min, y_min, x_max, y_max = scene.bounds
    width, height = x_max - x_min, y_max - y_min
    root = ET.Element(
        _q('svg'),
        {
            'version': '1.1',
            'width': _px(width),
            'height': _px(height),
            'viewBox': f'{_px(x_min)} {_px(-y_max)} {_px(width)} {_px(height)}',
        },
    )
    content = ET.SubElement(root, _q('g'), {'transform': 'scale(1,-1)'})

    for prim in scene.primitives:
        match prim:
            case PlanePrim():
                _plane(content, prim)
            case EdgePrim():
                _edge(content, prim)
            case VertexPrim():
                _vertex(content, prim)
            case TextPrim(label=label):
                _label(content, label)

    ET.indent(root)
    body = ET.tostring(root, encoding='unicode')
    logger.opt(lazy=True).debug(
        '{log}', log=lambda: f'Rendered SVG with {len(scene.primitives)} primitives'
    )
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body + '\n'


def render_network_svg(network: Network, settings: Settings | None = None) -> str:
    return render_svg(scene_build(network, settings))
