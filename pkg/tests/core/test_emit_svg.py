import math
import xml.etree.ElementTree as ET

import pytest
from netfig_core import (
    EdgeSpec,
    Length,
    PlaneSpec,
    RenderMode,
    SetMode,
    Settings,
    TextSpec,
    VertexSpec,
    apply_setting,
    build_network,
    parse_color,
    read_edges,
    read_vertices,
    render_network_svg,
)
from netfig_core.emit_svg import SVG_NS, XLINK_NS
from netfig_core.units import PX_PER_CM

NS = {'svg': SVG_NS}


def _svg(*args, **kwargs) -> ET.Element:
    return ET.fromstring(render_network_svg(build_network(*args, **kwargs)))


def _cm(value: str) -> float:
    return float(value) / PX_PER_CM


def _arc_apex(d: str) -> tuple[float, float]:
    """Farthest point from the chord of a single small-arc ``M ... A ...`` path, in cm"""
    m, x0, y0, a, rx, _ry, _rot, large, sweep, x1, y1 = d.split()
    assert (m, a, large) == ('M', 'A', '0')
    x0, y0, x1, y1, r = (_cm(v) for v in (x0, y0, x1, y1, rx))

    mx, my = (x0 + x1) / 2, (y0 + y1) / 2
    vx, vy = x1 - x0, y1 - y0
    half = math.hypot(vx, vy) / 2
    h = math.sqrt(r * r - half * half)
    sign = -1 if large == sweep else 1
    cx = mx + sign * h * -vy / (2 * half)
    cy = my + sign * h * vx / (2 * half)

    k = r / math.hypot(mx - cx, my - cy)
    return cx + (mx - cx) * k, cy + (my - cy) * k


class TestDocument:
    def test_well_formed(self):
        root = _svg([VertexSpec('a', size=Length.of('.6'))])
        assert root.tag == f'{{{SVG_NS}}}svg'
        assert root.get('version') == '1.1'
        x, y, width, height = (_cm(v) for v in root.get('viewBox').split())
        assert (x, y, width, height) == pytest.approx((-0.55, -0.55, 1.1, 1.1))
        assert _cm(root.get('width')) == pytest.approx(1.1)

    def test_flip_group(self):
        root = _svg([VertexSpec('a')])
        (group,) = root.findall('svg:g', NS)
        assert group.get('transform') == 'scale(1,-1)'

    def test_deterministic(self, read_data):
        vertices = read_vertices(read_data('vertices.csv'))
        edges = read_edges(read_data('edges.csv'))
        network = build_network(vertices, edges)
        assert render_network_svg(network) == render_network_svg(network)

    def test_xml_declaration(self):
        text = render_network_svg(build_network())
        assert text.startswith('<?xml version="1.0" encoding="UTF-8"?>\n<svg')


class TestVertices:
    def test_circle(self):
        root = _svg([VertexSpec('a', x=Length.of(1), color=parse_color('red'), opacity=0.5)])
        circle = root.find('.//svg:circle', NS)
        assert _cm(circle.get('cx')) == pytest.approx(1.0)
        assert _cm(circle.get('r')) == pytest.approx(0.3)
        assert circle.get('fill') == '#ff0000'
        assert circle.get('fill-opacity') == '0.5'
        assert circle.get('stroke') == '#000000'

    @pytest.mark.parametrize('shape, tag', [('rectangle', 'rect'), ('diamond', 'polygon')])
    def test_shapes(self, shape, tag):
        root = _svg([VertexSpec('a', shape=shape)])
        assert root.find(f'.//svg:{tag}', NS) is not None
        assert root.find('.//svg:circle', NS) is None

    def test_label(self):
        root = _svg([VertexSpec('a', label='Alice')])
        text = root.find('.//svg:text', NS)
        assert text.text == 'Alice'
        assert text.get('text-anchor') == 'middle'
        assert text.get('font-style') is None

    def test_math_label_is_italic(self):
        root = _svg([VertexSpec('a', label='$x_1$', math=True)])
        text = root.find('.//svg:text', NS)
        assert text.text == 'x_1'
        assert text.get('font-style') == 'italic'


class TestEdges:
    def test_arc_apex(self):
        """A 45 degree bend between (0,0) and (2,0) peaks at (1, sqrt(2) - 1)"""
        root = _svg(
            [VertexSpec('a', pseudo=True), VertexSpec('b', x=Length.of(2), pseudo=True)],
            [EdgeSpec('a', 'b', bend=45)],
        )
        (path,) = root.findall('.//svg:path', NS)
        assert path.get('fill') == 'none'
        apex = _arc_apex(path.get('d'))
        assert apex == pytest.approx((1.0, math.sqrt(2) - 1), abs=1e-6)

    def test_straight_edge(self):
        root = _svg(
            [VertexSpec('a'), VertexSpec('b', x=Length.of(3))],
            [EdgeSpec('a', 'b', opacity=0.25)],
        )
        path = root.find('.//svg:path', NS)
        m, x0, _y0, line, x1, _y1 = path.get('d').split()
        assert (m, line) == ('M', 'L')
        assert (_cm(x0), _cm(x1)) == pytest.approx((0.3, 2.7))
        assert path.get('stroke-opacity') == '0.25'

    def test_arrow_head(self):
        root = _svg(
            [VertexSpec('a'), VertexSpec('b', x=Length.of(3))],
            [EdgeSpec('a', 'b', direct=True)],
        )
        group = root.find('svg:g', NS)
        tags = [child.tag.removeprefix(f'{{{SVG_NS}}}') for child in group]
        assert tags == ['path', 'polygon', 'circle', 'circle']

    def test_label_box(self):
        root = _svg(
            [VertexSpec('a'), VertexSpec('b', x=Length.of(3))],
            [EdgeSpec('a', 'b', label='ab')],
        )
        box = root.find('.//svg:g/svg:g/svg:rect', NS)
        assert box.get('fill') == '#ffffff'
        assert root.find('.//svg:g/svg:g/svg:text', NS).text == 'ab'

    @pytest.mark.parametrize('mode', [RenderMode.FLAT, RenderMode.MULTILAYER])
    def test_coincident_endpoints_still_render(self, read_data, mode):
        network = build_network(
            read_vertices(read_data('ml_vertices.csv')), read_edges(read_data('ml_edges.csv'))
        )
        root = ET.fromstring(render_network_svg(network, apply_setting(Settings(), SetMode(mode))))
        assert len(root.findall('.//svg:circle', NS)) == 8
        assert len(root.findall('.//svg:path', NS)) == 9


class TestPlanes:
    def test_fill_grid_and_border(self):
        root = _svg(plane_specs=[PlaneSpec(grid=Length.of(1))])
        polygons = root.findall('.//svg:polygon', NS)
        assert [p.get('stroke') for p in polygons][0] == 'none'
        assert polygons[-1].get('fill') == 'none'
        assert root.findall('.//svg:line', NS)

    def test_no_fill(self):
        root = _svg(plane_specs=[PlaneSpec(no_fill=True, no_border=True)])
        assert root.findall('.//svg:polygon', NS) == []

    def test_image(self):
        root = _svg(plane_specs=[PlaneSpec(image='map.png')])
        image = root.find('.//svg:image', NS)
        assert image.get(f'{{{XLINK_NS}}}href') == 'map.png'
        assert image.get('preserveAspectRatio') == 'none'


class TestTexts:
    def test_wrapped_lines(self):
        root = _svg(text_specs=[TextSpec('one two three four', width=Length.of('.5'))])
        spans = root.findall('.//svg:tspan', NS)
        assert [s.text for s in spans] == ['one', 'two', 'three', 'four']

    def test_rotation(self):
        root = _svg(text_specs=[TextSpec('hi', rotation=30)])
        group = root.find('.//svg:g/svg:g', NS)
        assert group.get('transform').endswith('scale(1 -1) rotate(-30)')
