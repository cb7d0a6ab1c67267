from .color import BASE_PALETTE, ColorSpec, MixChain, Named, Rgb, Triple, parse_color, resolve_rgb
from .emit_svg import render_network_svg, render_svg
from .emit_tex import ClipRect, emit_tex, format_number
from .errors import (
    BooleanCellMissing,
    ClipConsumedCurve,
    DegenerateEdge,
    DuplicateVertexId,
    InvalidOption,
    MissingColumn,
    NetfigError,
    ParseError,
    UnknownColor,
    UnknownEndpoint,
    UnknownPathRef,
    UnsupportedShape,
)
from .geometry import (
    Arc,
    Basis,
    Cubic,
    Point2,
    Polyline,
    Segment,
    bend_curve,
    clip_curve,
    loop_curve,
    plane_polygon,
    point_at_fraction,
    project,
    projection_basis,
    vertex_label_anchor,
)
from .ingest import (
    apply_edge_options,
    apply_vertex_options,
    as_pseudo,
    filter_edges_by_layers,
    filter_vertices_by_layer,
    read_edges,
    read_vertices,
    write_edges,
    write_vertices,
)
from .model import (
    Angle,
    Center,
    EdgeSpec,
    Keyword,
    Network,
    PlaneSpec,
    Point,
    TextSpec,
    VertexRef,
    VertexSpec,
    build_network,
    parse_position,
)
from .option_types import Anchor, DirectiveID, RenderMode, Shape, Unit
from .resolve import resolve_edge, resolve_plane, resolve_text, resolve_vertex
from .scene import Scene, map_fontsize, scene_build
from .settings import (
    DefineColor,
    Directive,
    EdgesInBG,
    EdgesNotInBG,
    Registry,
    SetCoordinates,
    SetDefaultUnit,
    SetDistanceScale,
    SetEdgeStyle,
    SetLayerDistance,
    SetMode,
    SetPlaneHeight,
    SetPlaneStyle,
    SetPlaneWidth,
    SetTextStyle,
    SetVertexStyle,
    Settings,
    apply_setting,
    parse_directive,
)
from .units import Length, parse_length
