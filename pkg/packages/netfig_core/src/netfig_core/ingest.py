"""
CSV tables for ``\\Vertices`` and ``\\Edges``

The first row names the columns; only ``id`` (vertices) or ``u``/``v`` (edges) are
required, every other recognised column is optional and empty cells mean "not given".
Cells are comma separated and whitespace trimmed. Brace groups such as ``{0,-1}`` may
contain commas and are kept together.
"""

import csv
from collections.abc import Collection, Iterable, Iterator, Mapping
from dataclasses import dataclass, replace
from typing import Any, Self

from loguru import logger

from .color import Rgb, parse_color
from .errors import (
    BooleanCellMissing,
    DuplicateVertexId,
    InvalidOption,
    MissingColumn,
    NetfigError,
    ParseError,
    UnknownEndpoint,
)
from .model import (
    Angle,
    Center,
    EdgeSpec,
    Keyword,
    LabelPosition,
    Point,
    VertexRef,
    VertexSpec,
    Waypoint,
    parse_position,
)
from .option_types import Unit
from .units import parse_length

# column -> (spec field, value kind), in tikz-network option order
_VERTEX_COLUMNS: dict[str, tuple[str, str]] = {
    'x': ('x', 'length'),
    'y': ('y', 'length'),
    'size': ('size', 'length'),
    'color': ('color', 'color'),
    'opacity': ('opacity', 'number'),
    'shape': ('shape', 'text'),
    'label': ('label', 'text'),
    'fontsize': ('fontsize', 'fontsize'),
    'fontcolor': ('fontcolor', 'color'),
    'fontscale': ('fontscale', 'number'),
    'position': ('position', 'position'),
    'distance': ('distance', 'length'),
    'style': ('style', 'text'),
    'layer': ('layer', 'integer'),
}
_VERTEX_FLAGS: dict[str, str] = {
    'nolabel': 'no_label',
    'idaslabel': 'id_as_label',
    'math': 'math',
    'rgb': 'rgb_mode',
    'pseudo': 'pseudo',
}

_EDGE_COLUMNS: dict[str, tuple[str, str]] = {
    'lw': ('lw', 'pt_length'),
    'color': ('color', 'color'),
    'opacity': ('opacity', 'number'),
    'bend': ('bend', 'number'),
    'label': ('label', 'text'),
    'fontsize': ('fontsize', 'fontsize'),
    'fontcolor': ('fontcolor', 'color'),
    'fontscale': ('fontscale', 'number'),
    'position': ('position', 'position'),
    'distance': ('distance', 'number'),
    'style': ('style', 'text'),
    'path': ('path', 'path'),
    'loopsize': ('loopsize', 'length'),
    'loopposition': ('loopposition', 'number'),
    'loopshape': ('loopshape', 'number'),
}
_EDGE_FLAGS: dict[str, str] = {
    'direct': 'direct',
    'math': 'math',
    'rgb': 'rgb_mode',
    'notinbg': 'not_in_bg',
    'nolabel': 'no_label',
}

_CHANNELS = ('r', 'g', 'b')


def _merge_braced(cells: Iterable[str]) -> list[str]:
    """Re-join cells that were split inside a ``{...}`` group"""
    merged: list[str] = []
    pending: list[str] = []
    depth = 0
    for cell in cells:
        pending.append(cell)
        depth += cell.count('{') - cell.count('}')
        if depth <= 0:
            merged.append(','.join(pending))
            pending = []
            depth = 0
    if pending:
        raise ParseError('unbalanced braces')
    return merged


@dataclass(frozen=True, slots=True)
class TableFile:
    headers: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    @classmethod
    def parse(cls, text: str) -> Self:
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines:
            return cls((), ())

        reader = csv.reader(lines, delimiter=',', quoting=csv.QUOTE_NONE)
        records = []
        for number, raw in enumerate(reader):
            try:
                cells = _merge_braced(raw)
            except ParseError as e:
                raise ParseError(e.reason, row=number or None) from e
            records.append(tuple(cell.strip() for cell in cells))

        headers = tuple(h.lower() for h in records[0])
        rows = records[1:]
        for number, row in enumerate(rows, start=1):
            if len(row) != len(headers):
                raise ParseError(f'expected {len(headers)} cells, found {len(row)}', row=number)
        return cls(headers, tuple(rows))

    def records(self) -> Iterator[tuple[int, dict[str, str]]]:
        """Rows as ``(row number, {header: cell})``, numbered from 1"""
        for number, row in enumerate(self.rows, start=1):
            yield number, dict(zip(self.headers, row))


def parse_bool(cell: str, row: int, column: str) -> bool:
    match cell.strip().lower():
        case 'true':
            return True
        case 'false':
            return False
        case '':
            raise BooleanCellMissing(row, column)
        case _:
            raise ParseError(f'expected true or false, got {cell!r}', row=row, column=column)


def parse_path(text: str, default_unit: Unit | str = Unit.CM) -> tuple[Waypoint, ...]:
    """``{A,{0,-1},C,B}``: vertex ids and ``{x,y}`` coordinates"""
    body = text.strip()
    if body.startswith('{') and body.endswith('}'):
        body = body[1:-1]
    waypoints: list[Waypoint] = []
    for item in _merge_braced(body.split(',')):
        item = item.strip()
        if item.startswith('{'):
            coords = item.strip('{}').split(',')
            if len(coords) != 2:
                raise ParseError(f'path coordinate {item!r} needs two values')
            waypoints.append(
                Point(parse_length(coords[0], default_unit), parse_length(coords[1], default_unit))
            )
        elif item:
            waypoints.append(VertexRef(item))
        else:
            raise ParseError('empty path entry')
    return tuple(waypoints)


def _convert(kind: str, cell: str, default_unit: Unit, palette: Mapping[str, Rgb] | None) -> Any:
    match kind:
        case 'length':
            return parse_length(cell, default_unit)
        case 'pt_length':
            return parse_length(cell, Unit.PT)
        case 'color':
            return parse_color(cell, palette)
        case 'number':
            try:
                return float(cell)
            except ValueError as e:
                raise ParseError(f'{cell!r} is not a number') from e
        case 'integer':
            try:
                return int(cell)
            except ValueError as e:
                raise ParseError(f'{cell!r} is not an integer') from e
        case 'fontsize':
            return cell.removeprefix('\\')
        case 'position':
            return parse_position(cell, default_unit)
        case 'path':
            return parse_path(cell, default_unit)
        case _:
            return cell


def _check_headers(
    table: TableFile,
    required: tuple[str, ...],
    columns: Mapping[str, Any],
    flags: Mapping[str, str],
):
    for name in required:
        if name not in table.headers:
            raise MissingColumn(name)

    present = [c for c in _CHANNELS if c in table.headers]
    if present and len(present) != len(_CHANNELS):
        missing = next(c for c in _CHANNELS if c not in present)
        raise MissingColumn(missing.upper())

    known = {*required, *columns, *flags, *_CHANNELS}
    for header in table.headers:
        if header not in known:
            logger.warning(f'Ignoring unknown column {header!r}')


def _row_options(
    number: int,
    record: dict[str, str],
    columns: Mapping[str, tuple[str, str]],
    flags: Mapping[str, str],
    default_unit: Unit,
    palette: Mapping[str, Rgb] | None,
) -> dict[str, Any]:
    options: dict[str, Any] = {}
    for header, (name, kind) in columns.items():
        cell = record.get(header, '')
        if not cell:
            continue
        try:
            options[name] = _convert(kind, cell, default_unit, palette)
        except ParseError as e:
            raise ParseError(e.reason, row=number, column=header) from e

    for header, name in flags.items():
        if header in record:
            options[name] = parse_bool(record[header], number, header)

    if all(c in record for c in _CHANNELS):
        cells = [record[c] for c in _CHANNELS]
        if any(cells):
            rgb = []
            for channel, cell in zip(_CHANNELS, cells):
                if not cell.isdigit() or int(cell) > 255:
                    raise ParseError(
                        f'expected an integer in 0..255, got {cell!r}',
                        row=number,
                        column=channel.upper(),
                    )
                rgb.append(int(cell))
            options['rgb'] = tuple(rgb)
    return options


def _validated[S: (VertexSpec, EdgeSpec)](spec: S, number: int) -> S:
    try:
        spec.validate()
    except InvalidOption as e:
        raise ParseError(e.reason, row=number, column=e.field) from e
    return spec


def read_vertices(
    table_text: str,
    *,
    default_unit: Unit = Unit.CM,
    palette: Mapping[str, Rgb] | None = None,
) -> list[VertexSpec]:
    """One :class:`VertexSpec` per row of a vertex table"""
    table = TableFile.parse(table_text)
    if not table.headers:
        raise MissingColumn('id')
    _check_headers(table, ('id',), _VERTEX_COLUMNS, _VERTEX_FLAGS)

    specs: list[VertexSpec] = []
    seen: set[str] = set()
    for number, record in table.records():
        vertex_id = record['id']
        options = _row_options(
            number, record, _VERTEX_COLUMNS, _VERTEX_FLAGS, default_unit, palette
        )
        spec = _validated(VertexSpec(vertex_id, **options), number)
        if vertex_id in seen:
            raise DuplicateVertexId(vertex_id)
        seen.add(vertex_id)
        specs.append(spec)

    logger.opt(lazy=True).debug('{log}', log=lambda: f'Read {len(specs)} vertices')
    return specs


def read_edges(
    table_text: str,
    known_ids: Collection[str] | None = None,
    *,
    default_unit: Unit = Unit.CM,
    palette: Mapping[str, Rgb] | None = None,
) -> list[EdgeSpec]:
    """
    One :class:`EdgeSpec` per row of an edge table.

    When ``known_ids`` is given every endpoint must be one of them.
    """
    table = TableFile.parse(table_text)
    if not table.headers:
        raise MissingColumn('u')
    _check_headers(table, ('u', 'v'), _EDGE_COLUMNS, _EDGE_FLAGS)

    specs: list[EdgeSpec] = []
    for number, record in table.records():
        u, v = record['u'], record['v']
        if known_ids is not None:
            for endpoint in (u, v):
                if endpoint not in known_ids:
                    raise UnknownEndpoint(f'in row {number}', endpoint)
        options = _row_options(number, record, _EDGE_COLUMNS, _EDGE_FLAGS, default_unit, palette)
        specs.append(_validated(EdgeSpec(u, v, **options), number))

    logger.opt(lazy=True).debug('{log}', log=lambda: f'Read {len(specs)} edges')
    return specs


def _number_cell(value: float) -> str:
    return f'{value:.12g}'


def _position_cell(position: LabelPosition, unit: Unit) -> str:
    match position:
        case Center():
            return 'center'
        case Keyword(token, None):
            return token
        case Keyword(token, offset):
            return f'{token}={_number_cell(offset.to(unit))}{unit.value}'
        case Angle(degrees):
            return _number_cell(degrees)
    raise TypeError(f'Unsupported position: {position!r}')


def _path_cell(path: tuple[Waypoint, ...], unit: Unit) -> str:
    items = []
    for waypoint in path:
        match waypoint:
            case VertexRef(vertex_id):
                items.append(vertex_id)
            case Point(x, y):
                items.append(f'{{{_number_cell(x.to(unit))},{_number_cell(y.to(unit))}}}')
    return '{' + ','.join(items) + '}'


def _cell(kind: str, value: Any, unit: Unit) -> str:
    if value is None:
        return ''
    match kind:
        case 'length':
            return _number_cell(value.to(unit))
        case 'pt_length':
            return _number_cell(value.to(Unit.PT))
        case 'color':
            return value.source_text
        case 'number':
            return _number_cell(value)
        case 'position':
            return _position_cell(value, unit)
        case 'path':
            return _path_cell(value, unit)
        case _:
            return str(value)


def _write_table(
    key_columns: tuple[str, ...],
    specs: Iterable[VertexSpec | EdgeSpec],
    columns: Mapping[str, tuple[str, str]],
    flags: Mapping[str, str],
    unit: Unit,
) -> str:
    headers = [*key_columns, *columns, *flags, *_CHANNELS]
    lines = [','.join(headers)]
    for spec in specs:
        cells = [getattr(spec, key) for key in key_columns]
        cells += [_cell(kind, getattr(spec, name), unit) for name, kind in columns.values()]
        cells += ['true' if getattr(spec, name) else 'false' for name in flags.values()]
        cells += [str(c) for c in spec.rgb] if spec.rgb is not None else ['', '', '']
        lines.append(','.join(cells))
    return '\n'.join(lines) + '\n'


def write_vertices(specs: Iterable[VertexSpec], default_unit: Unit = Unit.CM) -> str:
    """Canonical vertex table: every column in option order, lengths in ``default_unit``"""
    return _write_table(('id',), specs, _VERTEX_COLUMNS, _VERTEX_FLAGS, Unit(default_unit))


def write_edges(specs: Iterable[EdgeSpec], default_unit: Unit = Unit.CM) -> str:
    return _write_table(('u', 'v'), specs, _EDGE_COLUMNS, _EDGE_FLAGS, Unit(default_unit))


# Options of \Vertices[...] / \Edges[...] that override every row of the file
_VERTEX_BULK = {'size': ('size', 'length'), 'color': ('color', 'color')}
_VERTEX_BULK |= {'opacity': ('opacity', 'number'), 'style': ('style', 'text')}
_EDGE_BULK = {'lw': ('lw', 'pt_length'), 'color': ('color', 'color')}
_EDGE_BULK |= {'opacity': ('opacity', 'number'), 'style': ('style', 'text')}


def _bulk_changes(
    options: Mapping[str, str],
    columns: Mapping[str, tuple[str, str]],
    flags: Mapping[str, str],
    default_unit: Unit,
    palette: Mapping[str, Rgb] | None,
) -> dict[str, Any]:
    changes: dict[str, Any] = {}
    for key, value in options.items():
        name = key.strip().lower()
        if name in columns:
            field, kind = columns[name]
            try:
                changes[field] = _convert(kind, value.strip(), default_unit, palette)
            except NetfigError as e:
                raise InvalidOption(key, e.message) from e
        elif name in flags:
            flag = value.strip().lower()
            if flag not in ('', 'true', 'false'):
                raise InvalidOption(key, f'expected true or false, got {value!r}')
            changes[flags[name]] = flag != 'false'
        else:
            raise InvalidOption(key, 'not a file-wide option')
    return changes


def apply_vertex_options(
    specs: Iterable[VertexSpec],
    options: Mapping[str, str],
    *,
    default_unit: Unit = Unit.CM,
    palette: Mapping[str, Rgb] | None = None,
) -> list[VertexSpec]:
    """Override options on every vertex of a file, like ``\\Vertices[opacity=.5]``"""
    changes = _bulk_changes(options, _VERTEX_BULK, _VERTEX_FLAGS, default_unit, palette)
    return [replace(spec, **changes) for spec in specs]


def apply_edge_options(
    specs: Iterable[EdgeSpec],
    options: Mapping[str, str],
    *,
    default_unit: Unit = Unit.CM,
    palette: Mapping[str, Rgb] | None = None,
) -> list[EdgeSpec]:
    changes = _bulk_changes(options, _EDGE_BULK, _EDGE_FLAGS, default_unit, palette)
    return [replace(spec, **changes) for spec in specs]


def filter_vertices_by_layer(specs: Iterable[VertexSpec], layer: int) -> list[VertexSpec]:
    """Vertices placed on ``layer``, like ``\\Vertices[layer=1]``"""
    return [spec for spec in specs if spec.layer == layer]


def filter_edges_by_layers(
    specs: Iterable[EdgeSpec],
    layers: Mapping[str, int | None],
    pairs: Iterable[tuple[int, int]],
) -> list[EdgeSpec]:
    """
    Edges running between the given layer pairs, like ``\\Edges[layer={1,2}]``.

    ``layers`` maps vertex ids to their layer; pairs match in either direction.
    """
    wanted = set()
    for a, b in pairs:
        wanted.update({(a, b), (b, a)})
    return [
        spec
        for spec in specs
        if (layers.get(spec.u) or 1, layers.get(spec.v) or 1) in wanted
    ]


def as_pseudo(specs: Iterable[VertexSpec]) -> list[VertexSpec]:
    """Pseudo copies of vertices, used for ``\\Edges[vertices=...]`` bindings"""
    return [replace(spec, pseudo=True) for spec in specs]

