"""
Input errors raised by netfig.

Every error is a ``ValueError`` so callers that only know about bad values keep working.
"""

from typing import Self


class NetfigError(ValueError):
    """Base class for all netfig input errors"""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message
        self.source: str | None = None

    def with_source(self, source: object) -> Self:
        """Attach the file (or other origin) the offending input came from"""
        self.source = str(source)
        return self

    def __str__(self) -> str:
        if self.source:
            return f'{self.source}: {self.message}'
        return self.message


class ParseError(NetfigError):
    def __init__(
        self,
        reason: str,
        position: int | None = None,
        *,
        row: int | None = None,
        column: str | None = None,
    ):
        self.reason = reason
        self.position = position
        self.row = row
        self.column = column

        parts = []
        if row is not None:
            parts.append(f'row {row}')
        if column is not None:
            parts.append(f'column {column!r}')
        where = ', '.join(parts)
        message = f'{where}: {reason}' if where else reason
        if position is not None:
            message += f' (at character {position})'
        super().__init__(message)


class InvalidOption(NetfigError):
    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f'Invalid option {field}: {reason}')


class UnsupportedShape(InvalidOption):
    def __init__(self, shape: str):
        self.shape = shape
        super().__init__('shape', f'{shape!r} cannot be rendered as SVG')


class DuplicateVertexId(NetfigError):
    def __init__(self, vertex_id: str):
        self.vertex_id = vertex_id
        super().__init__(f'Duplicate vertex id: {vertex_id!r}')


class UnknownEndpoint(NetfigError):
    def __init__(self, edge: int | str, vertex_id: str):
        self.edge = edge
        self.vertex_id = vertex_id
        super().__init__(f'Edge {edge} references unknown vertex {vertex_id!r}')


class UnknownPathRef(NetfigError):
    def __init__(self, vertex_id: str):
        self.vertex_id = vertex_id
        super().__init__(f'Edge path references unknown vertex {vertex_id!r}')


class UnknownColor(NetfigError):
    def __init__(self, token: str):
        self.token = token
        super().__init__(f'Unknown color: {token!r}')


class MissingColumn(NetfigError):
    def __init__(self, column: str):
        self.column = column
        super().__init__(f'Missing required column: {column!r}')


class BooleanCellMissing(NetfigError):
    def __init__(self, row: int, column: str):
        self.row = row
        self.column = column
        super().__init__(f'row {row}, column {column!r}: Boolean columns need a value in every row')


class DegenerateEdge(NetfigError):
    """An edge between two distinct vertices whose endpoints coincide"""


class ClipConsumedCurve(NetfigError):
    """The vertex borders cover the whole edge curve"""
