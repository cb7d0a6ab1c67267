"""
Document settings

Global state of a figure (default unit, scales, 3-D coordinate system, per-element style
defaults, background flag and render mode) and the directives that change it. Directives
are registered by :class:`DirectiveID` so the settings-file loader and programmatic callers
share one vocabulary.
"""

import re
from collections.abc import Mapping
from dataclasses import dataclass, fields, replace
from types import MappingProxyType
from typing import Any, ClassVar, Self

from loguru import logger

from .color import BASE_PALETTE, ColorSpec, Rgb, parse_color
from .errors import InvalidOption, NetfigError
from .option_types import FONT_SIZE_PT, DirectiveID, RenderMode, Unit
from .units import Length, parse_length

BLACK = parse_color('black')
WHITE = parse_color('white')
VERTEXFILL = parse_color('vertexfill')
EDGE_GRAY = parse_color('black!75')


def pt(value: float) -> Length:
    return Length.of(value, Unit.PT)


def style_key(name: str) -> str:
    return ''.join(part.capitalize() for part in name.split('_'))


def coordinate_key(name: str) -> str:
    """``x_angle`` -> ``xAngle``"""
    head, *rest = name.split('_')
    return head + ''.join(part.capitalize() for part in rest)


def _snake(key: str) -> str:
    return re.sub(r'(?<!^)(?=[A-Z])', '_', key.strip()).lower()


@dataclass(frozen=True, slots=True)
class Coordinates:
    """Screen direction (degrees) and scale of each axis of the 3-D coordinate system"""

    x_angle: float = 0.0
    y_angle: float = 90.0
    z_angle: float = 90.0
    x_length: float = 1.0
    y_length: float = 1.0
    z_length: float = 1.0

    def __post_init__(self):
        for name in ('x_angle', 'y_angle', 'z_angle'):
            value = getattr(self, name)
            if not -360 <= value <= 360:
                raise InvalidOption(coordinate_key(name), f'{value} outside [-360, 360]')
        for name in ('x_length', 'y_length', 'z_length'):
            value = getattr(self, name)
            if not value > 0:
                raise InvalidOption(coordinate_key(name), f'{value} must be positive')


@dataclass(frozen=True, slots=True)
class VertexStyle:
    shape: str = 'circle'
    inner_sep: Length = pt(2)
    outer_sep: Length = pt(0)
    min_size: Length | None = None  # 0.6 default units
    fill_color: ColorSpec = VERTEXFILL
    fill_opacity: float = 1.0
    line_width: Length = pt(1)
    line_color: ColorSpec = BLACK
    line_opacity: float = 1.0
    text_font: str = 'scriptsize'
    text_color: ColorSpec = BLACK
    text_opacity: float = 1.0
    text_rotation: float = 0.0


@dataclass(frozen=True, slots=True)
class EdgeStyle:
    line_width: Length = pt(1.5)
    color: ColorSpec = EDGE_GRAY
    opacity: float = 1.0
    arrow: str = '-latex'
    text_font: str = 'scriptsize'
    text_color: ColorSpec = BLACK
    text_opacity: float = 1.0
    text_fill_color: ColorSpec = WHITE
    text_fill_opacity: float = 1.0
    inner_sep: Length = pt(0)
    outer_sep: Length = pt(1)
    text_rotation: float = 0.0


@dataclass(frozen=True, slots=True)
class TextStyle:
    text_font: str = 'normalsize'
    text_color: ColorSpec = BLACK
    text_opacity: float = 1.0
    inner_sep: Length = pt(2)
    outer_sep: Length = pt(0)
    text_rotation: float = 0.0


@dataclass(frozen=True, slots=True)
class PlaneStyle:
    line_width: Length = pt(1.5)
    line_color: ColorSpec = BLACK
    line_opacity: float = 1.0
    fill_color: ColorSpec = VERTEXFILL
    fill_opacity: float = 0.3
    grid_line_width: Length = pt(0.5)
    grid_color: ColorSpec = BLACK
    grid_opacity: float = 0.5


type Style = VertexStyle | EdgeStyle | TextStyle | PlaneStyle


@dataclass(frozen=True, slots=True)
class Settings:
    default_unit: Unit = Unit.CM
    distance_scale: float = 1.0
    layer_distance: Length | None = None  # -2 default units
    coordinates: Coordinates = Coordinates()
    vertex_style: VertexStyle = VertexStyle()
    edge_style: EdgeStyle = EdgeStyle()
    text_style: TextStyle = TextStyle()
    plane_style: PlaneStyle = PlaneStyle()
    plane_width: Length = Length.of(5)
    plane_height: Length = Length.of(5)
    edges_in_bg: bool = True
    mode: RenderMode = RenderMode.FLAT
    colors: tuple[tuple[str, Rgb], ...] = ()

    @property
    def effective_layer_distance(self) -> Length:
        if self.layer_distance is not None:
            return self.layer_distance
        return Length.of(-2, self.default_unit)

    @property
    def effective_min_size(self) -> Length:
        if self.vertex_style.min_size is not None:
            return self.vertex_style.min_size
        return Length.of('0.6', self.default_unit)

    @property
    def palette(self) -> Mapping[str, Rgb]:
        if not self.colors:
            return BASE_PALETTE
        return MappingProxyType({**BASE_PALETTE, **dict(self.colors)})


# Style fields whose bare numbers are in the document unit rather than pt
_DEFAULT_UNIT_FIELDS = frozenset({'min_size'})


def style_keys(style: Style) -> list[str]:
    """TeX option names of a style, in table order"""
    return [style_key(f.name) for f in fields(style)]


def style_value(style: Style, key: str) -> Any:
    return getattr(style, _snake(key))


def _coerce_style_value(
    style: Style, key: str, value: Any, default_unit: Unit, palette: Mapping[str, Rgb]
) -> tuple[str, Any]:
    name = _snake(key)
    known = {f.name for f in fields(style)}
    if name not in known:
        raise InvalidOption(f'{type(style).__name__}.{key}', 'unknown style key')

    current = getattr(style, name)
    try:
        if name in _DEFAULT_UNIT_FIELDS or isinstance(current, Length):
            unit = default_unit if name in _DEFAULT_UNIT_FIELDS else Unit.PT
            coerced = _coerce_length(key, value, unit)
            if coerced.cm < 0:
                raise InvalidOption(key, f'{value} must not be negative')
            if name == 'min_size' and coerced.cm == 0:
                raise InvalidOption(key, 'must be positive')
            return name, coerced
        if isinstance(current, ColorSpec):
            if isinstance(value, ColorSpec):
                return name, value
            return name, parse_color(_expect_text(key, value), palette)
        if isinstance(current, float):
            number = _coerce_number(key, value)
            if name.endswith('opacity') and not 0 <= number <= 1:
                raise InvalidOption(key, f'{number} outside [0, 1]')
            if name.endswith('rotation') and not -360 <= number <= 360:
                raise InvalidOption(key, f'{number} outside [-360, 360]')
            return name, number
    except NetfigError as e:
        if isinstance(e, InvalidOption):
            raise
        raise InvalidOption(key, e.message) from e
    except ValueError as e:
        raise InvalidOption(key, f'cannot read {value!r}: {e}') from e

    text = _expect_text(key, value)
    if name == 'text_font':
        text = text.removeprefix('\\')
        if text not in FONT_SIZE_PT:
            raise InvalidOption(key, f'unknown font size command {text!r}')
    return name, text


def _expect_text(key: str, value: Any) -> str:
    if not isinstance(value, str):
        raise InvalidOption(key, f'expected text, got {type(value).__name__}')
    return value.strip()


def _coerce_number(key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, int | float | str):
        raise InvalidOption(key, f'expected a number, got {type(value).__name__}')
    return float(value.strip() if isinstance(value, str) else value)


def _coerce_length(key: str, value: Any, unit: Unit) -> Length:
    match value:
        case Length():
            return value
        case str():
            return parse_length(value.strip(), unit)
        case bool():
            raise InvalidOption(key, 'expected a measure, got bool')
        case int() | float():
            return Length.of(value, unit)
    raise InvalidOption(key, f'expected a measure, got {type(value).__name__}')


def _apply_style[S: (VertexStyle, EdgeStyle, TextStyle, PlaneStyle)](
    style: S, options: tuple[tuple[str, Any], ...], settings: Settings
) -> S:
    changes = dict(
        _coerce_style_value(style, key, value, settings.default_unit, settings.palette)
        for key, value in options
    )
    return replace(style, **changes)


class Directive:
    """Base class of all setting commands"""

    ID: ClassVar[DirectiveID]

    def apply(self, settings: Settings) -> Settings:
        raise NotImplementedError

    @classmethod
    def from_entry(cls, subkey: str | None, value: str, default_unit: Unit) -> Self:
        """Build the directive from one ``key = value`` settings-file entry"""
        raise NotImplementedError


class Registry:
    _MAPPING: dict[DirectiveID, type[Directive]] = {}

    @classmethod
    def register(cls, directive_id: DirectiveID):
        def wrapper(subclass):
            if not issubclass(subclass, Directive):
                raise TypeError(
                    f'The registered class {subclass.__name__} must inherit from Directive'
                )

            if directive_id in cls._MAPPING:
                logger.opt(lazy=True).warning(
                    '{log}',
                    log=lambda: f'Directive {directive_id} is registered and will be overwritten',
                )

            cls._MAPPING[directive_id] = subclass
            subclass.ID = directive_id
            logger.opt(lazy=True).trace(
                '{log}', log=lambda: f'Registered directive: {directive_id} -> {subclass.__name__}'
            )
            return subclass

        return wrapper

    @classmethod
    def get_class(cls, directive_id: DirectiveID) -> type[Directive]:
        if directive_id not in cls._MAPPING:
            raise KeyError(f'Unregistered directive: {directive_id}')
        return cls._MAPPING[directive_id]

    @classmethod
    def get_registered_types(cls) -> list[DirectiveID]:
        return list(cls._MAPPING.keys())


def _no_subkey(cls: type[Directive], subkey: str | None):
    if subkey is not None:
        raise InvalidOption(f'{cls.ID.value}.{subkey}', 'this setting takes no sub-key')


def _parse_flag(key: str, value: str) -> bool:
    match value.strip().lower():
        case 'true':
            return True
        case 'false':
            return False
        case _:
            raise InvalidOption(key, f'expected true or false, got {value!r}')


def _parse_number(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError as e:
        raise InvalidOption(key, f'{value!r} is not a number') from e


@Registry.register(DirectiveID.DefaultUnit)
@dataclass(frozen=True, slots=True)
class SetDefaultUnit(Directive):
    unit: Unit

    def apply(self, settings: Settings) -> Settings:
        return replace(settings, default_unit=Unit(self.unit))

    @classmethod
    def from_entry(cls, subkey, value, default_unit):
        _no_subkey(cls, subkey)
        try:
            return cls(Unit(value.strip()))
        except ValueError as e:
            raise InvalidOption('DefaultUnit', f'unknown unit {value!r}') from e


@Registry.register(DirectiveID.DistanceScale)
@dataclass(frozen=True, slots=True)
class SetDistanceScale(Directive):
    scale: float

    def apply(self, settings: Settings) -> Settings:
        if not self.scale > 0:
            raise InvalidOption('DistanceScale', f'{self.scale} must be positive')
        return replace(settings, distance_scale=float(self.scale))

    @classmethod
    def from_entry(cls, subkey, value, default_unit):
        _no_subkey(cls, subkey)
        return cls(_parse_number('DistanceScale', value))


@Registry.register(DirectiveID.LayerDistance)
@dataclass(frozen=True, slots=True)
class SetLayerDistance(Directive):
    distance: Length

    def apply(self, settings: Settings) -> Settings:
        return replace(settings, layer_distance=self.distance)

    @classmethod
    def from_entry(cls, subkey, value, default_unit):
        _no_subkey(cls, subkey)
        return cls(parse_length(value, default_unit))


@Registry.register(DirectiveID.Coordinates)
@dataclass(frozen=True, slots=True)
class SetCoordinates(Directive):
    """Partial update; unset axes keep their current value"""

    x_angle: float | None = None
    y_angle: float | None = None
    z_angle: float | None = None
    x_length: float | None = None
    y_length: float | None = None
    z_length: float | None = None

    def apply(self, settings: Settings) -> Settings:
        changes = {f.name: getattr(self, f.name) for f in fields(self)}
        changes = {k: float(v) for k, v in changes.items() if v is not None}
        return replace(settings, coordinates=replace(settings.coordinates, **changes))

    @classmethod
    def from_entry(cls, subkey, value, default_unit):
        if subkey is None:
            raise InvalidOption('Coordinates', 'needs a sub-key such as Coordinates.xAngle')
        name = _snake(subkey)
        if name not in {f.name for f in fields(cls)}:
            raise InvalidOption(f'Coordinates.{subkey}', 'unknown axis option')
        return cls(**{name: _parse_number(f'Coordinates.{subkey}', value)})


class _StyleDirective(Directive):
    options: tuple[tuple[str, Any], ...]
    FIELD: ClassVar[str]

    def apply(self, settings: Settings) -> Settings:
        style = getattr(settings, self.FIELD)
        return replace(settings, **{self.FIELD: _apply_style(style, self.options, settings)})

    @classmethod
    def from_entry(cls, subkey, value, default_unit):
        if subkey is None:
            raise InvalidOption(cls.ID.value, f'needs a sub-key such as {cls.ID.value}.Color')
        return cls(((subkey, value),))

    @classmethod
    def of(cls, **options: Any) -> Self:
        """Keyword form, e.g. ``SetVertexStyle.of(Shape='rectangle')``"""
        return cls(tuple(options.items()))


@Registry.register(DirectiveID.VertexStyle)
@dataclass(frozen=True, slots=True)
class SetVertexStyle(_StyleDirective):
    options: tuple[tuple[str, Any], ...]
    FIELD: ClassVar[str] = 'vertex_style'


@Registry.register(DirectiveID.EdgeStyle)
@dataclass(frozen=True, slots=True)
class SetEdgeStyle(_StyleDirective):
    options: tuple[tuple[str, Any], ...]
    FIELD: ClassVar[str] = 'edge_style'


@Registry.register(DirectiveID.TextStyle)
@dataclass(frozen=True, slots=True)
class SetTextStyle(_StyleDirective):
    options: tuple[tuple[str, Any], ...]
    FIELD: ClassVar[str] = 'text_style'


@Registry.register(DirectiveID.PlaneStyle)
@dataclass(frozen=True, slots=True)
class SetPlaneStyle(_StyleDirective):
    options: tuple[tuple[str, Any], ...]
    FIELD: ClassVar[str] = 'plane_style'


@Registry.register(DirectiveID.PlaneWidth)
@dataclass(frozen=True, slots=True)
class SetPlaneWidth(Directive):
    width: Length

    def apply(self, settings: Settings) -> Settings:
        if not self.width.cm > 0:
            raise InvalidOption('PlaneWidth', 'must be positive')
        return replace(settings, plane_width=self.width)

    @classmethod
    def from_entry(cls, subkey, value, default_unit):
        _no_subkey(cls, subkey)
        return cls(parse_length(value, default_unit))


@Registry.register(DirectiveID.PlaneHeight)
@dataclass(frozen=True, slots=True)
class SetPlaneHeight(Directive):
    height: Length

    def apply(self, settings: Settings) -> Settings:
        if not self.height.cm > 0:
            raise InvalidOption('PlaneHeight', 'must be positive')
        return replace(settings, plane_height=self.height)

    @classmethod
    def from_entry(cls, subkey, value, default_unit):
        _no_subkey(cls, subkey)
        return cls(parse_length(value, default_unit))


@Registry.register(DirectiveID.EdgesInBG)
@dataclass(frozen=True, slots=True)
class EdgesInBG(Directive):
    def apply(self, settings: Settings) -> Settings:
        return replace(settings, edges_in_bg=True)

    @classmethod
    def from_entry(cls, subkey, value, default_unit):
        _no_subkey(cls, subkey)
        return cls() if _parse_flag('EdgesInBG', value) else EdgesNotInBG()


@Registry.register(DirectiveID.EdgesNotInBG)
@dataclass(frozen=True, slots=True)
class EdgesNotInBG(Directive):
    def apply(self, settings: Settings) -> Settings:
        return replace(settings, edges_in_bg=False)

    @classmethod
    def from_entry(cls, subkey, value, default_unit):
        _no_subkey(cls, subkey)
        return cls() if _parse_flag('EdgesNotInBG', value) else EdgesInBG()


@Registry.register(DirectiveID.Mode)
@dataclass(frozen=True, slots=True)
class SetMode(Directive):
    mode: RenderMode

    def apply(self, settings: Settings) -> Settings:
        return replace(settings, mode=RenderMode(self.mode))

    @classmethod
    def from_entry(cls, subkey, value, default_unit):
        _no_subkey(cls, subkey)
        try:
            return cls(RenderMode(value.strip()))
        except ValueError as e:
            raise InvalidOption('Mode', f'unknown mode {value!r}') from e


@Registry.register(DirectiveID.Color)
@dataclass(frozen=True, slots=True)
class DefineColor(Directive):
    name: str
    rgb: Rgb

    def apply(self, settings: Settings) -> Settings:
        if not re.fullmatch(r'[A-Za-z][A-Za-z0-9]*', self.name):
            raise InvalidOption('Color', f'invalid color name {self.name!r}')
        colors = tuple((n, c) for n, c in settings.colors if n != self.name)
        return replace(settings, colors=(*colors, (self.name, self.rgb)))

    @classmethod
    def from_entry(cls, subkey, value, default_unit):
        if subkey is None:
            raise InvalidOption('Color', 'needs a color name such as Color.myblue')
        parts = value.strip().strip('{}').split(',')
        try:
            return cls(subkey, Rgb(*(int(p) for p in parts)))
        except (TypeError, ValueError) as e:
            reason = f'expected r,g,b in 0..255, got {value!r}'
            raise InvalidOption(f'Color.{subkey}', reason) from e


def apply_setting(settings: Settings, directive: Directive) -> Settings:
    """Return ``settings`` with the fields targeted by ``directive`` replaced"""
    result = directive.apply(settings)
    logger.opt(lazy=True).debug('{log}', log=lambda: f'Applied setting {directive!r}')
    return result


def parse_directive(key: str, value: str, default_unit: Unit = Unit.CM) -> Directive:
    """
    Build a directive from a settings-file entry such as ``Coordinates.xAngle = -30``.

    Measures without a unit are read in ``default_unit``.
    """
    head, _, subkey = key.strip().partition('.')
    try:
        directive_id = DirectiveID(head)
    except ValueError as e:
        raise InvalidOption(key, 'unknown setting') from e
    cls = Registry.get_class(directive_id)
    return cls.from_entry(subkey or None, value, default_unit)


def changed_fields(current: Any, default: Any) -> list[str]:
    """Names of dataclass fields that differ from ``default``"""
    return [f.name for f in fields(current) if getattr(current, f.name) != getattr(default, f.name)]
