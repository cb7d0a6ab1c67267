"""
Color expressions

Parses the xcolor subset used by tikz-network (named colors, ``a!p!b`` mix chains and
``{r,g,b}`` triples) and resolves it to 8-bit RGB. The source text is kept so the TeX
backend can emit the expression exactly as written.
"""

import math
import re
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from loguru import logger

from .errors import ParseError, UnknownColor

type Channels = tuple[Fraction, Fraction, Fraction]

_TOKEN_RE = re.compile(r'[A-Za-z][A-Za-z0-9]*')
_NUMBER_RE = re.compile(r'\d+(?:\.\d*)?|\.\d+')


@dataclass(frozen=True, slots=True)
class Rgb:
    r: int
    g: int
    b: int

    def __post_init__(self):
        for name, value in (('r', self.r), ('g', self.g), ('b', self.b)):
            if not 0 <= value <= 255:
                raise ValueError(f'RGB component {name}={value} outside 0..255')

    @property
    def hex(self) -> str:
        return f'#{self.r:02x}{self.g:02x}{self.b:02x}'

    def channels(self) -> Channels:
        return Fraction(self.r), Fraction(self.g), Fraction(self.b)


@dataclass(frozen=True, slots=True)
class Named:
    token: str


@dataclass(frozen=True, slots=True)
class MixChain:
    """``base!p1!c1!p2!c2...``, folded left to right"""

    base: str
    steps: tuple[tuple[Fraction, str], ...]


@dataclass(frozen=True, slots=True)
class Triple:
    r: int
    g: int
    b: int


type ColorVariant = Named | MixChain | Triple


@dataclass(frozen=True, slots=True)
class ColorSpec:
    variant: ColorVariant
    source_text: str

    def tokens(self) -> tuple[str, ...]:
        match self.variant:
            case Named(token):
                return (token,)
            case MixChain(base, steps):
                return (base, *(token for _, token in steps))
            case _:
                return ()


BASE_PALETTE: Mapping[str, Rgb] = MappingProxyType({
    'red': Rgb(255, 0, 0),
    'green': Rgb(0, 255, 0),
    'blue': Rgb(0, 0, 255),
    'black': Rgb(0, 0, 0),
    'white': Rgb(255, 255, 255),
    'gray': Rgb(128, 128, 128),
    'orange': Rgb(255, 128, 0),
    'yellow': Rgb(255, 255, 0),
    'cyan': Rgb(0, 255, 255),
    'magenta': Rgb(255, 0, 255),
    'purple': Rgb(191, 0, 64),
    'brown': Rgb(191, 128, 64),
    'lime': Rgb(191, 255, 0),
    'olive': Rgb(128, 128, 0),
    'pink': Rgb(255, 191, 191),
    'teal': Rgb(0, 128, 128),
    'violet': Rgb(128, 0, 128),
    'darkgray': Rgb(64, 64, 64),
    'lightgray': Rgb(191, 191, 191),
    # tikz-network's vertex and plane fill; the package does not publish its value
    'vertexfill': Rgb(191, 191, 191),
})


def parse_color(text: str, palette: Mapping[str, Rgb] | None = None) -> ColorSpec:
    """
    Parse a color expression.

    ``red`` gives :class:`Named`, ``green!70!blue`` a :class:`MixChain` and
    ``{127,201,127}`` a :class:`Triple`. A chain ending in a percentage mixes with white,
    as xcolor does (``black!75`` is ``black!75!white``).
    """
    palette = BASE_PALETTE if palette is None else palette
    source = text.strip()
    if not source:
        raise ParseError('empty color expression')

    if source.startswith('{'):
        return ColorSpec(_parse_triple(source), source)

    parts = source.split('!')
    offsets = []
    offset = text.index(source)
    for part in parts:
        offsets.append(offset)
        offset += len(part) + 1

    tokens = parts[0::2]
    percents = parts[1::2]
    for token, at in zip(tokens, offsets[0::2]):
        if not _TOKEN_RE.fullmatch(token):
            raise ParseError(f'malformed color name {token!r}', at)
        if token not in palette:
            raise ParseError(f'unknown color {token!r}', at)

    if not percents:
        return ColorSpec(Named(tokens[0]), source)

    if len(percents) == len(tokens):
        tokens.append('white')

    steps = []
    for percent, token, at in zip(percents, tokens[1:], offsets[1::2]):
        if not _NUMBER_RE.fullmatch(percent):
            raise ParseError(f'malformed percentage {percent!r}', at)
        value = Fraction(percent)
        if value > 100:
            raise ParseError(f'percentage {percent} above 100', at)
        steps.append((value, token))

    return ColorSpec(MixChain(tokens[0], tuple(steps)), source)


def _parse_triple(source: str) -> Triple:
    if not source.endswith('}'):
        raise ParseError('unterminated RGB list', len(source))
    cells = source[1:-1].split(',')
    if len(cells) != 3:
        raise ParseError(f'RGB list needs 3 components, got {len(cells)}', 0)

    values = []
    for cell in cells:
        cell = cell.strip()
        if not cell.isdigit():
            raise ParseError(f'RGB component {cell!r} is not an integer', source.index(cell))
        value = int(cell)
        if value > 255:
            raise ParseError(f'RGB component {value} outside 0..255', source.index(cell))
        values.append(value)
    return Triple(*values)


def lookup(token: str, palette: Mapping[str, Rgb]) -> Rgb:
    try:
        return palette[token]
    except KeyError as e:
        raise UnknownColor(token) from e


def mix(a: Channels, percent: Fraction, b: Channels) -> Channels:
    """``percent`` % of ``a`` plus the rest of ``b``, per channel and exact"""
    p = Fraction(percent) / 100
    return tuple(p * x + (1 - p) * y for x, y in zip(a, b))  # type: ignore[return-value]


def fold_channels(spec: ColorSpec, palette: Mapping[str, Rgb] | None = None) -> Channels:
    """Unrounded channels of a color expression"""
    palette = BASE_PALETTE if palette is None else palette
    match spec.variant:
        case Triple(r, g, b):
            return Fraction(r), Fraction(g), Fraction(b)
        case Named(token):
            return lookup(token, palette).channels()
        case MixChain(base, steps):
            acc = lookup(base, palette).channels()
            for percent, token in steps:
                acc = mix(acc, percent, lookup(token, palette).channels())
            return acc
    raise TypeError(f'Unsupported color variant: {spec.variant!r}')


def round_channels(channels: Channels) -> Rgb:
    # Half away from zero; every channel is non-negative here
    return Rgb(*(math.floor(c + Fraction(1, 2)) for c in channels))


def resolve_rgb(spec: ColorSpec, palette: Mapping[str, Rgb] | None = None) -> Rgb:
    result = round_channels(fold_channels(spec, palette))
    logger.opt(lazy=True).trace(
        '{log}', log=lambda: f'Resolved color {spec.source_text!r} -> {result.hex}'
    )
    return result


def triple_spec(rgb: tuple[int, int, int]) -> ColorSpec:
    r, g, b = rgb
    return ColorSpec(Triple(r, g, b), f'{{{r},{g},{b}}}')
