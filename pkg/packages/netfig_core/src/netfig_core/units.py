import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Self

from .errors import ParseError
from .option_types import Unit

# Exact size of one unit in centimeters
CM_PER_UNIT: dict[Unit, Fraction] = {
    Unit.CM: Fraction(1),
    Unit.MM: Fraction(1, 10),
    Unit.IN: Fraction(254, 100),
    Unit.PT: Fraction(254, 7227),  # TeX point, 72.27 pt per inch
}

PX_PER_CM = 96 / 2.54
PX_PER_PT = 96 / 72.27

_LENGTH_RE = re.compile(r'([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*([A-Za-z]*)')


@dataclass(frozen=True, slots=True, order=True)
class Length:
    """A measure, normalized to centimeters"""

    cm: float

    @classmethod
    def of(cls, value: float | str | Fraction, unit: Unit | str = Unit.CM) -> Self:
        factor = CM_PER_UNIT[Unit(unit)]
        return cls(float(Fraction(value) * factor))

    def to(self, unit: Unit | str) -> float:
        """Magnitude of this length expressed in ``unit``"""
        return float(Fraction(self.cm) / CM_PER_UNIT[Unit(unit)])

    @property
    def px(self) -> float:
        return self.cm * PX_PER_CM

    def __neg__(self) -> 'Length':
        return Length(-self.cm)


def parse_length(text: str, default_unit: Unit | str = Unit.CM) -> Length:
    """
    Parse a measure such as ``5mm``, ``1in`` or ``.6``.

    Bare numbers are taken in ``default_unit``.
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError('empty measure')

    match = _LENGTH_RE.fullmatch(stripped)
    if match is None:
        raise ParseError(f'not a measure: {text!r}', 0)

    number, suffix = match.groups()
    if not suffix:
        return Length.of(number, default_unit)
    try:
        unit = Unit(suffix)
    except ValueError as e:
        raise ParseError(f'unknown unit {suffix!r}', match.start(2)) from e
    return Length.of(number, unit)
