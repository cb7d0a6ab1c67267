import pytest
from netfig_core import Length, ParseError, Unit, parse_length
from netfig_core.units import PX_PER_CM


class TestParseLength:
    @pytest.mark.parametrize(
        'text, default_unit, expected_cm',
        [
            ('1', Unit.CM, 1.0),
            ('.6', Unit.CM, 0.6),
            ('5mm', Unit.CM, 0.5),
            ('1in', Unit.CM, 2.54),
            ('72.27pt', Unit.CM, 2.54),
            ('-1.5', Unit.CM, -1.5),
            ('2', Unit.MM, 0.2),
            (' 3 cm ', Unit.MM, 3.0),
        ],
    )
    def test_values(self, text, default_unit, expected_cm):
        assert parse_length(text, default_unit).cm == pytest.approx(expected_cm, abs=1e-12)

    @pytest.mark.parametrize('text', ['', 'abc', '1furlong', '1..2'])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_length(text)


class TestLength:
    def test_conversion(self):
        length = Length.of(10, Unit.MM)
        assert length.cm == 1.0
        assert length.to(Unit.MM) == pytest.approx(10)
        assert length.to('in') == pytest.approx(1 / 2.54)

    def test_px(self):
        assert Length(2.54).px == pytest.approx(96)
        assert Length(1).px == PX_PER_CM

    def test_negation_and_order(self):
        assert -Length(1.5) == Length(-1.5)
        assert Length(1) < Length(2)
