import pytest
from netfig_cli.settings_file import apply_assignment, load_settings, split_assignment
from netfig_core import InvalidOption, Length, ParseError, RenderMode, Settings, Unit


class TestSplitAssignment:
    @pytest.mark.parametrize(
        'text, expected',
        [
            ('DefaultUnit = mm', ('DefaultUnit', 'mm')),
            ('  Coordinates.xAngle=-30 ', ('Coordinates.xAngle', '-30')),
            ('EdgeStyle.Color = green!70!blue', ('EdgeStyle.Color', 'green!70!blue')),
            ('VertexStyle.Shape =', ('VertexStyle.Shape', '')),
        ],
    )
    def test_split(self, text, expected):
        assert split_assignment(text) == expected

    @pytest.mark.parametrize('text', ['DefaultUnit', '= mm', '   '])
    def test_errors(self, text):
        with pytest.raises(ParseError, match='expected key = value'):
            split_assignment(text)


class TestLoadSettings:
    def test_file(self):
        text = '\n'.join([
            '# figure settings',
            'DefaultUnit = mm',
            '',
            'LayerDistance = -15   # measures follow the unit above',
            'Coordinates.xAngle = -30',
            'Mode = multilayer3d',
            'Color.myblue = 0,0,200',
            'EdgesNotInBG = true',
        ])
        settings = load_settings(text)
        assert settings.default_unit is Unit.MM
        assert settings.layer_distance == Length.of(-15, Unit.MM)
        assert settings.coordinates.x_angle == -30
        assert settings.mode is RenderMode.MULTILAYER_3D
        assert 'myblue' in settings.palette
        assert not settings.edges_in_bg

    def test_later_lines_win(self):
        settings = load_settings('DistanceScale = 2\nDistanceScale = 3\n')
        assert settings.distance_scale == 3

    def test_starts_from_given_settings(self):
        base = apply_assignment(Settings(), 'PlaneWidth = 8')
        settings = load_settings('PlaneHeight = 2', base)
        assert (settings.plane_width, settings.plane_height) == (Length.of(8), Length.of(2))

    def test_empty(self):
        assert load_settings('# nothing\n\n') == Settings()

    def test_error_location(self):
        with pytest.raises(InvalidOption) as info:
            load_settings('DefaultUnit = cm\n\nVertexStyle.Bogus = 1\n', source='fig.settings')
        assert info.value.source == 'fig.settings:3'
        assert str(info.value).startswith('fig.settings:3: Invalid option')

    def test_syntax_error_location(self):
        with pytest.raises(ParseError) as info:
            load_settings('DefaultUnit = cm\nDistanceScale\n')
        assert str(info.value) == "<settings>:2: expected key = value, got 'DistanceScale'"
