import xml.etree.ElementTree as ET

import pytest
from netfig_cli import get_version
from netfig_cli.app import load_network, run, split_binding
from netfig_core import Settings
from netfig_core.emit_svg import SVG_NS

NS = {'svg': SVG_NS}


@pytest.fixture
def files(data_dir):
    names = ('vertices', 'edges', 'ml_vertices', 'ml_edges')
    return {name: str(data_dir / f'{name}.csv') for name in names}


class TestUsage:
    def test_no_arguments(self, capsys):
        assert run([]) == 2
        err = capsys.readouterr().err
        assert 'Usage: netfig' in err
        assert "Try 'netfig --help' for help." in err

    def test_version(self, capsys):
        assert run(['--version']) == 0
        assert capsys.readouterr().out.startswith('netfig ')

    def test_version_ignores_environment(self, monkeypatch):
        monkeypatch.setenv('NETFIG_VERSION', '9.9.9')
        assert get_version() != '9.9.9'

    @pytest.mark.parametrize(
        'args',
        [
            ['--clip', '0,0,6'],
            ['--edge-layer', '1'],
            ['--vertex-option', '=1'],
            ['--set', 'no assignment'],
            ['--format', 'pdf'],
            ['--log-level', 'LOUD'],
        ],
    )
    def test_bad_options(self, files, capsys, args):
        assert run(['--vertices', files['vertices'], *args]) == 2
        assert 'Error' in capsys.readouterr().err


class TestTexOutput:
    def test_standalone(self, files, capsys):
        args = ['--vertices', files['vertices'], '--edges', files['edges'], '--standalone']
        assert run(args) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == '\\documentclass{standalone}'
        assert lines[-1] == '\\end{document}'
        assert '\\Vertex[x=0,y=0,size=0.4,color=green,opacity=0.9,label=a]{A}' in lines
        assert '\\Edge[lw=0.5pt,color=red,opacity=1,bend=30,label=ab](A)(B)' in lines

    def test_settings_order(self, files, tmp_path, capsys):
        settings = tmp_path / 'figure.settings'
        settings.write_text('EdgesNotInBG = true\nCoordinates.xAngle = 10\n', encoding='utf-8')
        args = ['--vertices', files['vertices'], '--settings', str(settings)]
        args += ['--mode', 'multilayer', '--set', 'Coordinates.xAngle=-30']
        assert run(args) == 0
        lines = capsys.readouterr().out.splitlines()
        assert '\\SetCoordinates[xAngle=-30]' in lines
        assert '\\EdgesNotInBG' in lines
        assert '\\begin{tikzpicture}[multilayer]' in lines

    def test_clip_and_bulk_options(self, files, capsys):
        args = ['--vertices', files['vertices'], '--clip', '0,0,6,6']
        args += ['--vertex-option', 'opacity=.5', '--vertex-option', 'Pseudo']
        assert run(args) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[1] == '\\clip (0,0) rectangle (6,6);'
        vertices = [line for line in lines if line.startswith('\\Vertex')]
        assert len(vertices) == 5
        assert all('opacity=0.5' in line for line in vertices)
        assert all(',Pseudo]' in line for line in vertices)

    def test_bound_vertex_file(self, files, capsys):
        assert run(['--edges', f'{files["edges"]}@{files["vertices"]}']) == 0
        out = capsys.readouterr().out
        assert out.count('\\Vertex[') == 5
        assert out.count(',Pseudo]') == 5
        assert out.count('\\Edge[') == 6

    def test_output_file(self, files, tmp_path):
        target = tmp_path / 'figure.tex'
        assert run(['--vertices', files['vertices'], '--output', str(target)]) == 0
        assert target.read_text(encoding='utf-8').startswith('\\begin{tikzpicture}')


class TestSvgOutput:
    def test_single_layer(self, files, tmp_path):
        target = tmp_path / 'layer1.svg'
        args = ['--vertices', files['ml_vertices'], '--edges', files['ml_edges']]
        args += ['--format', 'svg', '--mode', 'multilayer3d', '--layer', '1']
        args += ['--edge-layer', '1,1', '--output', str(target)]
        assert run(args) == 0

        root = ET.parse(target).getroot()
        assert len(root.findall('.//svg:circle', NS)) == 4
        assert len(root.findall('.//svg:path', NS)) == 5

    def test_tex_only_options_warn(self, files, capsys):
        args = ['--vertices', files['vertices'], '--format', 'svg', '--standalone']
        assert run(args) == 0
        captured = capsys.readouterr()
        assert captured.out.startswith('<?xml')
        assert '--standalone and --clip only apply to TeX output' in captured.err

    @pytest.mark.parametrize('mode', [[], ['--mode', 'multilayer']])
    def test_coincident_vertices_render(self, files, capsys, mode):
        args = ['--vertices', files['ml_vertices'], '--edges', files['ml_edges']]
        assert run([*args, '--format', 'svg', *mode]) == 0
        captured = capsys.readouterr()
        assert captured.out.startswith('<?xml')
        assert 'Edge C->G: endpoints coincide, not drawn' in captured.err


class TestInputErrors:
    def test_duplicate_vertex(self, tmp_path, capsys):
        table = tmp_path / 'dup.csv'
        table.write_text('id\na\na\n', encoding='utf-8')
        assert run(['--vertices', str(table)]) == 1
        assert f"netfig: error: {table}: Duplicate vertex id: 'a'" in capsys.readouterr().err

    def test_unknown_endpoint(self, files, tmp_path, capsys):
        table = tmp_path / 'edges.csv'
        table.write_text('u,v\nA,B\nA,Z\n', encoding='utf-8')
        assert run(['--vertices', files['vertices'], '--edges', str(table)]) == 1
        assert "in row 2 references unknown vertex 'Z'" in capsys.readouterr().err

    def test_bad_setting(self, files, capsys):
        assert run(['--vertices', files['vertices'], '--set', 'Nope=1']) == 1
        assert 'netfig: error: --set: Invalid option Nope' in capsys.readouterr().err

    def test_settings_file_location(self, files, tmp_path, capsys):
        settings = tmp_path / 'bad.settings'
        settings.write_text('# header\nDistanceScale = 2\nDistanceScale = x\n', encoding='utf-8')
        assert run(['--vertices', files['vertices'], '--settings', str(settings)]) == 1
        assert f'{settings}:3:' in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert run(['--vertices', str(tmp_path / 'absent.csv')]) == 1
        assert 'netfig: error:' in capsys.readouterr().err


class TestLogging:
    def test_log_file(self, files, tmp_path):
        log_file = tmp_path / 'netfig.log'
        assert run(['--vertices', files['vertices'], '--log-file', str(log_file)]) == 0
        assert 'Read 5 vertices' in log_file.read_text(encoding='utf-8')


class TestLoadNetwork:
    def test_layer_filter_drops_edges(self, data_dir):
        network = load_network(
            [data_dir / 'ml_vertices.csv'], [str(data_dir / 'ml_edges.csv')], Settings(), layer=2
        )
        assert [v.id for v in network.vertices] == ['D', 'F', 'G', 'H']
        assert [(e.u, e.v) for e in network.edges] == [('D', 'F'), ('F', 'H'), ('D', 'G')]

    def test_edge_layers(self, data_dir):
        network = load_network(
            [data_dir / 'ml_vertices.csv'],
            [str(data_dir / 'ml_edges.csv')],
            Settings(),
            edge_layers=[(1, 2)],
        )
        assert [(e.u, e.v) for e in network.edges] == [('C', 'G'), ('E', 'H'), ('F', 'A')]

    def test_bulk_options(self, data_dir):
        network = load_network(
            [data_dir / 'vertices.csv'],
            [str(data_dir / 'edges.csv')],
            Settings(),
            edge_options={'Direct': 'true'},
        )
        assert all(e.direct for e in network.edges)

    @pytest.mark.parametrize(
        'entry, expected',
        [
            ('edges.csv', ('edges.csv', None)),
            ('edges.csv@vertices.csv', ('edges.csv', 'vertices.csv')),
            ('@vertices.csv', ('@vertices.csv', None)),
        ],
    )
    def test_split_binding(self, entry, expected):
        path, bound = split_binding(entry)
        assert (str(path), None if bound is None else str(bound)) == expected
