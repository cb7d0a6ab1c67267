import sys
from collections.abc import Iterable, Mapping, Sequence
from enum import Enum
from pathlib import Path
from typing import Annotated, get_args

import click
import typer
from loguru import logger
from netfig_core import (
    ClipRect,
    EdgeSpec,
    NetfigError,
    Network,
    RenderMode,
    SetMode,
    Settings,
    VertexSpec,
    apply_edge_options,
    apply_setting,
    apply_vertex_options,
    as_pseudo,
    build_network,
    emit_tex,
    filter_edges_by_layers,
    filter_vertices_by_layer,
    read_edges,
    read_vertices,
    render_network_svg,
)

from . import __version__
from .config import Config, LogLevel
from .i18n import _
from .settings_file import apply_assignment, load_settings, split_assignment
from .utils import init_logger

app = typer.Typer(help=_('Compile tikz-network figures to TeX or SVG'), add_completion=False)


class OutputFormat(str, Enum):
    TEX = 'tex'
    SVG = 'svg'


def version_callback(value: bool):
    if value:
        typer.echo(f'netfig {__version__}')
        raise typer.Exit()


def parse_options(items: Iterable[str], flag: str) -> dict[str, str]:
    """``['opacity=.5', 'Pseudo']`` -> ``{'opacity': '.5', 'Pseudo': ''}``; later keys win"""
    options = {}
    for item in items:
        key, _sep, value = item.partition('=')
        if not key.strip():
            raise typer.BadParameter(f'expected KEY=VALUE, got {item!r}', param_hint=flag)
        options[key.strip()] = value.strip()
    return options


def parse_layer_pair(text: str) -> tuple[int, int]:
    parts = text.strip().strip('{}').split(',')
    try:
        a, b = (int(p) for p in parts)
    except ValueError as e:
        raise typer.BadParameter(f'expected A,B, got {text!r}', param_hint='--edge-layer') from e
    return a, b


def parse_clip(text: str) -> ClipRect:
    try:
        x0, y0, x1, y1 = (float(p) for p in text.split(','))
    except ValueError as e:
        raise typer.BadParameter(f'expected X0,Y0,X1,Y1, got {text!r}', param_hint='--clip') from e
    return ClipRect(x0, y0, x1, y1)


def split_binding(entry: str) -> tuple[Path, Path | None]:
    """``edges.csv@vertices.csv`` -> edge file and the vertex file it is bound to"""
    path, sep, bound = entry.rpartition('@')
    if not sep or not path or not bound:
        return Path(entry), None
    return Path(path), Path(bound)


def _read_vertex_file(
    path: Path, settings: Settings, options: Mapping[str, str]
) -> list[VertexSpec]:
    kwargs = {'default_unit': settings.default_unit, 'palette': settings.palette}
    try:
        specs = read_vertices(path.read_text(encoding='utf-8'), **kwargs)
        if options:
            specs = apply_vertex_options(specs, options, **kwargs)
    except NetfigError as e:
        raise e.with_source(path) from e
    return specs


def _read_edge_file(
    path: Path, known_ids: set[str], settings: Settings, options: Mapping[str, str]
) -> list[EdgeSpec]:
    kwargs = {'default_unit': settings.default_unit, 'palette': settings.palette}
    try:
        specs = read_edges(path.read_text(encoding='utf-8'), known_ids, **kwargs)
        if options:
            specs = apply_edge_options(specs, options, **kwargs)
    except NetfigError as e:
        raise e.with_source(path) from e
    return specs


def load_network(
    vertex_files: Sequence[Path],
    edge_files: Sequence[str],
    settings: Settings,
    *,
    layer: int | None = None,
    edge_layers: Sequence[tuple[int, int]] = (),
    vertex_options: Mapping[str, str] | None = None,
    edge_options: Mapping[str, str] | None = None,
) -> Network:
    """
    Read vertex and edge tables into a network.

    ``layer`` keeps only the vertices of that layer; edges touching a vertex it removed are
    dropped. Vertex files bound with ``edges@vertices`` contribute pseudo vertices for ids
    not declared otherwise.
    """
    vertices: list[VertexSpec] = []
    layer_of: dict[str, int | None] = {}
    filtered_out: set[str] = set()
    for path in vertex_files:
        specs = _read_vertex_file(path, settings, vertex_options or {})
        layer_of.update((s.id, s.layer) for s in specs)
        if layer is not None:
            kept = filter_vertices_by_layer(specs, layer)
            filtered_out |= {s.id for s in specs} - {s.id for s in kept}
            specs = kept
        vertices += specs

    declared = {v.id for v in vertices}
    edges: list[EdgeSpec] = []
    for entry in edge_files:
        path, bound = split_binding(entry)
        if bound is not None:
            extra = [v for v in _read_vertex_file(bound, settings, {}) if v.id not in declared]
            layer_of.update((v.id, v.layer) for v in extra if v.id not in layer_of)
            extra = [v for v in extra if v.id not in filtered_out]
            vertices += as_pseudo(extra)
            declared |= {v.id for v in extra}
        edges += _read_edge_file(path, declared | filtered_out, settings, edge_options or {})

    if edge_layers:
        edges = filter_edges_by_layers(edges, layer_of, edge_layers)
    dropped = [e for e in edges if e.u in filtered_out or e.v in filtered_out]
    if dropped:
        logger.info(f'Skipping {len(dropped)} edges whose endpoints are on other layers')
        edges = [e for e in edges if e not in dropped]

    return build_network(vertices, edges)


@app.command()
def main(
    vertices: Annotated[
        list[Path] | None, typer.Option(help=_('Vertex table (CSV); repeatable'))
    ] = None,
    edges: Annotated[
        list[str] | None,
        typer.Option(help=_('Edge table (CSV), optionally bound as EDGES@VERTICES; repeatable')),
    ] = None,
    format_: Annotated[
        OutputFormat, typer.Option('--format', help=_('Output format'))
    ] = OutputFormat.TEX,
    output: Annotated[
        Path | None, typer.Option(help=_('Output file; standard output when omitted'))
    ] = None,
    mode: Annotated[RenderMode | None, typer.Option(help=_('Drawing mode'))] = None,
    layer: Annotated[int | None, typer.Option(help=_('Only draw vertices on this layer'))] = None,
    edge_layer: Annotated[
        list[str] | None,
        typer.Option(help=_('Only draw edges between layers A,B; repeatable')),
    ] = None,
    settings: Annotated[
        Path | None, typer.Option(help=_('Settings file with one key = value per line'))
    ] = None,
    set_: Annotated[
        list[str] | None,
        typer.Option('--set', help=_('Setting KEY=VALUE applied after the settings file')),
    ] = None,
    standalone: Annotated[
        bool, typer.Option(help=_('Wrap TeX output in a standalone document'))
    ] = False,
    vertex_option: Annotated[
        list[str] | None, typer.Option(help=_('KEY=VALUE applied to every vertex read'))
    ] = None,
    edge_option: Annotated[
        list[str] | None, typer.Option(help=_('KEY=VALUE applied to every edge read'))
    ] = None,
    clip: Annotated[
        str | None, typer.Option(help=_('Clip TeX output to X0,Y0,X1,Y1 in the default unit'))
    ] = None,
    log_level: Annotated[
        str,
        typer.Option(
            help=_('Console log level'), click_type=click.Choice(list(get_args(LogLevel)))
        ),
    ] = 'WARNING',
    log_file: Annotated[
        str | None, typer.Option(help=_('Log file name, relative to the log directory'))
    ] = None,
    version: Annotated[
        bool | None,
        typer.Option(
            '--version',
            '-v',
            help=_('Show the version and exit.'),
            callback=version_callback,
            is_eager=True,
        ),
    ] = None,
):
    """
    Compile vertex and edge tables into a tikz-network picture or an SVG drawing.
    The settings are applied in the order settings file, --mode, --set.
    """
    vertex_options = parse_options(vertex_option or (), '--vertex-option')
    edge_options = parse_options(edge_option or (), '--edge-option')
    edge_layers = [parse_layer_pair(p) for p in edge_layer or ()]
    clip_rect = parse_clip(clip) if clip is not None else None
    assignments = list(set_ or ())
    for item in assignments:
        try:
            split_assignment(item)
        except NetfigError as e:
            raise typer.BadParameter(e.message, param_hint='--set') from e

    cfg = Config(log_level=log_level, log_file=log_file)
    handler_ids = init_logger(cfg)
    try:
        figure = Settings()
        if settings is not None:
            figure = load_settings(settings.read_text(encoding='utf-8'), source=str(settings))
        if mode is not None:
            figure = apply_setting(figure, SetMode(mode))
        for item in assignments:
            try:
                figure = apply_assignment(figure, item)
            except NetfigError as e:
                raise e.with_source('--set') from e

        network = load_network(
            vertices or (),
            edges or (),
            figure,
            layer=layer,
            edge_layers=edge_layers,
            vertex_options=vertex_options,
            edge_options=edge_options,
        )

        if format_ is OutputFormat.SVG:
            if standalone or clip_rect is not None:
                logger.warning('--standalone and --clip only apply to TeX output')
            text = render_network_svg(network, figure)
        else:
            text = emit_tex(network, figure, standalone=standalone, clip=clip_rect)

        if output is None:
            typer.echo(text, nl=False)
        else:
            output.write_text(text, encoding='utf-8', newline='\n')
            logger.info(f'Wrote {format_.value} output to {output}')
    finally:
        for handler_id in handler_ids:
            logger.remove(handler_id)


def run(argv: Sequence[str] | None = None) -> int:
    """
    Run the command line and return its exit status.

    0 on success, 1 on input errors, 2 on usage errors or when no arguments are given.
    """
    args = list(sys.argv[1:] if argv is None else argv)
    command = typer.main.get_command(app)

    if not args:
        with command.make_context('netfig', []) as ctx:
            typer.echo(ctx.get_usage(), err=True)
        typer.echo(_("Try 'netfig --help' for help."), err=True)
        return 2

    try:
        return command.main(args, prog_name='netfig', standalone_mode=False) or 0
    except click.UsageError as e:
        e.show()
        return 2
    except (NetfigError, OSError) as e:
        typer.echo(f'netfig: error: {e}', err=True)
        return 1
    except click.Abort:
        return 1
