"""
Settings files: one ``key = value`` directive per line.

::

    # comments and blank lines are ignored
    DefaultUnit = cm
    Coordinates.xAngle = -30
    EdgeStyle.Color = black!75
    Color.myblue = 0,0,200
"""

from loguru import logger
from netfig_core import NetfigError, ParseError, Settings, apply_setting, parse_directive


def split_assignment(text: str) -> tuple[str, str]:
    """``'key = value'`` -> ``('key', 'value')``"""
    key, sep, value = text.partition('=')
    key = key.strip()
    if not sep or not key:
        raise ParseError(f'expected key = value, got {text.strip()!r}')
    return key, value.strip()


def apply_assignment(settings: Settings, text: str) -> Settings:
    """Apply a single ``key = value`` directive, measures read in the current default unit"""
    key, value = split_assignment(text)
    return apply_setting(settings, parse_directive(key, value, settings.default_unit))


def load_settings(
    text: str, settings: Settings | None = None, *, source: str = '<settings>'
) -> Settings:
    """
    Apply every directive of a settings file, top to bottom.

    Errors carry ``source:line`` as their origin.
    """
    settings = Settings() if settings is None else settings
    count = 0
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        try:
            settings = apply_assignment(settings, line)
        except NetfigError as e:
            raise e.with_source(f'{source}:{number}') from None
        count += 1

    logger.opt(lazy=True).debug('{log}', log=lambda: f'Loaded {count} settings from {source}')
    return settings
