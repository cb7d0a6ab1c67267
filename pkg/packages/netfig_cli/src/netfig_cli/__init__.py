import tomllib
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

from loguru import logger


def get_version() -> str:
    toml_path = Path(__file__).resolve().parent.parent.parent / 'pyproject.toml'
    if toml_path.exists():
        with open(toml_path, 'rb') as f:
            return tomllib.load(f).get('project', {}).get('version', '0.1.0')

    try:
        return version('netfig-cli')
    except PackageNotFoundError as e:
        logger.warning(f'Failed to get version: {e}')
        return 'unknown'


__version__ = get_version()
