from pathlib import Path

import pytest
from loguru import logger

DATA_DIR = Path(__file__).parent / 'data'


@pytest.fixture
def propagate_logs(caplog):
    # Forward loguru records to the standard logging handler pytest captures
    handler_id = logger.add(caplog.handler, format='{message}')
    yield caplog
    logger.remove(handler_id)


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def read_data():
    def read(name: str) -> str:
        return (DATA_DIR / name).read_text(encoding='utf-8')

    return read
