"""
Tool configuration of the command-line driver.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Literal

from platformdirs import user_log_path

LogLevel = Literal['TRACE', 'DEBUG', 'INFO', 'SUCCESS', 'WARNING', 'ERROR', 'CRITICAL']


@dataclass
class Config:
    log_level: LogLevel = 'WARNING'  # Stderr log level
    log_dir: Path = user_log_path(appname='netfig', appauthor=False)
    log_file: str | None = None  # No file sink unless given
    log_level_file: LogLevel = 'DEBUG'

    def __post_init__(self):
        if isinstance(self.log_dir, str):
            self.log_dir = Path(self.log_dir).expanduser()

    @property
    def log_path(self) -> Path | None:
        """Log file location; relative names live in ``log_dir``"""
        if not self.log_file:
            return None
        path = Path(self.log_file).expanduser()
        return path if path.is_absolute() else self.log_dir / path
