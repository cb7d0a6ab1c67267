import sys

from loguru import logger

from .config import Config


def init_logger(cfg: Config) -> list[int]:
    """
    Initialize logger.

    Removes existing handlers and adds:
    1. Stderr handler: colored, concise, at ``cfg.log_level``. Stdout stays free for output.
    2. File handler, only when ``cfg.log_file`` is set: size-based rotation and compression.

    Returns:
        ids of the added handlers, for removal once the run is over
    """
    logger.remove()
    handler_ids = [
        logger.add(
            sys.stderr,
            level=cfg.log_level,
            format=(
                '<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan>'
                ' - <level>{message}</level>'
            ),
            colorize=True,
            diagnose=False,
        )
    ]

    log_path = cfg.log_path
    if log_path is not None:
        handler_ids.append(
            logger.add(
                log_path,
                level=cfg.log_level_file,
                rotation='10 MB',
                compression='zip',
                format=(
                    '{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line}'
                    ' - {message}'
                ),
                diagnose=False,
            )
        )
    return handler_ids
