"""
Logging setup and stage timing
"""
import logging
import sys
import time
from contextlib import contextmanager
from typing import Any, Iterator

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
HANDLER_MARK = "_doctrace_handler"

logger = logging.getLogger("src.pipeline")


def configure_logging(level: str = "INFO") -> None:
    """Send all logs to stderr; stdout stays for machine output"""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    setattr(handler, HANDLER_MARK, True)
    root = logging.getLogger()
    for existing in list(root.handlers):
        if getattr(existing, HANDLER_MARK, False):
            root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(level.upper())
    for noisy in ("httpx", "httpcore"):
        logging.getLogger(noisy).setLevel(logging.WARNING)


@contextmanager
def stage_timer(stage: str, **context: Any) -> Iterator[None]:
    """Log start and elapsed seconds of a pipeline stage"""
    details = " ".join(f"{key}={value}" for key, value in context.items())
    suffix = f" ({details})" if details else ""
    logger.info(f"{stage} started{suffix}")
    started = time.perf_counter()
    try:
        yield
    finally:
        logger.info(f"{stage} finished in {time.perf_counter() - started:.2f}s{suffix}")
