import logging
import sys

import structlog


def resolve_level(level: str, env: str) -> int:
    if env == "development":
        return logging.DEBUG
    return getattr(logging, level.upper(), logging.WARNING)


def setup_logging(level: str = "WARNING", env: str = "production") -> None:
    """JSON log lines on stderr; stdout carries command output only."""

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer(),
        ],
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    # reconfigure on every CLI invocation, not just the first
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=resolve_level(level, env),
        force=True,
    )
