import collections
import functools
import hashlib
import logging.config
import os
import time

import tabulate

log = logging.getLogger(__name__)
counters = collections.defaultdict(collections.Counter)


LOGGING_CONFIG = {
    "version": 1,
    "formatters": {
        "deflogic_format": {"format": "%(levelname)s %(name)s: %(message)s"},
    },
    "handlers": {
        "deflogic_console": {
            "class": "logging.StreamHandler",
            "level": "DEBUG",
            "formatter": "deflogic_format",
            "stream": "ext://sys.stderr",
        },
    },
    "loggers": {
        "deflogic": {
            "level": "WARNING",
            "handlers": ["deflogic_console"],
            "propagate": False,
        },
    },
}


@functools.lru_cache(None)
def init_logging():
    if "PYTEST_CURRENT_TEST" not in os.environ:
        logging.config.dictConfig(LOGGING_CONFIG)


def set_log_level(level):
    init_logging()
    logging.getLogger("deflogic").setLevel(level)


def sha256_digest(data: bytes):
    return hashlib.sha256(data).hexdigest()


def file_digest(path):
    with open(path, "rb") as fd:
        return sha256_digest(fd.read())


class timed:
    """Context manager recording wall time in milliseconds"""

    def __init__(self):
        self.start = None
        self.elapsed_ms = None

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed_ms = round((time.perf_counter() - self.start) * 1000.0, 3)


def counters_report():
    rows = [
        [category, key, count]
        for category in sorted(counters)
        for key, count in counters[category].most_common()
    ]
    if not rows:
        return "no counters recorded\n"
    return (
        tabulate.tabulate(rows, headers=["Category", "Event", "Count"]) + "\n"
    )
