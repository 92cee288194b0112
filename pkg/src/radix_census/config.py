"""Runtime configuration constants."""

import os


def _positive_int_env(name: str, default: int) -> int:
    try:
        value = int(os.getenv(name, str(default)))
    except ValueError:
        return default
    return value if value > 0 else default


# Verifications run at once by `verify`. The work is pure CPU, so this only caps
# how many n values are in flight; reports are still emitted in ascending n.
THREADS = _positive_int_env("RADIX_CENSUS_THREADS", os.cpu_count() or 1)


REPORTS_DIR = os.getenv("RADIX_CENSUS_REPORTS_DIR", "reports")


# Digits handed to the output sink per write when streaming a dump.
STREAM_CHUNK_DIGITS = _positive_int_env("RADIX_CENSUS_STREAM_CHUNK", 1 << 16)


JSON_SCHEMA_VERSION = 1


APPROX_SIGNIFICANT_DIGITS = 15  # display-only complex rendering of cyclotomic values


DIGIT_DUMP_LINE_WIDTH = 80


CYCLOTOMIC_MAX_ORDER = 64


# euler_phi and everything built on it factor by trial division only.
TRIAL_DIVISION_LIMIT = 2**64
