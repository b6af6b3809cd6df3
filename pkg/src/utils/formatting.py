"""
Shared formatting and argument-parsing helpers.

Numbers are written with 17 significant digits so a float survives a
text round trip unchanged.
"""

import logging
import math
from enum import Enum
from typing import Optional, Tuple

import numpy as np

logger = logging.getLogger(__name__)

NUMBER_FORMAT = ".17g"


def format_number(value: float) -> str:
    """Format a float with 17 significant digits (``-0`` is written ``0``)."""
    value = float(value)
    if value == 0.0:
        value = 0.0
    return format(value, NUMBER_FORMAT)


def format_value(value: object) -> str:
    """Format a report or CSV field.

    Booleans become ``true``/``false``, enums their value, numbers use
    :func:`format_number`; anything else is passed through ``str``.
    """
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_number(value)
    return str(value)


def json_value(value: object) -> object:
    """JSON-ready form of a field: enums as their value, numpy scalars unwrapped."""
    if isinstance(value, Enum):
        return value.value
    if hasattr(value, "item"):
        return value.item()  # type: ignore[attr-defined]
    return value


def _parse_floats(text: str, label: str) -> list:
    try:
        values = [float(part) for part in text.split(",")]
    except (ValueError, AttributeError):
        raise ValueError(f"Invalid {label}: {text!r}. Must be comma-separated numbers")
    if not all(math.isfinite(v) for v in values):
        raise ValueError(f"Invalid {label}: {text!r}. Values must be finite")
    return values


def parse_range(text: str, default_steps: Optional[int] = None) -> Tuple[float, float, int]:
    """Parse ``lo,hi[,steps]`` into (lo, hi, steps)."""
    values = _parse_floats(text, "range")
    if len(values) == 2 and default_steps is not None:
        values.append(default_steps)
    if len(values) != 3:
        raise ValueError(f"Invalid range: {text!r}. Expected lo,hi[,steps]")
    lo, hi, steps = values
    if lo > hi:
        raise ValueError(f"Invalid range: {text!r}. lo must not exceed hi")
    if steps != int(steps) or steps < 2:
        raise ValueError(f"Invalid range: {text!r}. steps must be an integer >= 2")
    return lo, hi, int(steps)


def parse_window(text: str) -> Tuple[float, float, float, float]:
    """Parse ``lo_a,hi_a,lo_c,hi_c``."""
    values = _parse_floats(text, "window")
    if len(values) != 4:
        raise ValueError(f"Invalid window: {text!r}. Expected lo_a,hi_a,lo_c,hi_c")
    lo_a, hi_a, lo_c, hi_c = values
    if lo_a > hi_a or lo_c > hi_c:
        raise ValueError(f"Invalid window: {text!r}. Each lo must not exceed its hi")
    return lo_a, hi_a, lo_c, hi_c


def format_duration(seconds: float) -> str:
    """Elapsed time as ``1.23s`` or ``2m 05s``."""
    if not seconds or seconds <= 0:
        return "0.00s"
    if seconds < 60:
        return f"{seconds:.2f}s"
    mins = int(seconds // 60)
    secs = int(seconds % 60)
    return f"{mins}m {secs:02d}s"


def format_complex(value: complex) -> str:
    """``re+imj`` with both parts at 17 significant digits."""
    sign = "-" if value.imag < 0 else "+"
    return f"{format_number(value.real)}{sign}{format_number(abs(value.imag))}j"
