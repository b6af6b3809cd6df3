from utils.formatting import (  # noqa: F401
    format_number,
    format_value,
    json_value,
    parse_range,
    parse_window,
    format_duration,
    format_complex,
)
