from typing import Optional

_TIME_UNITS = (
    (1.0, "s"),
    (1e-3, "ms"),
    (1e-6, "µs"),
    (1e-9, "ns"),
    (1e-12, "ps"),
)


def format_time(seconds: Optional[float]) -> str:
    """Engineering notation with ns/µs/ms auto-scaling, four significant digits"""
    if seconds is None:
        return "-"
    if seconds == 0:
        return "0 s"
    for scale, unit in _TIME_UNITS:
        if abs(seconds) >= scale:
            return f"{seconds / scale:.4g} {unit}"
    scale, unit = _TIME_UNITS[-1]
    return f"{seconds / scale:.4g} {unit}"


def format_ratio(value: Optional[float]) -> str:
    if value is None:
        return "-"
    return f"{value:.3g}x"


def format_count(value: int) -> str:
    return f"{value:,}"
