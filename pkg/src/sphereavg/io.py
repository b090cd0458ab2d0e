"""GridFunction text files and CSV value formatting.

File format: line 1 is the offset, each following line one value, written as
an integer, a ``num/den`` rational, or a decimal. Values are read exactly.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import InvalidArgument
from .grid import GridFunction


def format_value(v) -> str:
    """Exact rationals as ``num/den`` (or an integer), reals as the shortest round-trip repr."""
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, complex):
        return repr(v)
    if hasattr(v, "item"):
        return format_value(v.item())
    if isinstance(v, float):
        return repr(v)
    return str(v)


def parse_value(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidArgument(f"cannot parse value {text!r}") from None


def read_grid_function(path) -> GridFunction:
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidArgument(f"{path}: missing offset line")
    try:
        offset = int(lines[0])
    except ValueError:
        raise InvalidArgument(f"{path}: offset must be an integer, got {lines[0]!r}") from None
    return GridFunction(offset, [parse_value(ln) for ln in lines[1:]])


def write_grid_function(f: GridFunction, path) -> None:
    rows = [str(f.offset)] + [format_value(v) for v in f.values]
    Path(path).write_text("\n".join(rows) + "\n")
