"""Reading and writing point files: UTF-8 text, one ``x,y`` pair per line.

A first line that does not parse as two numbers is taken as a header.
Blank lines are skipped; whitespace around fields is ignored.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Iterable, TextIO, Union

from .pareto import PointLike


class PointFileError(ValueError):
    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _fields(line: str) -> list[str]:
    if "," in line:
        return [f.strip() for f in line.split(",")]
    return line.split()


def parse_points(text: str) -> list[tuple[float, float]]:
    points = []
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        fields = _fields(line)
        try:
            if len(fields) != 2:
                raise ValueError
            pt = (float(fields[0]), float(fields[1]))
        except ValueError:
            if first:
                first = False
                continue
            raise PointFileError(f"expected 'x,y', got {raw!r}", lineno) from None
        first = False
        points.append(pt)
    return points


def read_points(source: Union[str, Path, TextIO]) -> list[tuple[float, float]]:
    """Parse a point file; ``"-"`` reads standard input."""
    if hasattr(source, "read"):
        return parse_points(source.read())
    if str(source) == "-":
        return parse_points(sys.stdin.read())
    try:
        text = Path(source).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise PointFileError(f"cannot read {source}: {exc}") from exc
    return parse_points(text)


def format_points(points: Iterable[PointLike], header: bool = True) -> str:
    lines = ["x1,x2"] if header else []
    # repr round-trips every double exactly
    lines += [f"{float(p[0])!r},{float(p[1])!r}" for p in points]
    return "\n".join(lines) + "\n"


def write_points(points: Iterable[PointLike], path: Union[str, Path], header: bool = True) -> None:
    Path(path).write_text(format_points(points, header), encoding="utf-8")
