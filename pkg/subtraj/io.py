"""Reading and writing single input curves as CSV or JSON lines."""
import json
import logging
from io import StringIO
from warnings import warn

import numpy as np
import pandas as pd

from subtraj.curve import PolygonalCurve
from subtraj.utils import check_literal

__author__ = "The subtraj developers"

__all__ = ["FORMATS", "ingest", "loads", "serialize", "dumps", "column_names"]

logger = logging.getLogger(__name__)

FORMATS = ("csv", "jsonl")
AXES = ("x", "y", "z")

MULTI_CURVE = (
    "The input holds more than one curve. Only a single curve per run is "
    "supported; concatenate the curves into one file with their vertices in "
    "order and rerun."
)


def column_names(dimension):
    """Column headers of a curve of the given dimension.

    Example:
        >>> column_names(2), column_names(4)
        (['x', 'y'], ['x0', 'x1', 'x2', 'x3'])
    """
    if dimension <= len(AXES):
        return list(AXES[:dimension])
    return [f"x{i}" for i in range(dimension)]


def _format_of(path, format):
    if format is not None:
        return check_literal(format, "format", FORMATS)
    suffix = str(path).rsplit(".", 1)[-1].lower()
    return "jsonl" if suffix in ("jsonl", "ndjson") else "csv"


def _first_block(text):
    """The lines before the first blank line; anything after is rejected."""
    lines = text.splitlines()
    for i, line in enumerate(lines):
        if line.strip() == "":
            if any(rest.strip() for rest in lines[i + 1 :]):
                raise ValueError(MULTI_CURVE)
            return lines[:i]
    return lines


def _is_number(token):
    try:
        float(token)
    except ValueError:
        return False
    return True


def _read_csv(lines):
    if not lines:
        return np.empty((0, 0))
    widths = [line.count(",") + 1 for line in lines]
    if len(set(widths)) != 1:
        row = next(i for i, w in enumerate(widths) if w != widths[0])
        raise ValueError(
            f"Dimension mismatch: row {row + 1} has {widths[row]} coordinates, "
            f"expecting {widths[0]}."
        )
    header = 0 if not all(_is_number(_) for _ in lines[0].split(",")) else None
    frame = pd.read_csv(
        StringIO("\n".join(lines)),
        header=header,
        dtype=float,
        float_precision="round_trip",
    )
    return frame.to_numpy(dtype=float)


def _read_jsonl(lines):
    rows = []
    for i, line in enumerate(lines):
        item = json.loads(line)
        if isinstance(item, dict):
            item = list(item.values())
        if rows and len(item) != len(rows[0]):
            raise ValueError(
                f"Dimension mismatch: row {i + 1} has {len(item)} coordinates, "
                f"expecting {len(rows[0])}."
            )
        rows.append([float(_) for _ in item])
    return np.array(rows, dtype=float).reshape(len(rows), -1)


def _collapse(vertices):
    if vertices.shape[0] < 2:
        return vertices
    repeat = np.all(vertices[1:] == vertices[:-1], axis=1)
    if repeat.any():
        warn(
            f"Collapsed {int(repeat.sum())} consecutive duplicate vertices.",
            stacklevel=3,
        )
        vertices = vertices[np.concatenate([[True], ~repeat])]
    return vertices


def loads(text, format="csv"):
    """Parse a single curve from a string.

    CSV holds one vertex per row, with an optional header of column names.
    JSON lines hold one array, or one object of coordinates, per row. A blank
    line ends the curve.

    Raises:
        ValueError: On a dimension mismatch, fewer than two vertices, non-finite
            values, or a second curve after the blank line.

    Example:
        >>> loads("0,0\\n1,0\\n")
        PolygonalCurve(n=2, d=2)
    """
    format = check_literal(format, "format", FORMATS)
    lines = _first_block(text.lstrip("\n"))
    vertices = _read_csv(lines) if format == "csv" else _read_jsonl(lines)
    if vertices.size and not np.all(np.isfinite(vertices)):
        raise ValueError("The input curve has non-finite coordinates.")
    vertices = _collapse(vertices)
    if vertices.shape[0] < 2:
        raise ValueError(
            f"A curve requires at least 2 distinct vertices, got {vertices.shape[0]}."
        )
    logger.info("read %d vertices in dimension %d", *vertices.shape)
    return PolygonalCurve(vertices)


def ingest(path, format=None):
    """Read a single curve from a CSV or JSON lines file.

    Args:
        path: The file path.
        format: `csv` or `jsonl`; guessed from the suffix when omitted.

    Returns:
        A :class:`~subtraj.curve.PolygonalCurve`.
    """
    with open(path, encoding="utf-8") as f:
        text = f.read()
    return loads(text, _format_of(path, format))


def dumps(curve, format="csv"):
    """Serialize a curve to a string readable by :func:`loads`.

    Example:
        >>> print(dumps(PolygonalCurve([[0, 0], [1.5, 0]])), end="")
        x,y
        0.0,0.0
        1.5,0.0
    """
    format = check_literal(format, "format", FORMATS)
    vertices = curve.as_array()
    if format == "csv":
        frame = pd.DataFrame(vertices, columns=column_names(curve.dimension))
        return frame.to_csv(index=False, lineterminator="\n")
    return "".join(json.dumps(row) + "\n" for row in vertices.tolist())


def serialize(curve, path, format=None):
    """Write a curve to a CSV or JSON lines file."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(curve, _format_of(path, format)))
