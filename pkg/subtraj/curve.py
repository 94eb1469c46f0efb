"""Polygonal curves, curve parameters and subcurve references."""
import json
from copy import deepcopy
from functools import total_ordering

import numpy as np

from subtraj.utils import validate

__author__ = "The subtraj developers"

__all__ = [
    "PolygonalCurve",
    "CurveParam",
    "SubcurveRef",
    "eval_curve",
    "subcurve",
    "reverse",
]


@total_ordering
class CurveParam:
    """A position on a polygonal curve as an (edge index, local parameter) pair.

    Edges are numbered from 1. A parameter with ``local_t = 1`` and the parameter
    ``(edge_index + 1, 0)`` denote the same point; :meth:`canonical` prefers the
    latter except at the final vertex.

    Args:
        edge_index: The 1-based edge index.
        local_t: The position on the edge, in [0, 1].

    Example:
        >>> CurveParam(1, 1.0).canonical(n=3)
        CurveParam(2, 0.0)
        >>> CurveParam(2, 1.0).canonical(n=3)
        CurveParam(2, 1.0)
    """

    __slots__ = ("_edge_index", "_local_t")

    def __init__(self, edge_index, local_t):
        self._edge_index = validate(int(edge_index), "edge_index", int)
        local_t = float(validate(local_t, "local_t", (int, float, np.floating)))
        if not 0.0 <= local_t <= 1.0:
            raise ValueError(
                f"The value of `local_t` must be in [0, 1], got {local_t}."
            )
        self._local_t = local_t

    def __repr__(self):
        return f"CurveParam({self._edge_index}, {self._local_t})"

    def __eq__(self, other):
        if not isinstance(other, CurveParam):
            return False
        return self.key == other.key

    def __lt__(self, other):
        return self.key < other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def edge_index(self):
        """The 1-based edge index."""
        return self._edge_index

    @property
    def local_t(self):
        """The local parameter on the edge."""
        return self._local_t

    @property
    def key(self):
        """Order key, insensitive to the two spellings of a vertex."""
        if self._local_t == 1.0:
            return (self._edge_index + 1, 0.0)
        return (self._edge_index, self._local_t)

    def canonical(self, n):
        """Return the canonical form on a curve with n vertices."""
        if self._local_t == 1.0 and self._edge_index < n - 1:
            return CurveParam(self._edge_index + 1, 0.0)
        return CurveParam(self._edge_index, self._local_t)

    def dict(self):
        """Return the parameter as a python dictionary."""
        return {"edge_index": self._edge_index, "local_t": self._local_t}


class PolygonalCurve:
    """A polygonal curve in :math:`\\mathbb{R}^d` parametrized over [0, 1].

    Edge ``i`` (1-based) is mapped linearly onto ``[(i-1)/(n-1), i/(n-1)]``.

    Args:
        vertices: An array-like of shape ``(n, d)`` with ``n >= 2``.

    Example:
        >>> curve = PolygonalCurve([[0, 0], [1, 0], [1, 1]])
        >>> curve.eval(CurveParam(2, 0.5))
        array([1. , 0.5])
        >>> curve.eval(0.75)
        array([1. , 0.5])
    """

    __slots__ = ("_vertices",)

    def __init__(self, vertices):
        vertices = np.array(vertices, dtype=float)
        if vertices.ndim == 1:
            vertices = vertices[:, np.newaxis]
        if vertices.ndim != 2:
            raise ValueError(
                "Expecting a two-dimensional array of vertices, got an array with "
                f"{vertices.ndim} dimensions."
            )
        if vertices.shape[0] < 2:
            raise ValueError(
                "A polygonal curve requires at least 2 vertices, got "
                f"{vertices.shape[0]}."
            )
        if not np.all(np.isfinite(vertices)):
            raise ValueError("Curve vertices must have finite coordinates.")
        vertices.setflags(write=False)
        self._vertices = vertices

    def __len__(self):
        return self._vertices.shape[0]

    def __eq__(self, other):
        if not isinstance(other, PolygonalCurve):
            return False
        return np.array_equal(self._vertices, other._vertices)

    def __repr__(self):
        return f"PolygonalCurve(n={len(self)}, d={self.dimension})"

    @classmethod
    def from_array(cls, array):
        """Create a curve from an array-like of vertices."""
        return cls(array)

    @property
    def vertices(self):
        """A read-only array of curve vertices."""
        return self._vertices

    @property
    def dimension(self):
        """The ambient dimension d."""
        return self._vertices.shape[1]

    @property
    def edge_count(self):
        """The number of edges, n - 1."""
        return len(self) - 1

    @property
    def length(self):
        """The Euclidean length of the curve."""
        return float(np.linalg.norm(np.diff(self._vertices, axis=0), axis=1).sum())

    def as_array(self):
        """Return a writable copy of the vertices."""
        return self._vertices.copy()

    def edge(self, index):
        """Return the two endpoints of the 1-based edge ``index``."""
        self._check_edge(index)
        return self._vertices[index - 1], self._vertices[index]

    def _check_edge(self, index):
        if not 1 <= index <= self.edge_count:
            raise IndexError(
                f"The edge index, {index}, is out of range for a curve with "
                f"{self.edge_count} edges."
            )

    def param_to_global(self, p):
        """Convert a CurveParam to the global parameter in [0, 1]."""
        self._check_edge(p.edge_index)
        return (p.edge_index - 1 + p.local_t) / self.edge_count

    def global_to_param(self, x):
        """Convert a global parameter in [0, 1] to a canonical CurveParam."""
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"The global parameter must be in [0, 1], got {x}.")
        scaled = x * self.edge_count
        edge = min(int(np.floor(scaled)), self.edge_count - 1)
        return CurveParam(edge + 1, min(max(scaled - edge, 0.0), 1.0))

    def eval(self, p):
        """Evaluate the curve at a CurveParam or a global parameter."""
        if not isinstance(p, CurveParam):
            p = self.global_to_param(float(p))
        start, end = self.edge(p.edge_index)
        return start + p.local_t * (end - start)

    def subcurve(self, s, t):
        """Return the subcurve from parameter s to parameter t.

        The result has complexity at most ``len(self)``. When ``s == t`` the result
        is a degenerate 2-vertex curve.
        """
        if t < s:
            raise ValueError(f"The subcurve start, {s}, lies after its end, {t}.")
        s, t = s.canonical(len(self)), t.canonical(len(self))
        first = self.eval(s)
        last = self.eval(t)
        inner = self._vertices[s.edge_index : t.edge_index]
        if inner.shape[0] and t.local_t == 0.0 and t.edge_index > s.edge_index:
            inner = inner[:-1]
        return PolygonalCurve(np.vstack([first, inner, last]))

    def reverse(self):
        """Return the curve with its vertices in reversed order."""
        return PolygonalCurve(self._vertices[::-1])

    def to_dict(self):
        """Alias to the `dict()` method of the class."""
        return self.dict()

    def dict(self):
        """Return the curve as a python dictionary."""
        return {"vertices": self._vertices.tolist()}

    def copy(self):
        """Return a copy of the object."""
        return deepcopy(self)

    @property
    def data_structure(self):
        """Json serialized string describing the curve."""
        return json.dumps(self.dict(), ensure_ascii=False, sort_keys=False, indent=2)


class SubcurveRef:
    """A reference to a subcurve, optionally reversed.

    Reversal is recorded by the flag; no vertices are copied until
    :meth:`resolve` is called.
    """

    __slots__ = ("_start", "_end", "_reversed")

    def __init__(self, start, end, reversed=False):
        self._start = validate(start, "start", CurveParam)
        self._end = validate(end, "end", CurveParam)
        self._reversed = validate(reversed, "reversed", bool)
        if end < start:
            raise ValueError(f"The subcurve start, {start}, lies after its end, {end}.")

    def __eq__(self, other):
        if not isinstance(other, SubcurveRef):
            return False
        check = [getattr(self, _) == getattr(other, _) for _ in __class__.__slots__]
        return False if False in check else True

    def __repr__(self):
        return f"SubcurveRef({self._start!r}, {self._end!r}, reversed={self._reversed})"

    @property
    def start(self):
        return self._start

    @property
    def end(self):
        return self._end

    @property
    def reversed(self):
        return self._reversed

    def resolve(self, curve):
        """Materialize the referenced subcurve of ``curve``."""
        sub = curve.subcurve(self._start, self._end)
        return sub.reverse() if self._reversed else sub

    def dict(self):
        """Return the reference as a python dictionary."""
        return {
            "start": self._start.dict(),
            "end": self._end.dict(),
            "reversed": self._reversed,
        }


def eval_curve(curve, p):
    """Evaluate ``curve`` at the parameter ``p``."""
    return curve.eval(p)


def subcurve(curve, s, t):
    """Return ``curve[s, t]``."""
    return curve.subcurve(s, t)


def reverse(curve):
    """Return the reversal of ``curve``."""
    return curve.reverse()
