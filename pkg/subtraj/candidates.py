"""Candidate centre curves and the sweep-sequences over extremal heights.

Type (I) candidates are vertex-to-vertex subcurves of the simplification whose
span is a power of two. Type (II) candidates are prefixes and suffixes of single
edges, and Type (III) candidates are subedges between extremal heights a power
of two positions apart. Type (II) and (III) candidates are never enumerated
one by one while solving; they are the positions of sweep-sequences.
"""
import json

import numpy as np

from subtraj.curve import CurveParam
from subtraj.curve import SubcurveRef
from subtraj.utils import check_literal

__author__ = "The subtraj developers"

__all__ = [
    "Candidate",
    "SweepSequence",
    "enumerate_type1",
    "build_sweep_sequences",
    "TYPE_RANK",
]

TYPE_RANK = {"I": 1, "II": 2, "III": 3}
ORIENTATIONS = ("forward", "reversed")


class Candidate:
    """A candidate centre, described by indexes rather than vertices.

    Args:
        kind: One of ``I``, ``II`` or ``III``.
        edge: For Type (I) the 1-based start vertex of S; otherwise the 1-based
            edge of S.
        a: For Type (I) the 1-based end vertex; otherwise the 1-based index of
            the first height in the edge's extremal set.
        b: Unused for Type (I); otherwise the index of the second height.
        heights: The pair ``(ε_a, ε_b)`` for Type (II) and (III).
        reversed: True when the centre is the reversal of the subedge.

    Example:
        >>> c = Candidate("I", 1, 3)
        >>> c.ref
        SubcurveRef(CurveParam(1, 0.0), CurveParam(2, 1.0), reversed=False)
        >>> c.descriptor
        (1, 1, 0, 3, 0)
    """

    __slots__ = ("_kind", "_edge", "_a", "_b", "_heights", "_reversed")

    def __init__(self, kind, edge, a, b=0, heights=None, reversed=False):
        self._kind = check_literal(kind, "kind", tuple(TYPE_RANK))
        self._edge, self._a, self._b = int(edge), int(a), int(b)
        self._heights = None if heights is None else tuple(float(_) for _ in heights)
        self._reversed = bool(reversed)
        if kind == "I" and self._a <= self._edge:
            raise ValueError("A Type (I) candidate must end after its start vertex.")
        if kind != "I" and self._heights is None:
            raise ValueError(f"A Type ({kind}) candidate requires its heights.")

    def __eq__(self, other):
        if not isinstance(other, Candidate):
            return False
        return self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        if self._kind == "I":
            return f"Candidate(I, vertices {self._edge}..{self._a})"
        flag = ", reversed" if self._reversed else ""
        return f"Candidate({self._kind}, edge {self._edge}, {self._heights}{flag})"

    @property
    def kind(self):
        return self._kind

    @property
    def edge(self):
        return self._edge

    @property
    def heights(self):
        return self._heights

    @property
    def reversed(self):
        return self._reversed

    @property
    def descriptor(self):
        """The tie-breaking key ``(type rank, edge, orientation, a, b)``."""
        return (
            TYPE_RANK[self._kind],
            self._edge,
            int(self._reversed),
            self._a,
            self._b,
        )

    @property
    def ref(self):
        """The :class:`~subtraj.curve.SubcurveRef` of the centre on S."""
        if self._kind == "I":
            return SubcurveRef(
                CurveParam(self._edge, 0.0), CurveParam(self._a - 1, 1.0)
            )
        lo, hi = sorted(self._heights)
        return SubcurveRef(
            CurveParam(self._edge, lo), CurveParam(self._edge, hi), self._reversed
        )

    def resolve(self, S):
        """Materialize the centre curve from the simplification."""
        return self.ref.resolve(S)

    def to_dict(self):
        return self.dict()

    def dict(self):
        """Return the candidate as a python dictionary."""
        obj = {"type": self._kind, "edge": self._edge}
        if self._kind == "I":
            obj.update(start_vertex=self._edge, end_vertex=self._a)
        else:
            obj.update(heights=list(self._heights), indexes=[self._a, self._b])
        obj["reversed"] = self._reversed
        return obj

    @property
    def data_structure(self):
        return json.dumps(self.dict(), ensure_ascii=False, sort_keys=False, indent=2)


def enumerate_type1(S, ell):
    """Type (I) candidates: spans ``j = 2**m`` for ``0 <= m <= floor(log2 ell)``.

    Args:
        S: The simplification, or its number of vertices.
        ell: The centre complexity, at least 2.

    Example:
        >>> len(enumerate_type1(5, 4))
        8
    """
    if ell < 2:
        raise ValueError(f"The centre complexity must be at least 2, got {ell}.")
    n = S if isinstance(S, (int, np.integer)) else len(S)
    spans = [2**m for m in range(int(np.floor(np.log2(ell))) + 1)]
    return [
        Candidate("I", i, i + j)
        for j in spans
        for i in range(1, n - j + 1)
    ]


class SweepSequence:
    """An ordered list of index pairs over the extremal heights of an edge.

    Indexes are 0-based into the sorted heights of the edge. Forward sequences
    have ``a <= b`` at every position; reversed sequences have ``a >= b`` and
    are swept over the mirrored free space.

    Args:
        a: First indexes.
        b: Second indexes.
        candidate: Boolean mask marking the positions that are candidates of the
            sequence's own type; the other positions pad the walk.
        kind: ``affix`` or ``gap``.
        gap: The index gap of a ``gap`` sequence.
        orientation: ``forward`` or ``reversed``.
        m: The number of heights.
    """

    __slots__ = ("_a", "_b", "_candidate", "_kind", "_gap", "_orientation", "_m")

    def __init__(self, a, b, candidate, kind, gap, orientation, m):
        self._a = np.asarray(a, dtype=int)
        self._b = np.asarray(b, dtype=int)
        self._candidate = np.asarray(candidate, dtype=bool)
        self._kind = check_literal(kind, "kind", ("affix", "gap"))
        self._gap = int(gap)
        self._orientation = check_literal(orientation, "orientation", ORIENTATIONS)
        self._m = int(m)

    def __len__(self):
        return self._a.size

    def __repr__(self):
        return (
            f"SweepSequence({self._kind}, gap={self._gap}, {self._orientation}, "
            f"length={len(self)})"
        )

    @property
    def a(self):
        return self._a

    @property
    def b(self):
        return self._b

    @property
    def candidate(self):
        return self._candidate

    @property
    def kind(self):
        return self._kind

    @property
    def gap(self):
        return self._gap

    @property
    def orientation(self):
        return self._orientation

    @property
    def m(self):
        return self._m

    @property
    def type_rank(self):
        """Rank of the candidate type held by the sequence."""
        return TYPE_RANK["II"] if self._kind == "affix" else TYPE_RANK["III"]

    def pairs(self):
        """The sequence as a list of 1-based ``(a, b)`` tuples."""
        return list(zip((self._a + 1).tolist(), (self._b + 1).tolist()))

    def sweep_indexes(self):
        """Indexes ``(s_idx, t_idx)`` into the row the sequence is swept over.

        Forward sequences address the row itself. Reversed sequences address the
        mirrored row, where the height index k becomes ``m - 1 - k``.
        """
        if self._orientation == "forward":
            return self._a, self._b
        return self._m - 1 - self._a, self._m - 1 - self._b

    def stepping_ok(self):
        """True when both indexes advance by 0 or 1 between positions."""
        s, t = self.sweep_indexes()
        ds, dt = np.diff(s), np.diff(t)
        return bool(np.all((ds >= 0) & (ds <= 1) & (dt >= 0) & (dt <= 1)))

    def mirror(self):
        """The same walk with reversed orientation."""
        orientation = "reversed" if self._orientation == "forward" else "forward"
        return SweepSequence(
            self._m - 1 - self._a,
            self._m - 1 - self._b,
            self._candidate,
            self._kind,
            self._gap,
            orientation,
            self._m,
        )


def _affix_sequence(m):
    a = np.concatenate([np.zeros(m, dtype=int), np.arange(1, m)])
    b = np.concatenate([np.arange(m), np.full(m - 1, m - 1)])
    return SweepSequence(a, b, np.ones(a.size, bool), "affix", 0, "forward", m)


def _gap_sequence(m, g):
    a = np.concatenate([np.zeros(g, dtype=int), np.arange(m - g), np.arange(m - g, m)])
    b = np.concatenate([np.arange(g), np.arange(g, m), np.full(g, m - 1)])
    main = np.zeros(a.size, dtype=bool)
    main[g:m] = True
    candidate = main & (a > 0) & (b < m - 1)
    return SweepSequence(a, b, candidate, "gap", g, "forward", m)


def build_sweep_sequences(edge, heights):
    """Build the sweep-sequences of an edge from its extremal heights.

    One affix sequence walks ``(1, 1), (1, 2), ..., (1, m), (2, m), ..., (m, m)``.
    For every gap ``g = 2**j <= m - 1`` a gap sequence walks ``(1, 1), ...,
    (1, g)``, then ``(k, k + g)`` for ``k = 1, ..., m - g``, then ``(m - g + 1,
    m), ..., (m, m)``. Every sequence is emitted in both orientations.

    Args:
        edge: The 1-based edge of S, used only for logging and validation.
        heights: The sorted extremal heights, or an ExtremalSet.

    Returns:
        A list of :class:`SweepSequence`, forward sequences first.

    Example:
        >>> seqs = build_sweep_sequences(1, [0.0, 0.5, 1.0])
        >>> seqs[0].pairs()
        [(1, 1), (1, 2), (1, 3), (2, 3), (3, 3)]
        >>> len(seqs)
        6
    """
    heights = np.asarray(getattr(heights, "heights", heights), dtype=float)
    if heights.size < 2 or heights[0] != 0.0 or heights[-1] != 1.0:
        raise ValueError(
            f"The extremal heights of edge {edge} must start at 0 and end at 1."
        )
    m = heights.size
    forward = [_affix_sequence(m)]
    g = 1
    while g <= m - 1:
        forward.append(_gap_sequence(m, g))
        g *= 2
    return forward + [seq.mirror() for seq in forward]
