"""Shared solver pieces: the prepared workspace, the solution record and the
independent coverage verifier."""
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from copy import deepcopy

from subtraj.candidates import build_sweep_sequences
from subtraj.candidates import enumerate_type1
from subtraj.candidates import TYPE_RANK
from subtraj.coverage.maintain import interval_event_list
from subtraj.coverage.maintain import Sweep
from subtraj.frechet import free_space_rows
from subtraj.frechet import reach_cover
from subtraj.freespace import build_free_spaces
from subtraj.intervals import IntervalUnion
from subtraj.utils import TOLERANCE

__author__ = "The subtraj developers"

__all__ = [
    "CoverageError",
    "RoundLimitExceeded",
    "Choice",
    "type_counts",
    "Workspace",
    "Solution",
    "prepare_workspace",
    "type1_coverage",
    "verify_coverage",
]

logger = logging.getLogger(__name__)


class CoverageError(RuntimeError):
    """The candidate set cannot cover the remaining points."""


class RoundLimitExceeded(RuntimeError):
    """A capped greedy loop ran out of rounds."""


class Choice:
    """A candidate with its gain in the current round.

    Larger gains win; equal gains go to the smaller descriptor.
    """

    __slots__ = ("weight", "descriptor", "candidate", "coverage")

    def __init__(self, weight, descriptor, candidate, coverage):
        self.weight, self.descriptor = weight, descriptor
        self.candidate, self.coverage = candidate, coverage

    def __repr__(self):
        return f"Choice({self.candidate!r}, weight={self.weight})"

    def beats(self, other):
        if other is None or self.weight > other.weight:
            return True
        return self.weight == other.weight and self.descriptor < other.descriptor


def type_counts(centers):
    """Number of chosen centres per candidate type."""
    counts = {kind: 0 for kind in TYPE_RANK}
    for c in centers:
        counts[c.kind] += 1
    return counts


def type1_coverage(spaces, candidate):
    """Coverage of a Type (I) candidate from the rows of its edges.

    The reachability runs from height 0 of the row of the start vertex to height
    1 of the row of the last edge.

    Args:
        spaces: One :class:`~subtraj.freespace.FreeSpace` per edge of S.
        candidate: A Type (I) :class:`~subtraj.candidates.Candidate`.
    """
    first = candidate.edge - 1
    last = candidate.ref.end.edge_index
    return reach_cover(spaces[first:last], 0.0, 1.0)


class Workspace:
    """Everything a greedy loop reads: rows, sweeps, events and Type (I) coverage.

    Attributes:
        P: The input curve.
        S: The :class:`~subtraj.simplify.Simplification`.
        radius: The radius of the free spaces.
        spaces: One forward row per edge of S.
        mirrors: The mirrored rows.
        sweeps: Every :class:`~subtraj.coverage.maintain.Sweep`, edge by edge.
        events: The event list of every sweep.
        type1: The Type (I) candidates.
        type1_cov: Their coverages.
    """

    __slots__ = (
        "P",
        "S",
        "radius",
        "backend",
        "spaces",
        "mirrors",
        "sweeps",
        "events",
        "type1",
        "type1_cov",
        "timings",
        "tol",
    )

    def __repr__(self):
        return (
            f"Workspace(edges={len(self.spaces)}, sweeps={len(self.sweeps)}, "
            f"type1={len(self.type1)}, backend={self.backend!r})"
        )

    @property
    def candidate_count(self):
        """Number of distinct candidates held by the workspace."""
        return len(self.type1) + sum(int(sw.candidate_mask.sum()) for sw in self.sweeps)

    def sweeps_of(self, edge):
        """The sweeps of a 1-based edge of S."""
        return [sw for sw in self.sweeps if sw.edge == edge]


def prepare_workspace(
    P, S, radius, ell, backend="exact", epsilon=0.1, threads=1, tol=TOLERANCE
):
    """Build the free spaces, sweeps and events used by every greedy loop.

    Event extraction of the sweeps runs in a thread pool; results keep the
    submission order.

    Args:
        P: The input curve.
        S: A :class:`~subtraj.simplify.Simplification` of P.
        radius: The free space radius, ``4 delta`` for covering.
        ell: The centre complexity.
        backend: ``exact`` or ``approx``.
        epsilon: Ball approximation parameter of the ``approx`` backend.
        threads: Worker threads for event extraction.
    """
    ws = Workspace()
    ws.P, ws.S, ws.radius, ws.backend, ws.tol = P, S, float(radius), backend, tol
    ws.timings = {}

    clock = time.perf_counter()
    ws.spaces = build_free_spaces(P, S.curve, radius, backend=backend, epsilon=epsilon)
    ws.mirrors = [space.mirrored() for space in ws.spaces]
    ws.timings["free_space"] = time.perf_counter() - clock

    clock = time.perf_counter()
    ws.sweeps = []
    for space, mirror in zip(ws.spaces, ws.mirrors):
        for sequence in build_sweep_sequences(space.edge, space.heights):
            assert sequence.stepping_ok()
            ws.sweeps.append(Sweep(space, sequence, mirrored=mirror, tol=tol))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        ws.events = list(pool.map(lambda sw: interval_event_list(sw, tol), ws.sweeps))
    ws.timings["sweeps"] = time.perf_counter() - clock

    clock = time.perf_counter()
    ws.type1 = enumerate_type1(len(S), ell)
    ws.type1_cov = [type1_coverage(ws.spaces, c) for c in ws.type1]
    ws.timings["type1"] = time.perf_counter() - clock

    logger.info(
        "prepared %d sweeps with %d events and %d Type (I) candidates",
        len(ws.sweeps),
        sum(len(_) for _ in ws.events),
        len(ws.type1),
    )
    return ws


class Solution:
    """Centres chosen by a solver, with their proxy coverage.

    Args:
        centers: The chosen :class:`~subtraj.candidates.Candidate` objects, in
            selection order.
        coverage: The union of their proxy coverages.
        S: The simplification the candidates refer to.
        radius: The radius at which the centres are certified.
        stats: Round counts and per-phase timings.
    """

    __slots__ = ("_centers", "_coverage", "_S", "_radius", "_stats")

    def __init__(self, centers, coverage, S, radius, stats=None):
        self._centers = tuple(centers)
        self._coverage = coverage if coverage is not None else IntervalUnion()
        self._S = S
        self._radius = float(radius)
        self._stats = dict(stats or {})

    def __len__(self):
        return len(self._centers)

    def __repr__(self):
        return f"Solution({len(self)} centers, measure={self.measure:.6g})"

    def __eq__(self, other):
        if not isinstance(other, Solution):
            return False
        check = [
            self._centers == other._centers,
            self._coverage == other._coverage,
            self._radius == other._radius,
        ]
        return False if False in check else True

    @property
    def centers(self):
        return self._centers

    @property
    def coverage(self):
        """The proxy coverage as an :class:`~subtraj.intervals.IntervalUnion`."""
        return self._coverage

    @property
    def measure(self):
        return self._coverage.measure

    @property
    def radius(self):
        return self._radius

    @property
    def simplification(self):
        return self._S

    @property
    def stats(self):
        return self._stats

    def curves(self):
        """Materialize the centre curves."""
        return [c.resolve(self._S.curve) for c in self._centers]

    def to_dict(self):
        return self.dict()

    def dict(self):
        """Return the solution as a python dictionary."""
        return {
            "centers": [c.dict() for c in self._centers],
            "coverage": self._coverage.dict(),
            "radius": self._radius,
            "stats": deepcopy(self._stats),
        }

    @property
    def data_structure(self):
        return json.dumps(self.dict(), ensure_ascii=False, sort_keys=False, indent=2)


def verify_coverage(P, centers, radius):
    """Exact coverage of P by a set of centre curves, computed independently.

    For every centre the exact free space at ``radius`` is built and the
    reachable intervals from its first vertex to its last are collected.

    Args:
        P: The input curve.
        centers: Centre :class:`~subtraj.curve.PolygonalCurve` objects.
        radius: The certification radius.

    Returns:
        The union as an :class:`~subtraj.intervals.IntervalUnion`.

    Example:
        >>> from subtraj.curve import PolygonalCurve
        >>> P = PolygonalCurve([[0, 0], [3, 0]])
        >>> verify_coverage(P, [PolygonalCurve([[0, 0], [3, 0]])], 0.5).to_list()
        [(0.0, 1.0)]
    """
    found = IntervalUnion()
    for curve in centers:
        found = found.union(reach_cover(free_space_rows(P, curve, radius), 0.0, 1.0))
    return found
