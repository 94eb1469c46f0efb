"""Exact free space cells: a filled ellipse (or strip) clipped to the unit square."""
import numpy as np

from subtraj.cell.base import BaseCell
from subtraj.cell.base import CellExtremes
from subtraj.cell.base import clip_unit
from subtraj.cell.base import EMPTY
from subtraj.utils import INF

__author__ = "The subtraj developers"

__all__ = ["ExactCell", "exact_cell", "boundary_fns_exact"]

_REL = 1e-12


def _solve_le0(qa, qb, qc):
    """Return the interval of z with ``qa z^2 + 2 qb z + qc <= 0`` for ``qa >= 0``."""
    scale = abs(qb) * abs(qb) + abs(qa * qc)
    if qa > _REL * (abs(qb) + abs(qc) + 1.0):
        disc = qb * qb - qa * qc
        if disc < 0.0:
            if disc < -_REL * scale:
                return EMPTY
            disc = 0.0
        root = np.sqrt(disc)
        return ((-qb - root) / qa, (-qb + root) / qa)
    if abs(qb) <= _REL * (abs(qc) + 1.0):
        return (-INF, INF) if qc <= _REL * (abs(qc) + 1.0) else EMPTY
    bound = -qc / (2.0 * qb)
    return (-INF, bound) if qb > 0 else (bound, INF)


class ExactCell(BaseCell):
    """The exact free region of an edge pair.

    The region is ``{(u, y) : ||p0 + u dp - q0 - y dq|| <= delta}`` in the unit
    square, where ``p0, dp`` describe the edge of the input curve and ``q0, dq``
    the edge of the simplification. With ``w = p0 - q0`` the squared distance
    minus ``delta**2`` reads

        a u^2 + c y^2 - 2 b u y + 2 d u - 2 e y + f

    with ``a = dp.dp``, ``c = dq.dq``, ``b = dp.dq``, ``d = w.dp``, ``e = w.dq``
    and ``f = w.w - delta**2``.

    Args:
        p: The two endpoints of the input curve edge.
        q: The two endpoints of the simplification edge.
        delta: The free space radius.

    Example:
        >>> cell = ExactCell(([0, 0], [1, 0]), ([0, 0], [1, 0]), 0.0)
        >>> np.allclose(cell.bounds(0.3), (0.3, 0.3))
        True
    """

    __slots__ = ("_p", "_q", "_delta", "_coef")

    def __init__(self, p, q, delta):
        super().__init__()
        p0, p1 = (np.asarray(_, dtype=float) for _ in p)
        q0, q1 = (np.asarray(_, dtype=float) for _ in q)
        if delta < 0:
            raise ValueError(
                f"The free space radius must be non-negative, got {delta}."
            )
        self._p = (p0, p1)
        self._q = (q0, q1)
        self._delta = float(delta)
        dp, dq, w = p1 - p0, q1 - q0, p0 - q0
        self._coef = (
            float(dp @ dp),
            float(dp @ dq),
            float(dq @ dq),
            float(w @ dp),
            float(w @ dq),
            float(w @ w - delta * delta),
        )

    @property
    def delta(self):
        """The free space radius."""
        return self._delta

    def slice(self, y):
        a, b, c, d, e, f = self._coef
        return clip_unit(_solve_le0(a, d - b * y, c * y * y - 2 * e * y + f))

    def column(self, u):
        a, b, c, d, e, f = self._coef
        return clip_unit(_solve_le0(c, -e - b * u, a * u * u + 2 * d * u + f))

    def value(self, u, y):
        """Squared distance minus the squared radius, vectorised."""
        a, b, c, d, e, f = self._coef
        u, y = np.asarray(u, dtype=float), np.asarray(y, dtype=float)
        return a * u * u + c * y * y - 2 * b * u * y + 2 * d * u - 2 * e * y + f

    def contains(self, u, y, tol=1e-12):
        u, y = np.asarray(u, dtype=float), np.asarray(y, dtype=float)
        scale = max(1.0, self._delta * self._delta)
        inside = (u >= -tol) & (u <= 1 + tol) & (y >= -tol) & (y <= 1 + tol)
        return inside & (self.value(u, y) <= tol * scale)

    def mirrored(self):
        return ExactCell(self._p, self._q[::-1], self._delta)

    def _ellipse_points(self, axis):
        """Points of the unclipped region that are extreme along ``axis``."""
        a, b, c, d, e, f = self._coef
        det = a * c - b * b
        if det <= _REL * max(a * c, 1e-300):
            return []
        if axis == "y":
            if a <= 0:
                return []
            roots = _solve_le0(det, b * d - a * e, a * f - d * d)
            points = [((b * y - d) / a, y) for y in roots if np.isfinite(y)]
        else:
            if c <= 0:
                return []
            roots = _solve_le0(det, c * d - b * e, c * f - e * e)
            points = [(u, (e + b * u) / c) for u in roots if np.isfinite(u)]
        return [(u, y) for u, y in points if 0.0 <= u <= 1.0 and 0.0 <= y <= 1.0]

    def _candidates(self):
        points = []
        for y in (0.0, 1.0):
            lo, hi = self.slice(y)
            if lo <= hi:
                points += [(lo, y), (hi, y)]
        for u in (0.0, 1.0):
            lo, hi = self.column(u)
            if lo <= hi:
                points += [(u, lo), (u, hi)]
        points += self._ellipse_points("y") + self._ellipse_points("x")
        return points

    def _extremes(self):
        points = self._candidates()
        if not points:
            return None
        points = np.asarray(points)
        features = []
        for axis, pick in ((1, np.argmin), (1, np.argmax)):
            k = pick(points[:, axis])
            y, u = points[k, 1], points[k, 0]
            lo, hi = self.slice(y)
            features.append((y, lo, hi) if lo <= hi else (y, u, u))
        for axis, pick in ((0, np.argmin), (0, np.argmax)):
            k = pick(points[:, axis])
            u, y = points[k, 0], points[k, 1]
            lo, hi = self.column(u)
            features.append((u, lo, hi) if lo <= hi else (u, y, y))
        bottom, top, left, right = features
        return CellExtremes(bottom=bottom, top=top, left=left, right=right)


def exact_cell(eP, eS, delta):
    """Build the exact free region of the edge pair ``(eP, eS)`` at radius delta."""
    return ExactCell(eP, eS, delta)


def boundary_fns_exact(cell):
    """Return the evaluators ``l(y)`` and ``r(y)`` of a cell in local coordinates."""

    def left(y):
        return cell.bounds(y)[0]

    def right(y):
        return cell.bounds(y)[1]

    return left, right
