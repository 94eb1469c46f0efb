"""Piecewise-linear approximate free space cells.

The Euclidean ball is replaced by a polytope ``D`` with ``B_1 ⊂ D ⊂ B_{1+4ε}``.
For an edge pair, the difference ``eP(u) - eS(y)`` lies in an affine plane of a
three-dimensional subspace, so the free region is the preimage of a planar
section of ``D``: a convex polygon, which is finally clipped to the unit square.
"""
from functools import lru_cache

import numpy as np
from scipy.spatial import ConvexHull
from scipy.spatial import QhullError

from subtraj.cell.base import BaseCell
from subtraj.cell.base import CellExtremes
from subtraj.cell.base import EMPTY
from subtraj.utils import validate

__author__ = "The subtraj developers"

__all__ = [
    "BallPolytope",
    "build_ball_polytope",
    "reduce_to_3d",
    "ApproxCell",
    "approx_cell",
]

_TOL = 1e-12
UNIT_SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


class BallPolytope:
    """A convex polytope sandwiched between the unit ball and the (1+4ε)-ball.

    Attributes:
        epsilon: The approximation parameter.
        normals: Array of shape ``(m, 3)`` of facet normals.
        offsets: Array of shape ``(m,)``; the polytope is ``normals @ x <= offsets``.
        vertices: Array of shape ``(v, 3)`` of polytope vertices.
        edges: Array of shape ``(k, 2)`` of vertex index pairs.
    """

    __slots__ = ("epsilon", "normals", "offsets", "vertices", "edges")

    def __init__(self, epsilon, normals, offsets, vertices, edges):
        self.epsilon = epsilon
        self.normals = normals
        self.offsets = offsets
        self.vertices = vertices
        self.edges = edges

    def __repr__(self):
        return (
            f"BallPolytope(epsilon={self.epsilon}, facets={self.normals.shape[0]}, "
            f"vertices={self.vertices.shape[0]})"
        )

    @property
    def facet_count(self):
        """The number of emitted half-spaces."""
        return self.normals.shape[0]

    def contains(self, points, scale=1.0, tol=_TOL):
        """Vectorised membership of 3-vectors in ``scale * D``."""
        points = np.atleast_2d(points)
        slack = points @ self.normals.T - scale * self.offsets[np.newaxis, :]
        return np.all(slack <= tol * max(scale, 1.0), axis=1)


@lru_cache(maxsize=8)
def build_ball_polytope(epsilon):
    """Compute a polytope ``D`` with ``B_1(0) ⊂ D ⊂ B_{1+4ε}(0)``.

    Grid points of spacing ``h = 4ε / ((1 + 4ε) √3)`` inside the unit ball span a
    hull that contains the ball of radius ``1 - √3 h = 1 / (1 + 4ε)``; scaling the
    hull by ``1 + 4ε`` yields the sandwich.

    Args:
        epsilon: A float in ``(0, 1/5]``.

    Example:
        >>> ball = build_ball_polytope(0.2)
        >>> norms = np.linalg.norm(ball.vertices, axis=1)
        >>> bool(norms.min() >= 1 - 1e-12 and norms.max() <= 1.8 + 1e-12)
        True
    """
    epsilon = float(validate(epsilon, "epsilon", (int, float)))
    if not 0 < epsilon <= 0.2:
        raise ValueError(
            f"The value of `epsilon` must be in (0, 0.2] for the ball polytope, "
            f"got {epsilon}."
        )
    h = 4 * epsilon / ((1 + 4 * epsilon) * np.sqrt(3))
    count = int(np.ceil(1.0 / h)) + 1
    axis = np.arange(-count, count + 1)
    grid = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1)
    inside = (grid * h) ** 2
    inside = inside.sum(axis=-1) <= 1.0

    padded = np.pad(inside, 1, constant_values=False)
    interior = np.ones_like(inside)
    for ax in range(3):
        for shift in (-1, 1):
            interior &= np.roll(padded, shift, axis=ax)[1:-1, 1:-1, 1:-1]
    boundary = grid[inside & ~interior] * h

    hull = ConvexHull(boundary)
    scale = 1 + 4 * epsilon
    vertices = hull.points * scale
    normals = hull.equations[:, :3]
    offsets = -hull.equations[:, 3] * scale

    simplices = hull.simplices
    edges = np.concatenate(
        [simplices[:, [0, 1]], simplices[:, [1, 2]], simplices[:, [2, 0]]]
    )
    edges = np.unique(np.sort(edges, axis=1), axis=0)
    used = np.unique(edges)
    remap = np.full(vertices.shape[0], -1)
    remap[used] = np.arange(used.size)
    return BallPolytope(epsilon, normals, offsets, vertices[used], remap[edges])


def reduce_to_3d(eS, eP):
    """Map an edge pair isometrically into three dimensions.

    Returns ``(w, p, q)`` with ``||w + u p - y q|| = ||eP(u) - eS(y)||`` for all
    ``u, y``, where ``w = eP(0) - eS(0)``, ``p`` is the direction of ``eP`` and
    ``q`` the direction of ``eS``.

    Example:
        >>> w, p, q = reduce_to_3d(([0, 0], [0, 1]), ([1, 0], [2, 0]))
        >>> float(np.linalg.norm(w + p - q))
        1.0
    """
    q0, q1 = (np.asarray(_, dtype=float) for _ in eS)
    p0, p1 = (np.asarray(_, dtype=float) for _ in eP)
    matrix = np.column_stack([p0 - q0, p1 - p0, q1 - q0])
    if matrix.shape[0] < 3:
        matrix = np.vstack([matrix, np.zeros((3 - matrix.shape[0], 3))])
    _, r = np.linalg.qr(matrix, mode="reduced")
    return r[:, 0], r[:, 1], r[:, 2]


def clip_halfplane(polygon, a, b, c):
    """Clip a convex polygon by ``a u + b y <= c`` (Sutherland-Hodgman step)."""
    if len(polygon) == 0:
        return polygon

    def inside(p):
        return a * p[0] + b * p[1] <= c + _TOL

    def intersection(s, e):
        fs, fe = a * s[0] + b * s[1] - c, a * e[0] + b * e[1] - c
        t = fs / (fs - fe)
        return s + t * (e - s)

    output = []
    s = polygon[-1]
    for e in polygon:
        if inside(e):
            if not inside(s):
                output.append(intersection(s, e))
            output.append(e)
        elif inside(s):
            output.append(intersection(s, e))
        s = e
    return np.asarray(output).reshape(-1, 2)


def clip_to_square(polygon):
    """Clip a convex polygon to the unit square."""
    for a, b, c in ((-1, 0, 0), (1, 0, 1), (0, -1, 0), (0, 1, 1)):
        polygon = clip_halfplane(polygon, a, b, c)
    return polygon


def _planar_hull(points):
    """Counter-clockwise convex hull of 2D points, tolerating degeneracies."""
    points = np.unique(np.round(points, 15), axis=0)
    if points.shape[0] <= 2:
        return points
    try:
        hull = ConvexHull(points)
        return points[hull.vertices]
    except QhullError:
        direction = points[-1] - points[0]
        proj = points @ direction
        return points[[np.argmin(proj), np.argmax(proj)]]


def _line_range(w, r, ball, delta):
    """The range of ``λ`` with ``w + λ r`` inside ``delta * D``."""
    nr = ball.normals @ r
    slack = delta * ball.offsets - ball.normals @ w
    lo, hi = -np.inf, np.inf
    pos, neg = nr > _TOL, nr < -_TOL
    if np.any(slack[~(pos | neg)] < -_TOL):
        return EMPTY
    if np.any(pos):
        hi = np.min(slack[pos] / nr[pos])
    if np.any(neg):
        lo = np.max(slack[neg] / nr[neg])
    return (lo, hi) if lo <= hi else EMPTY


def _strip(alpha, lam):
    """The unit square intersected with ``lam[0] <= alpha u - y <= lam[1]``."""
    polygon = UNIT_SQUARE.copy()
    polygon = clip_halfplane(polygon, alpha, -1.0, lam[1])
    return clip_halfplane(polygon, -alpha, 1.0, -lam[0])


class ApproxCell(BaseCell):
    """A convex polygon inside the unit square.

    Vertices are stored counter-clockwise. The left and right chains, running
    bottom to top, evaluate the boundary functions by linear interpolation; the
    bottom and top chains evaluate the columns.

    Args:
        vertices: An array-like of shape ``(k, 2)`` of ``(u, y)`` vertices. Empty,
            single-point and segment polygons are accepted.

    Example:
        >>> cell = ApproxCell([[0.2, 0.0], [1.0, 0.5], [0.2, 1.0]])
        >>> cell.slice(0.5)
        (0.2, 1.0)
    """

    __slots__ = ("_vertices", "_chains")

    def __init__(self, vertices):
        super().__init__()
        vertices = np.asarray(vertices, dtype=float).reshape(-1, 2)
        if vertices.shape[0] > 1:
            keep = np.ones(vertices.shape[0], dtype=bool)
            step = np.linalg.norm(vertices - np.roll(vertices, 1, axis=0), axis=1)
            keep[step <= _TOL] = False
            if not np.any(keep):
                keep[0] = True
            vertices = vertices[keep]
        if vertices.shape[0] >= 3:
            x, y = vertices[:, 0], vertices[:, 1]
            area = np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)
            if area < 0:
                vertices = vertices[::-1]
        vertices.setflags(write=False)
        self._vertices = vertices
        self._chains = self._build_chains() if vertices.shape[0] else None

    def __eq__(self, other):
        if not isinstance(other, ApproxCell):
            return False
        return np.array_equal(self._vertices, other._vertices)

    @property
    def vertices(self):
        """Counter-clockwise polygon vertices as a read-only array."""
        return self._vertices

    def _walk(self, start, stop):
        k = self._vertices.shape[0]
        index = [start]
        while index[-1] != stop:
            index.append((index[-1] + 1) % k)
        return self._vertices[index]

    def _pick(self, primary, secondary, extreme, prefer):
        values = self._vertices[:, primary]
        candidates = np.flatnonzero(np.abs(values - extreme(values)) <= _TOL)
        other = self._vertices[candidates, secondary]
        return candidates[np.argmin(other) if prefer == "min" else np.argmax(other)]

    def _build_chains(self):
        bl = self._pick(1, 0, np.min, "min")
        br = self._pick(1, 0, np.min, "max")
        tl = self._pick(1, 0, np.max, "min")
        tr = self._pick(1, 0, np.max, "max")
        lb = self._pick(0, 1, np.min, "min")
        lt = self._pick(0, 1, np.min, "max")
        rb = self._pick(0, 1, np.max, "min")
        rt = self._pick(0, 1, np.max, "max")
        left = self._walk(tl, bl)[::-1]
        right = self._walk(br, tr)
        bottom = self._walk(lb, rb)
        top = self._walk(rt, lt)[::-1]
        return {
            "left": (left[:, 1], left[:, 0]),
            "right": (right[:, 1], right[:, 0]),
            "bottom": (bottom[:, 0], bottom[:, 1]),
            "top": (top[:, 0], top[:, 1]),
            "index": (bl, br, tl, tr, lb, lt, rb, rt),
        }

    def chain(self, name):
        """Return ``(keys, values)`` of the named chain, sorted by key."""
        return self._chains[name]

    def slice(self, y):
        if self._chains is None:
            return EMPTY
        ys, xs = self._chains["left"]
        if y < ys[0] or y > ys[-1]:
            return EMPTY
        lo = float(np.interp(y, ys, xs))
        hi = float(np.interp(y, *self._chains["right"]))
        return (lo, hi) if lo <= hi else (hi, lo)

    def column(self, u):
        if self._chains is None:
            return EMPTY
        us, ys = self._chains["bottom"]
        if u < us[0] or u > us[-1]:
            return EMPTY
        lo = float(np.interp(u, us, ys))
        hi = float(np.interp(u, *self._chains["top"]))
        return (lo, hi) if lo <= hi else (hi, lo)

    def contains(self, u, y, tol=1e-12):
        u, y = np.broadcast_arrays(np.asarray(u, float), np.asarray(y, float))
        v = self._vertices
        if v.shape[0] == 0:
            return np.zeros(u.shape, dtype=bool)
        if v.shape[0] < 3:
            a, b = v[0], v[-1]
            d = b - a
            length = float(d @ d)
            t = 0.0 if length == 0 else ((u - a[0]) * d[0] + (y - a[1]) * d[1]) / length
            t = np.clip(t, 0.0, 1.0)
            return np.hypot(u - a[0] - t * d[0], y - a[1] - t * d[1]) <= tol
        e = np.roll(v, -1, axis=0) - v
        cross = e[:, 0, None] * (y.ravel()[None, :] - v[:, 1, None]) - e[
            :, 1, None
        ] * (u.ravel()[None, :] - v[:, 0, None])
        scale = np.linalg.norm(e, axis=1)[:, None]
        return np.all(cross >= -tol * scale, axis=0).reshape(u.shape)

    def mirrored(self):
        v = self._vertices.copy()
        v[:, 1] = 1.0 - v[:, 1]
        return ApproxCell(v[::-1])

    def _extremes(self):
        if self._chains is None:
            return None
        v = self._vertices
        bl, br, tl, tr, lb, lt, rb, rt = self._chains["index"]
        return CellExtremes(
            bottom=(v[bl, 1], v[bl, 0], v[br, 0]),
            top=(v[tl, 1], v[tl, 0], v[tr, 0]),
            left=(v[lb, 0], v[lb, 1], v[lt, 1]),
            right=(v[rb, 0], v[rb, 1], v[rt, 1]),
        )

    def vertex_heights(self):
        return np.unique(self._vertices[:, 1])


def approx_cell(eS, eP, delta, ball):
    """Build the approximate free region of an edge pair.

    The region is ``{(u, y) : eP(u) - eS(y) ∈ delta * D} ∩ [0, 1]^2`` for the
    ball polytope ``D``.

    Args:
        eS: Endpoints of the simplification edge.
        eP: Endpoints of the input curve edge.
        delta: A positive radius.
        ball: A :class:`BallPolytope`.
    """
    if delta <= 0:
        raise ValueError(f"The free space radius must be positive, got {delta}.")
    w, p, q = reduce_to_3d(eS, eP)
    normal = np.cross(p, q)
    np_, nq = np.linalg.norm(p), np.linalg.norm(q)

    if np.linalg.norm(normal) > 1e-9 * np_ * nq:
        vertices = ball.vertices * delta
        dist = (vertices - w) @ normal
        i, j = ball.edges[:, 0], ball.edges[:, 1]
        di, dj = dist[i], dist[j]
        cross = (di * dj <= 0) & (di != dj)
        t = di[cross] / (di[cross] - dj[cross])
        first, second = vertices[i[cross]], vertices[j[cross]]
        points = first + t[:, None] * (second - first)
        on_plane = vertices[np.abs(dist) <= _TOL * delta]
        points = np.vstack([points, on_plane])
        if points.shape[0] == 0:
            return ApproxCell(np.empty((0, 2)))
        basis = np.column_stack([p, -q])
        coords, *_ = np.linalg.lstsq(basis, (points - w).T, rcond=None)
        polygon = _planar_hull(coords.T)
        return ApproxCell(clip_to_square(polygon))

    if nq > _TOL:
        alpha = float(p @ q) / float(q @ q)
        lam = _line_range(w, q, ball, delta)
        if lam[0] > lam[1]:
            return ApproxCell(np.empty((0, 2)))
        return ApproxCell(_strip(alpha, lam))

    if np_ > _TOL:
        lam = _line_range(w, p, ball, delta)
        if lam[0] > lam[1]:
            return ApproxCell(np.empty((0, 2)))
        polygon = clip_halfplane(UNIT_SQUARE.copy(), 1.0, 0.0, lam[1])
        return ApproxCell(clip_halfplane(polygon, -1.0, 0.0, -lam[0]))

    if ball.contains(w, scale=delta)[0]:
        return ApproxCell(UNIT_SQUARE)
    return ApproxCell(np.empty((0, 2)))
