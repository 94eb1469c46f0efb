"""Deterministic sample curves for tests, doctests and benchmarks."""
import numpy as np

from subtraj.curve import PolygonalCurve

__author__ = "The subtraj developers"

__all__ = ["segment", "zigzag", "random_walk", "repeated_motif", "sample_instance"]


def segment(length=4.0, d=2):
    """A single straight edge along the first axis."""
    vertices = np.zeros((2, d))
    vertices[1, 0] = length
    return PolygonalCurve(vertices)


def zigzag(n, amplitude=1.0, step=1.0):
    """A planar zigzag of n vertices.

    Example:
        >>> zigzag(4).as_array().tolist()
        [[0.0, 0.0], [1.0, 1.0], [2.0, 0.0], [3.0, 1.0]]
    """
    x = step * np.arange(n, dtype=float)
    y = amplitude * (np.arange(n) % 2)
    return PolygonalCurve(np.stack([x, y], axis=1))


def random_walk(n, d=2, seed=0, step=1.0):
    """A random walk of n vertices with normally distributed steps."""
    rng = np.random.default_rng(seed)
    steps = rng.normal(scale=step, size=(n - 1, d))
    return PolygonalCurve(np.vstack([np.zeros((1, d)), np.cumsum(steps, axis=0)]))


def repeated_motif(copies, motif=None, jitter=0.05, seed=0):
    """A curve that traverses the same motif several times with small noise.

    Such curves have a small cover: one centre per motif piece serves every
    copy.
    """
    rng = np.random.default_rng(seed)
    motif = np.array(
        motif if motif is not None else [[0, 0], [2, 0], [2, 2], [0, 2]], dtype=float
    )
    pieces = [motif + jitter * rng.standard_normal(motif.shape) for _ in range(copies)]
    return PolygonalCurve(np.vstack(pieces + [motif[:1]]))


def sample_instance(seed, n_range=(6, 30)):
    """A random planar curve with a distance threshold drawn on its scale.

    Returns:
        A tuple ``(curve, delta)``.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    curve = random_walk(n, seed=int(rng.integers(2**31)))
    delta = float(rng.choice([0.25, 0.5, 1.0, 2.0]))
    return curve, delta
