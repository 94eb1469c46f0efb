"""Simplifications of the input curve within Fréchet distance 2Δ."""
import json
import logging
from copy import deepcopy

import numpy as np

from subtraj.curve import PolygonalCurve
from subtraj.frechet import decide_frechet
from subtraj.utils import check_literal
from subtraj.utils import check_positive

__author__ = "The subtraj developers"

__all__ = ["Simplification", "simplify", "STRATEGIES"]

logger = logging.getLogger(__name__)

STRATEGIES = ("greedy", "identity")


class Simplification:
    """A simplification S of P with the P-vertex each of its vertices came from.

    Args:
        curve: The simplified :class:`~subtraj.curve.PolygonalCurve`.
        provenance: For every vertex of ``curve``, the 0-based index of the
            vertex of P it was taken from.
        strategy: The name of the strategy that produced it.
    """

    __slots__ = ("_curve", "_provenance", "_strategy")

    def __init__(self, curve, provenance, strategy="greedy"):
        self._curve = curve
        self._provenance = tuple(int(_) for _ in provenance)
        self._strategy = check_literal(strategy, "strategy", STRATEGIES)
        if len(self._provenance) != len(curve):
            raise ValueError(
                f"Expecting {len(curve)} provenance indexes, "
                f"got {len(self._provenance)}."
            )

    def __len__(self):
        return len(self._curve)

    def __eq__(self, other):
        if not isinstance(other, Simplification):
            return False
        check = [getattr(self, _) == getattr(other, _) for _ in __class__.__slots__]
        return False if False in check else True

    def __repr__(self):
        return f"Simplification({len(self)} vertices, strategy={self._strategy!r})"

    @property
    def curve(self):
        return self._curve

    @property
    def provenance(self):
        return self._provenance

    @property
    def strategy(self):
        return self._strategy

    def to_dict(self):
        return self.dict()

    def dict(self):
        """Return the simplification as a python dictionary."""
        return {
            "strategy": self._strategy,
            "provenance": list(self._provenance),
            "vertices": self._curve.as_array().tolist(),
        }

    def copy(self):
        return deepcopy(self)

    @property
    def data_structure(self):
        """Json serialized string describing the simplification."""
        return json.dumps(self.dict(), ensure_ascii=False, sort_keys=False, indent=2)


def _shortcut_ok(P, i, j, delta):
    vertices = P.as_array()
    shortcut = PolygonalCurve(vertices[[i, j]])
    return decide_frechet(shortcut, PolygonalCurve(vertices[i : j + 1]), delta)


def simplify(P, delta, strategy="greedy"):
    """Compute a simplification S of P with ``d_F(S, P) <= 2 delta``.

    The greedy strategy walks P and jumps from the current vertex to the furthest
    later vertex whose shortcut stays within Fréchet distance delta of the
    skipped subcurve. The identity strategy returns P unchanged.

    Args:
        P: The input curve.
        delta: A positive radius.
        strategy: ``greedy`` or ``identity``.

    Example:
        >>> P = PolygonalCurve([[i, 0] for i in range(10)])
        >>> simplify(P, 0.1).provenance
        (0, 9)
    """
    check_positive(delta, "delta")
    check_literal(strategy, "strategy", STRATEGIES)
    n = len(P)
    if strategy == "identity":
        return Simplification(P, range(n), strategy)

    keep, i = [0], 0
    while i < n - 1:
        step = i + 1
        for j in range(n - 1, i + 1, -1):
            if _shortcut_ok(P, i, j, delta):
                step = j
                break
        keep.append(step)
        i = step
    logger.info("simplified %d vertices to %d", n, len(keep))
    curve = PolygonalCurve(P.as_array()[np.asarray(keep)])
    return Simplification(curve, keep, strategy)
