"""The run report: JSON serialization and the coverage plot."""
import json
import logging
from copy import deepcopy

import matplotlib as mpl
import numpy as np
from matplotlib.figure import Figure

__author__ = "The subtraj developers"

__all__ = ["SolutionReport", "emit", "REPORT_VERSION"]

logger = logging.getLogger(__name__)

REPORT_VERSION = "1.0"


class SolutionReport:
    """The outcome of one run.

    Args:
        config: The :class:`~subtraj.config.RunConfig` of the run.
        curve: The input curve.
        solution: The :class:`~subtraj.solver.base.Solution`.
        verification: The verifier verdict as a dictionary with at least a
            ``verified`` key.
    """

    __slots__ = ("_config", "_curve", "_solution", "_verification")

    def __init__(self, config, curve, solution, verification):
        self._config = config
        self._curve = curve
        self._solution = solution
        self._verification = dict(verification)

    def __repr__(self):
        return (
            f"SolutionReport(mode={self._config.mode!r}, "
            f"centers={len(self._solution)}, "
            f"verified={self.verified})"
        )

    @property
    def config(self):
        return self._config

    @property
    def curve(self):
        return self._curve

    @property
    def solution(self):
        return self._solution

    @property
    def verification(self):
        return self._verification

    @property
    def verified(self):
        """The verifier verdict."""
        return bool(self._verification["verified"])

    def centers(self):
        """Centre descriptors with their vertex lists.

        A reversed centre lists its vertices in traversal order.
        """
        out = []
        for cand, curve in zip(self._solution.centers, self._solution.curves()):
            obj = cand.dict()
            obj["vertices"] = curve.as_array().tolist()
            out.append(obj)
        return out

    def to_dict(self):
        return self.dict()

    def dict(self):
        """Return the report as a python dictionary with a fixed key order."""
        stats = deepcopy(self._solution.stats)
        return {
            "version": REPORT_VERSION,
            "config": self._config.dict(),
            "input": {
                "vertices": len(self._curve),
                "dimension": self._curve.dimension,
            },
            "radius": self._solution.radius,
            "centers": self.centers(),
            "coverage": [list(_) for _ in self._solution.coverage],
            "measure": self._solution.measure,
            "stats": stats,
            "verification": deepcopy(self._verification),
        }

    @property
    def data_structure(self):
        """Json serialized string describing the report."""
        return json.dumps(self.dict(), ensure_ascii=False, sort_keys=False, indent=2)

    def plot(self, path):
        """Draw the input curve, the centres and the covered parameter ranges.

        The input curve is grey, every centre has its own colour, and a strip
        below a parameter axis marks the coverage. The first two coordinates are
        drawn. Centre polylines carry the SVG ids ``center-<i>`` and the strip
        the id ``coverage``.
        """
        fig = Figure(figsize=(6.4, 5.6))
        top, bottom = fig.subplots(2, 1, gridspec_kw={"height_ratios": [5, 1]})
        _draw_curve(top, self._curve.as_array(), color="0.6", lw=1.0, zorder=1)
        colors = mpl.colormaps["tab10"]
        for i, curve in enumerate(self._solution.curves()):
            line = _draw_curve(
                top, curve.as_array(), color=colors(i % 10), lw=2.0, zorder=2
            )
            line.set_gid(f"center-{i}")
        top.set_aspect("equal", adjustable="datalim")
        top.set_title(
            f"{len(self._solution)} centers at radius {self._solution.radius:g}"
        )

        spans = [(lo, hi - lo) for lo, hi in self._solution.coverage]
        strip = bottom.broken_barh(spans, (0, 1), facecolors="C0")
        strip.set_gid("coverage")
        bottom.set_xlim(0, 1)
        bottom.set_ylim(0, 1)
        bottom.set_yticks([])
        bottom.set_xlabel("parameter")
        fig.tight_layout()
        with mpl.rc_context({"svg.hashsalt": "subtraj"}):
            fig.savefig(path, format="svg", metadata={"Date": None})
        logger.info("wrote the coverage plot to %s", path)


def _draw_curve(ax, vertices, **kwargs):
    if vertices.shape[1] == 1:
        vertices = np.hstack([vertices, np.zeros_like(vertices)])
    (line,) = ax.plot(vertices[:, 0], vertices[:, 1], **kwargs)
    return line


def emit(report, out=None, plot=None):
    """Write the JSON report and, optionally, the SVG plot.

    Args:
        report: A :class:`SolutionReport`.
        out: The JSON path. When omitted the JSON is returned instead.
        plot: The SVG path, or None for no plot.

    Returns:
        The JSON string when ``out`` is None, otherwise the list of written
        paths.

    Raises:
        OSError: When a path cannot be written.
    """
    text = report.data_structure + "\n"
    written = []
    if out is not None:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
        written.append(str(out))
    if plot is not None:
        report.plot(plot)
        written.append(str(plot))
    return text if out is None else written
