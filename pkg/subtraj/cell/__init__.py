"""Free space cells of an edge pair: the exact conic cell and its polygonal proxy."""
from subtraj.cell.base import BaseCell  # NOQA
from subtraj.cell.base import CellExtremes  # NOQA
from subtraj.cell.base import FreeSpaceIntervals  # NOQA
from subtraj.cell.exact import exact_cell  # NOQA
from subtraj.cell.exact import ExactCell  # NOQA
from subtraj.cell.polygon import approx_cell  # NOQA
from subtraj.cell.polygon import ApproxCell  # NOQA
from subtraj.cell.polygon import build_ball_polytope  # NOQA

__author__ = "The subtraj developers"
