"""Subtrajectory covering and coverage maximization under the Fréchet distance."""
import datetime

from subtraj.candidates import Candidate  # NOQA
from subtraj.config import RunConfig  # NOQA
from subtraj.curve import CurveParam  # NOQA
from subtraj.curve import PolygonalCurve  # NOQA
from subtraj.curve import SubcurveRef  # NOQA
from subtraj.frechet import decide_frechet  # NOQA
from subtraj.frechet import reach_cover  # NOQA
from subtraj.intervals import IntervalUnion  # NOQA
from subtraj.io import ingest  # NOQA
from subtraj.io import serialize  # NOQA
from subtraj.report import emit  # NOQA
from subtraj.report import SolutionReport  # NOQA
from subtraj.runner import run  # NOQA
from subtraj.simplify import simplify  # NOQA
from subtraj.solver import cover_a_fast  # NOQA
from subtraj.solver import CoverageError  # NOQA
from subtraj.solver import Solution  # NOQA
from subtraj.solver import solve_sc  # NOQA
from subtraj.solver import solve_scm  # NOQA
from subtraj.solver import verify_coverage  # NOQA
from subtraj.tests import *  # NOQA
from subtraj.utils import configure_logging  # NOQA

now = datetime.datetime.now()
year = now.year

__author__ = "The subtraj developers"
__copyright__ = f"Copyright 2024-{year}, The subtraj Project."
__credits__ = ["The subtraj developers"]
__license__ = "BSD License"
__maintainer__ = "The subtraj developers"
__status__ = "Beta"
__version__ = "0.1.0"

__all__ = [
    "PolygonalCurve",
    "RunConfig",
    "ingest",
    "serialize",
    "run",
    "emit",
    "solve_sc",
    "cover_a_fast",
    "solve_scm",
    "verify_coverage",
]
