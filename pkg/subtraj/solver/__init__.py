"""Greedy covering and maximization drivers."""
from subtraj.solver.base import CoverageError  # NOQA
from subtraj.solver.base import prepare_workspace  # NOQA
from subtraj.solver.base import RoundLimitExceeded  # NOQA
from subtraj.solver.base import Solution  # NOQA
from subtraj.solver.base import verify_coverage  # NOQA
from subtraj.solver.fast import cover_a_fast  # NOQA
from subtraj.solver.sc import cover_a  # NOQA
from subtraj.solver.sc import solve_sc  # NOQA
from subtraj.solver.scm import solve_scm  # NOQA

__author__ = "The subtraj developers"
