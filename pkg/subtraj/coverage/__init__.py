"""Proxy coverage of subedges, maintained along sweep-sequences."""
from subtraj.coverage.maintain import Event  # NOQA
from subtraj.coverage.maintain import interval_event_list  # NOQA
from subtraj.coverage.maintain import maintain  # NOQA
from subtraj.coverage.maintain import Sweep  # NOQA
from subtraj.coverage.query import batch_point_query  # NOQA
from subtraj.coverage.query import WeightedPointSet  # NOQA
from subtraj.coverage.state import bad_index_test  # NOQA
from subtraj.coverage.state import combinatorial_state  # NOQA
from subtraj.coverage.state import proxy_cov  # NOQA

__author__ = "The subtraj developers"
