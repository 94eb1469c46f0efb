import matplotlib
import numpy as np
import pytest

import subtraj as st
from subtraj.curve import PolygonalCurve
from subtraj.intervals import IntervalUnion

matplotlib.use("Agg")

__all__ = []


@pytest.fixture(autouse=True)
def add_subtraj_namespace(doctest_namespace):
    doctest_namespace["st"] = st
    doctest_namespace["np"] = np
    doctest_namespace["PolygonalCurve"] = PolygonalCurve
    doctest_namespace["IntervalUnion"] = IntervalUnion
    doctest_namespace["segment"] = st.segment
