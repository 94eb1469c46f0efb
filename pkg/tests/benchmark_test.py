import os
import time

import numpy as np
import pytest

from subtraj.solver import cover_a_fast
from subtraj.solver import solve_sc
from subtraj.tests import random_walk

SIZES = [50, 100, 200, 400]


def seconds(solver, P):
    clock = time.perf_counter()
    solver(P, 0.5, 4)
    return time.perf_counter() - clock


@pytest.mark.benchmark
@pytest.mark.skipif(
    not os.environ.get("SUBTRAJ_BENCHMARK"), reason="set SUBTRAJ_BENCHMARK=1"
)
def test_fast_cover_scales_better():
    curves = [random_walk(n, seed=n) for n in SIZES]
    fast = [seconds(cover_a_fast, P) for P in curves]
    slow = [seconds(solve_sc, P) for P in curves]
    x = np.log(SIZES)
    fast_slope = np.polyfit(x, np.log(fast), 1)[0]
    slow_slope = np.polyfit(x, np.log(slow), 1)[0]
    assert slow_slope - fast_slope >= 0.4, (fast_slope, slow_slope)
