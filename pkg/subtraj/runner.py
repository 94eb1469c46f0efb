"""Dispatch a configured run to a solver and certify its output."""
import logging
import time
from warnings import warn

from subtraj.config import RunConfig
from subtraj.report import SolutionReport
from subtraj.solver.base import verify_coverage
from subtraj.solver.fast import cover_a_fast
from subtraj.solver.sc import solve_sc
from subtraj.solver.scm import solve_scm
from subtraj.utils import validate

__author__ = "The subtraj developers"

__all__ = ["run", "verify", "GAP_TOLERANCE"]

logger = logging.getLogger(__name__)

GAP_TOLERANCE = 1e-6


def verify(config, P, solution):
    """Check a solution with the exact free space at its certified radius.

    In `cover` mode the exact coverage must span [0, 1] up to gaps of at most
    ``1e-6``. In `maximize` mode its measure must not fall below the proxy
    measure reported by the solver.

    Returns:
        The verdict as a dictionary.
    """
    clock = time.perf_counter()
    exact = verify_coverage(P, solution.curves(), config.radius)
    gaps = exact.gaps(0.0, 1.0, tol=GAP_TOLERANCE)
    if config.mode == "cover":
        verified = exact.covers(0.0, 1.0, tol=GAP_TOLERANCE)
    else:
        verified = exact.measure >= solution.measure - config.tolerance
    verdict = {
        "verified": bool(verified),
        "method": "exact free space reachability",
        "radius": config.radius,
        "exact_measure": exact.measure,
        "proxy_measure": solution.measure,
        "gaps": [list(_) for _ in gaps],
        "seconds": time.perf_counter() - clock,
    }
    if not verified:
        warn(
            f"The verifier rejects the {config.mode} solution: exact measure "
            f"{exact.measure:.9g}, proxy measure {solution.measure:.9g}."
        )
    return verdict


def run(config, curve):
    """Solve one instance as configured and attach the verifier verdict.

    `cover` mode calls :func:`~subtraj.solver.sc.solve_sc`, or
    :func:`~subtraj.solver.fast.cover_a_fast` when ``fast`` is set. `maximize`
    mode calls :func:`~subtraj.solver.scm.solve_scm`.

    Args:
        config: A :class:`~subtraj.config.RunConfig`.
        curve: The input :class:`~subtraj.curve.PolygonalCurve`.

    Returns:
        A :class:`~subtraj.report.SolutionReport`.

    Raises:
        RuntimeError: When the solver fails; the message names the mode and
            the parameters.

    Example:
        >>> from subtraj.config import RunConfig
        >>> from subtraj.curve import PolygonalCurve
        >>> report = run(RunConfig("cover", 0.5, 2), PolygonalCurve([[0, 0], [4, 0]]))
        >>> len(report.solution), report.verified
        (1, True)
    """
    validate(config, "config", RunConfig)
    common = dict(
        simplifier=config.simplifier, threads=config.threads, tol=config.tolerance
    )
    logger.info("running %r on %r", config, curve)
    try:
        if config.mode == "maximize":
            solution = solve_scm(
                curve, config.delta, config.ell, config.k, config.epsilon, **common
            )
        elif config.fast:
            solution = cover_a_fast(curve, config.delta, config.ell, **common)
        else:
            solution = solve_sc(curve, config.delta, config.ell, **common)
    except (RuntimeError, AssertionError) as error:
        raise RuntimeError(
            f"The {config.mode} solver failed with delta={config.delta}, "
            f"ell={config.ell}: {error}"
        ) from error
    return SolutionReport(config, curve, solution, verify(config, curve, solution))
