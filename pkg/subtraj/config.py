"""Run configuration for the covering and maximization drivers."""
import json
from copy import deepcopy

from subtraj.utils import check_literal
from subtraj.utils import check_positive
from subtraj.utils import TOLERANCE
from subtraj.utils import validate

__author__ = "The subtraj developers"

__all__ = ["RunConfig"]

MODES = ("cover", "maximize")
SIMPLIFIERS = ("greedy", "identity")


class RunConfig:
    """Parameters of a single covering or maximization run.

    Args:
        mode: Either `cover` or `maximize`.
        delta: The distance threshold. A positive float.
        ell: The maximum complexity of a center curve. An integer >= 2.
        k: The number of centers in `maximize` mode. An integer >= 1.
        epsilon: The approximation parameter of the piecewise-linear free space.
        fast: If true, `cover` mode uses the subcubic doubling driver.
        seed: Seed recorded in the report for reproducibility.
        tolerance: Geometric tolerance for boundary membership.
        simplifier: Either `greedy` or `identity`.
        threads: Number of worker threads used while preparing sweeps.

    Example:
        >>> config = RunConfig(mode="cover", delta=0.5, ell=4)
        >>> config.epsilon
        0.1
        >>> RunConfig(mode="maximize", delta=0.5, ell=4)  # doctest: +SKIP
        ValueError: The value of `k` must be greater than zero, got None.
    """

    __slots__ = (
        "_mode",
        "_delta",
        "_ell",
        "_k",
        "_epsilon",
        "_fast",
        "_seed",
        "_tolerance",
        "_simplifier",
        "_threads",
    )

    def __init__(
        self,
        mode,
        delta,
        ell,
        k=None,
        epsilon=0.1,
        fast=False,
        seed=0,
        tolerance=TOLERANCE,
        simplifier="greedy",
        threads=1,
    ):
        self.mode = mode
        self.delta = delta
        self.ell = ell
        self.k = k
        self.epsilon = epsilon
        self.fast = fast
        self.seed = seed
        self.tolerance = tolerance
        self.simplifier = simplifier
        self.threads = threads

        if self._mode == "maximize" and self._k is None:
            raise ValueError(
                "The value of `k` must be greater than zero, got None. The `k` "
                "parameter is required in `maximize` mode."
            )

    def __eq__(self, other):
        """Check if two objects are equal"""
        if not isinstance(other, RunConfig):
            return False
        check = [getattr(self, _) == getattr(other, _) for _ in __class__.__slots__]
        return False if False in check else True

    def __repr__(self):
        content = ", ".join(f"{k}={v!r}" for k, v in self.dict().items())
        return f"RunConfig({content})"

    @classmethod
    def parse_dict(cls, dictionary):
        """Create a RunConfig from a python dictionary."""
        return cls(**validate(dictionary, "config", dict))

    @property
    def mode(self):
        """The run mode, `cover` or `maximize`."""
        return self._mode

    @mode.setter
    def mode(self, value):
        self._mode = check_literal(validate(value, "mode", str), "mode", MODES)

    @property
    def delta(self):
        """The distance threshold."""
        return self._delta

    @delta.setter
    def delta(self, value):
        value = float(validate(value, "delta", (int, float)))
        self._delta = check_positive(value, "delta")

    @property
    def ell(self):
        """The maximum complexity of a center curve."""
        return self._ell

    @ell.setter
    def ell(self, value):
        value = validate(value, "ell", int)
        if value < 2:
            raise ValueError(f"The value of `ell` must be at least 2, got {value}.")
        self._ell = value

    @property
    def k(self):
        """The number of centers to select in `maximize` mode."""
        return self._k

    @k.setter
    def k(self, value):
        if value is not None:
            check_positive(validate(value, "k", int), "k")
        self._k = value

    @property
    def epsilon(self):
        """The approximation parameter of the piecewise-linear free space."""
        return self._epsilon

    @epsilon.setter
    def epsilon(self, value):
        value = float(validate(value, "epsilon", (int, float)))
        if not 0 < value <= 0.8:
            raise ValueError(
                f"The value of `epsilon` must be in (0, 0.8], got {value}."
            )
        self._epsilon = value

    @property
    def fast(self):
        """If true, `cover` mode uses the subcubic doubling driver."""
        return self._fast

    @fast.setter
    def fast(self, value):
        self._fast = validate(value, "fast", bool)

    @property
    def seed(self):
        """Seed recorded in the report."""
        return self._seed

    @seed.setter
    def seed(self, value):
        self._seed = validate(value, "seed", int)

    @property
    def tolerance(self):
        """Geometric tolerance for boundary membership."""
        return self._tolerance

    @tolerance.setter
    def tolerance(self, value):
        value = float(validate(value, "tolerance", (int, float)))
        self._tolerance = check_positive(value, "tolerance")

    @property
    def simplifier(self):
        """The simplification strategy, `greedy` or `identity`."""
        return self._simplifier

    @simplifier.setter
    def simplifier(self, value):
        value = validate(value, "simplifier", str)
        self._simplifier = check_literal(value, "simplifier", SIMPLIFIERS)

    @property
    def threads(self):
        """Number of worker threads."""
        return self._threads

    @threads.setter
    def threads(self, value):
        self._threads = check_positive(validate(value, "threads", int), "threads")

    @property
    def radius(self):
        """The radius at which the output centers are certified."""
        if self._mode == "cover":
            return 4.0 * self._delta
        return (4.0 + self._epsilon) * self._delta

    def to_dict(self):
        """Alias to the `dict()` method of the class."""
        return self.dict()

    def dict(self):
        """Return the RunConfig as a python dictionary."""
        obj = {}
        obj["mode"] = self._mode
        obj["delta"] = self._delta
        obj["ell"] = self._ell
        obj["k"] = self._k
        obj["epsilon"] = self._epsilon
        obj["fast"] = self._fast
        obj["seed"] = self._seed
        obj["tolerance"] = self._tolerance
        obj["simplifier"] = self._simplifier
        obj["threads"] = self._threads
        if obj["k"] is None:
            obj.pop("k")
        return obj

    def copy(self):
        """Return a copy of the object."""
        return deepcopy(self)

    @property
    def data_structure(self):
        """Json serialized string describing the RunConfig instance."""
        return json.dumps(self.dict(), ensure_ascii=False, sort_keys=False, indent=2)
