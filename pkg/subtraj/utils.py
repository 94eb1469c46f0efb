"""Validation, tolerance and logging helpers shared across subtraj."""
import logging
import os

import numpy as np

__author__ = "The subtraj developers"

__all__ = [
    "validate",
    "type_error",
    "check_literal",
    "configure_logging",
    "TOLERANCE",
    "INF",
]

TOLERANCE = 1e-9
INF = np.inf

LOG_LEVELS = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


def validate(value, attr, types, method=None):
    if isinstance(value, bool) and bool not in _as_tuple(types):
        raise TypeError(type_error(types, attr, value))
    if isinstance(value, types):
        if method is None:
            return value
        return method(value)
    raise TypeError(type_error(types, attr, value))


def _as_tuple(types):
    return types if isinstance(types, tuple) else (types,)


def type_error(types, attr, value):
    types = (
        " or ".join([item.__name__ for item in types])
        if isinstance(types, tuple)
        else types.__name__
    )
    val_type = type(value).__name__
    return f"Expecting an instance of type `{types}` for {attr}, got `{val_type}`."


def check_literal(element, attr, literals):
    """Validate an enumeration literal.

    :returns: The element, if it is one of the literals.
    :raises ValueError: Otherwise.

    Example:
        >>> check_literal("cover", "mode", ("cover", "maximize"))
        'cover'
    """
    if element in literals:
        return element

    message = (
        f"The value, `{element}`, is an invalid `{attr}` enumeration literal. "
        f"The allowed values are {literals}."
    )
    raise ValueError(message)


def check_positive(value, attr, strict=True):
    """Raise a ValueError unless value is positive (non-negative if not strict)."""
    if (strict and value <= 0) or (not strict and value < 0):
        bound = "greater than" if strict else "greater than or equal to"
        raise ValueError(f"The value of `{attr}` must be {bound} zero, got {value}.")
    return value


def configure_logging(level=None):
    """Configure the ``subtraj`` logger from ``SUBTRAJ_LOG`` or an explicit level.

    Args:
        level: One of `error`, `info`, or `debug`. Defaults to the value of the
            ``SUBTRAJ_LOG`` environment variable, or `error` when unset.

    Returns:
        The configured ``subtraj`` logger.
    """
    level = os.environ.get("SUBTRAJ_LOG", "error") if level is None else level
    level = check_literal(level.strip().lower(), "SUBTRAJ_LOG", tuple(LOG_LEVELS))

    logger = logging.getLogger("subtraj")
    logger.setLevel(LOG_LEVELS[level])
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    return logger
