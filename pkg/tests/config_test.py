import logging
from pathlib import Path

import pytest

import subtraj
from subtraj.config import RunConfig
from subtraj.utils import check_literal
from subtraj.utils import configure_logging
from subtraj.utils import validate


def test_defaults():
    config = RunConfig(mode="cover", delta=0.5, ell=4)
    assert config.epsilon == 0.1
    assert config.fast is False
    assert config.seed == 0
    assert config.tolerance == 1e-9
    assert config.simplifier == "greedy"
    assert config.threads == 1
    assert config.k is None
    assert config.radius == 2.0
    assert "k" not in config.dict()


def test_maximize_radius_and_k():
    config = RunConfig(mode="maximize", delta=1.0, ell=2, k=3, epsilon=0.2)
    assert config.radius == pytest.approx(4.2)
    assert config.dict()["k"] == 3


def test_maximize_requires_k():
    error = "The value of `k` must be greater than zero, got None."
    with pytest.raises(ValueError, match=f".*{error}.*"):
        RunConfig(mode="maximize", delta=1.0, ell=2)

    error = "The value of `k` must be greater than zero, got 0."
    with pytest.raises(ValueError, match=f".*{error}.*"):
        RunConfig(mode="maximize", delta=1.0, ell=2, k=0)


def test_invalid_values():
    error = "is an invalid `mode` enumeration literal. The allowed values are"
    with pytest.raises(ValueError, match=f".*{error}.*"):
        RunConfig(mode="cluster", delta=1.0, ell=2)

    with pytest.raises(ValueError, match=".*`delta` must be greater than zero.*"):
        RunConfig(mode="cover", delta=0.0, ell=2)

    with pytest.raises(ValueError, match=".*`ell` must be at least 2.*"):
        RunConfig(mode="cover", delta=1.0, ell=1)

    with pytest.raises(ValueError, match=".*`epsilon` must be in.*"):
        RunConfig(mode="maximize", delta=1.0, ell=2, k=1, epsilon=0.9)

    error = "Expecting an instance of type `int` for ell, got `float`."
    with pytest.raises(TypeError, match=f".*{error}.*"):
        RunConfig(mode="cover", delta=1.0, ell=2.5)

    error = "Expecting an instance of type `str` for mode, got `int`."
    with pytest.raises(TypeError, match=f".*{error}.*"):
        RunConfig(mode=1, delta=1.0, ell=2)


def test_setters():
    config = RunConfig(mode="cover", delta=0.5, ell=4)
    config.delta = 2
    assert config.delta == 2.0
    config.fast = True
    assert config.fast
    with pytest.raises(TypeError):
        config.fast = "yes"
    with pytest.raises(ValueError, match=".*`threads` must be greater than zero.*"):
        config.threads = 0


@pytest.mark.parametrize("attr", ["ell", "k", "seed", "threads", "delta", "epsilon"])
def test_bool_is_not_a_number(attr):
    config = RunConfig(mode="maximize", delta=0.5, ell=4, k=2)
    with pytest.raises(TypeError, match=f".*for {attr}, got `bool`.*"):
        setattr(config, attr, True)
    with pytest.raises(TypeError, match=".*for ell, got `bool`.*"):
        RunConfig(mode="cover", delta=0.5, ell=False)
    assert validate(True, "fast", bool) is True


def test_dict_round_trip():
    config = RunConfig(mode="maximize", delta=0.25, ell=8, k=2, seed=7, threads=4)
    assert RunConfig.parse_dict(config.dict()) == config
    assert config.copy() == config
    assert '"mode": "maximize"' in config.data_structure
    assert config != RunConfig(mode="cover", delta=0.25, ell=8)


def test_validate_and_literals():
    assert validate(3, "count", int) == 3
    assert validate("2", "count", str, method=int) == 2
    with pytest.raises(TypeError, match=".*`int or float` for count, got `str`.*"):
        validate("2", "count", (int, float))
    assert check_literal("cover", "mode", ("cover",)) == "cover"


def test_configure_logging(monkeypatch):
    monkeypatch.setenv("SUBTRAJ_LOG", "debug")
    assert configure_logging().level == logging.DEBUG
    assert configure_logging("INFO").level == logging.INFO
    monkeypatch.setenv("SUBTRAJ_LOG", "loud")
    error = "is an invalid `SUBTRAJ_LOG` enumeration literal"
    with pytest.raises(ValueError, match=f".*{error}.*"):
        configure_logging()
    configure_logging("error")


def test_package_metadata():
    assert subtraj.__author__ == "The subtraj developers"
    setup = (Path(__file__).parent.parent / "setup.py").read_text(encoding="utf-8")
    assert 'author="The subtraj developers"' in setup
    assert "author_email" not in setup
