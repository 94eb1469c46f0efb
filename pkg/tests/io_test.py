import json

import numpy as np
import pytest

from subtraj.curve import PolygonalCurve
from subtraj.io import column_names
from subtraj.io import dumps
from subtraj.io import ingest
from subtraj.io import loads
from subtraj.io import serialize


def test_csv_with_and_without_header():
    bare = loads("0,0\n1,0\n")
    header = loads("x,y\n0,0\n1,0\n")
    assert bare == header
    assert len(bare) == 2 and bare.dimension == 2
    assert np.allclose(bare.as_array(), [[0, 0], [1, 0]])


def test_csv_dimension_mismatch():
    error = "Dimension mismatch: row 2 has 3 coordinates, expecting 2."
    with pytest.raises(ValueError, match=f".*{error}.*"):
        loads("0,0\n1,0,0\n")


def test_duplicate_vertices_collapse():
    with pytest.warns(UserWarning, match=".*Collapsed 1 consecutive duplicate.*"):
        curve = loads("0,0\n0,0\n1,0\n")
    assert len(curve) == 2


@pytest.mark.parametrize("text", ["0,0\nnan,1\n", "0,0\n1,inf\n"])
def test_non_finite_values(text):
    with pytest.raises(ValueError, match=".*non-finite coordinates.*"):
        loads(text)


def test_too_few_vertices():
    with pytest.raises(ValueError, match=".*at least 2 distinct vertices, got 1.*"):
        loads("0,0\n")
    with pytest.raises(ValueError, match=".*at least 2 distinct vertices, got 0.*"):
        loads("")


def test_second_curve_is_rejected():
    with pytest.raises(ValueError, match=".*more than one curve.*"):
        loads("0,0\n1,0\n\n2,2\n3,3\n")
    # trailing blank lines are fine
    assert len(loads("0,0\n1,0\n\n\n")) == 2


def test_json_lines():
    arrays = loads("[0, 0, 0]\n[1, 2, 3]\n", format="jsonl")
    objects = loads('{"x": 0, "y": 0}\n{"x": 1, "y": 1}\n', format="jsonl")
    assert arrays.dimension == 3
    assert np.allclose(objects.as_array(), [[0, 0], [1, 1]])
    error = "Dimension mismatch: row 2 has 3 coordinates, expecting 2."
    with pytest.raises(ValueError, match=f".*{error}.*"):
        loads("[0, 0]\n[1, 2, 3]\n", format="jsonl")
    with pytest.raises(ValueError, match=".*invalid `format` enumeration literal.*"):
        loads("0,0\n1,0\n", format="xml")


def test_dumps():
    curve = PolygonalCurve([[0, 0], [1.5, 0]])
    assert dumps(curve) == "x,y\n0.0,0.0\n1.5,0.0\n"
    lines = dumps(curve, format="jsonl").splitlines()
    assert [json.loads(_) for _ in lines] == [[0.0, 0.0], [1.5, 0.0]]
    assert column_names(1) == ["x"]
    assert column_names(5)[-1] == "x4"


@pytest.mark.parametrize("suffix", ["csv", "jsonl", "ndjson"])
def test_file_round_trip(tmp_path, suffix):
    vertices = np.random.default_rng(0).normal(size=(1000, 3))
    curve = PolygonalCurve(vertices)
    path = tmp_path / f"curve.{suffix}"
    serialize(curve, path)
    back = ingest(path)
    assert np.array_equal(back.as_array(), vertices)


def test_explicit_format_overrides_suffix(tmp_path):
    path = tmp_path / "curve.txt"
    path.write_text("[0, 0]\n[2, 1]\n", encoding="utf-8")
    assert len(ingest(path, format="jsonl")) == 2
    with pytest.raises(FileNotFoundError):
        ingest(tmp_path / "missing.csv")
