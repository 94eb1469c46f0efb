import numpy as np
import pytest

from subtraj.curve import CurveParam
from subtraj.curve import eval_curve
from subtraj.curve import PolygonalCurve
from subtraj.curve import reverse
from subtraj.curve import subcurve
from subtraj.curve import SubcurveRef

P = PolygonalCurve([[0, 0], [2, 0], [2, 2], [4, 2]])


def test_curve_attributes():
    assert len(P) == 4
    assert P.dimension == 2
    assert P.edge_count == 3
    assert P.length == 6.0
    first, last = P.edge(2)
    assert np.allclose(first, [2, 0]) and np.allclose(last, [2, 2])
    assert P == PolygonalCurve.from_array(P.as_array())
    assert P.dict() == {"vertices": [[0, 0], [2, 0], [2, 2], [4, 2]]}


def test_curve_errors():
    with pytest.raises(ValueError, match=".*at least 2 vertices.*"):
        PolygonalCurve([[0, 0]])
    with pytest.raises(ValueError, match=".*finite coordinates.*"):
        PolygonalCurve([[0, 0], [np.nan, 1]])
    with pytest.raises(IndexError, match=".*out of range.*"):
        P.edge(4)
    with pytest.raises(ValueError, match=".*must be in \\[0, 1\\].*"):
        CurveParam(1, 1.5)


def test_vertices_are_read_only():
    with pytest.raises(ValueError):
        P.vertices[0, 0] = 5.0
    copy = P.as_array()
    copy[0, 0] = 5.0
    assert P.vertices[0, 0] == 0.0


def test_param_conversion():
    assert P.param_to_global(CurveParam(2, 0.5)) == 0.5
    assert P.global_to_param(0.5) == CurveParam(2, 0.5)
    assert P.global_to_param(1.0) == CurveParam(3, 1.0)
    assert CurveParam(1, 1.0) == CurveParam(2, 0.0)
    assert CurveParam(1, 0.5) < CurveParam(2, 0.0)
    assert np.allclose(eval_curve(P, 0.5), [2, 1])
    assert np.allclose(P.eval(CurveParam(3, 0.25)), [2.5, 2])


def test_subcurve():
    sub = subcurve(P, CurveParam(1, 0.5), CurveParam(3, 0.5))
    assert np.allclose(sub.as_array(), [[1, 0], [2, 0], [2, 2], [3, 2]])

    vertex_to_vertex = P.subcurve(CurveParam(1, 0.0), CurveParam(2, 1.0))
    assert np.allclose(vertex_to_vertex.as_array(), [[0, 0], [2, 0], [2, 2]])

    inside = P.subcurve(CurveParam(2, 0.25), CurveParam(2, 0.75))
    assert np.allclose(inside.as_array(), [[2, 0.5], [2, 1.5]])

    with pytest.raises(ValueError, match=".*lies after its end.*"):
        P.subcurve(CurveParam(2, 0.5), CurveParam(1, 0.5))


def test_reverse_and_ref():
    assert np.allclose(reverse(P).as_array(), P.as_array()[::-1])

    ref = SubcurveRef(CurveParam(2, 0.0), CurveParam(2, 0.5), reversed=True)
    assert np.allclose(ref.resolve(P).as_array(), [[2, 1], [2, 0]])
    assert ref.dict()["reversed"] is True
    assert ref == SubcurveRef(CurveParam(1, 1.0), CurveParam(2, 0.5), reversed=True)

    error = "Expecting an instance of type `bool` for reversed, got `int`."
    with pytest.raises(TypeError, match=f".*{error}.*"):
        SubcurveRef(CurveParam(1, 0.0), CurveParam(1, 1.0), reversed=1)
