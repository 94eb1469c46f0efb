import numpy as np
import pytest

from subtraj.candidates import build_sweep_sequences
from subtraj.candidates import Candidate
from subtraj.candidates import enumerate_type1
from subtraj.curve import PolygonalCurve

S = PolygonalCurve([[0, 0], [2, 0], [2, 2], [4, 2], [4, 0]])


def test_type1_enumeration():
    spans = [c.ref.end.edge_index - c.edge + 1 for c in enumerate_type1(S, 4)]
    assert sorted(set(spans)) == [1, 2, 4]
    assert len(enumerate_type1(S, 4)) == 8
    assert len(enumerate_type1(5, 7)) == 8
    assert len(enumerate_type1(5, 2)) == 7
    assert all(c.kind == "I" for c in enumerate_type1(S, 3))
    with pytest.raises(ValueError, match=".*must be at least 2.*"):
        enumerate_type1(S, 1)


def test_type1_candidate():
    c = Candidate("I", 2, 4)
    assert np.allclose(c.resolve(S).as_array(), [[2, 0], [2, 2], [4, 2]])
    assert c.dict() == {
        "type": "I",
        "edge": 2,
        "start_vertex": 2,
        "end_vertex": 4,
        "reversed": False,
    }
    assert repr(c) == "Candidate(I, vertices 2..4)"
    with pytest.raises(ValueError, match=".*must end after its start vertex.*"):
        Candidate("I", 3, 3)


def test_subedge_candidates():
    prefix = Candidate("II", 1, 1, 2, heights=(0.0, 0.5))
    assert np.allclose(prefix.resolve(S).as_array(), [[0, 0], [1, 0]])
    assert prefix.dict() == {
        "type": "II",
        "edge": 1,
        "heights": [0.0, 0.5],
        "indexes": [1, 2],
        "reversed": False,
    }
    back = Candidate("III", 3, 2, 3, heights=(0.25, 0.75), reversed=True)
    assert np.allclose(back.resolve(S).as_array(), [[3.5, 2], [2.5, 2]])
    assert back.descriptor == (3, 3, 1, 2, 3)
    assert prefix.descriptor < back.descriptor
    assert back == Candidate("III", 3, 2, 3, heights=(0.25, 0.75), reversed=True)
    assert len({prefix, back, prefix}) == 2

    with pytest.raises(ValueError, match=".*requires its heights.*"):
        Candidate("II", 1, 1, 2)
    error = "is an invalid `kind` enumeration literal"
    with pytest.raises(ValueError, match=f".*{error}.*"):
        Candidate("IV", 1, 1, 2, heights=(0, 1))


def test_affix_sequence():
    seqs = build_sweep_sequences(1, [0.0, 0.2, 0.5, 1.0])
    affix = seqs[0]
    assert affix.kind == "affix" and affix.orientation == "forward"
    assert affix.pairs() == [(1, 1), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4), (4, 4)]
    assert affix.candidate.all()


def test_gap_sequences():
    seqs = build_sweep_sequences(2, np.linspace(0, 1, 5))
    # gaps 1, 2 and 4, in both orientations
    assert len(seqs) == 8
    assert [s.gap for s in seqs[:4]] == [0, 1, 2, 4]
    gap2 = seqs[2]
    assert gap2.pairs() == [(1, 1), (1, 2), (1, 3), (2, 4), (3, 5), (4, 5), (5, 5)]
    picked = [p for p, c in zip(gap2.pairs(), gap2.candidate) if c]
    assert picked == [(2, 4)]
    for seq in seqs:
        assert seq.stepping_ok()
        assert np.all(seq.a <= seq.b) == (seq.orientation == "forward")


def test_mirror():
    seq = build_sweep_sequences(1, np.linspace(0, 1, 6))[1]
    mirror = seq.mirror()
    assert mirror.orientation == "reversed"
    assert np.array_equal(mirror.a, 5 - seq.a)
    s, t = mirror.sweep_indexes()
    assert np.array_equal(s, seq.a) and np.array_equal(t, seq.b)
    assert mirror.mirror().pairs() == seq.pairs()
    assert mirror.type_rank == 3


def test_sweep_sequence_errors():
    with pytest.raises(ValueError, match=".*must start at 0 and end at 1.*"):
        build_sweep_sequences(1, [0.1, 1.0])
    with pytest.raises(ValueError, match=".*must start at 0 and end at 1.*"):
        build_sweep_sequences(1, [0.0])


def test_every_subedge_window_is_a_candidate():
    m = 9
    seqs = build_sweep_sequences(1, np.linspace(0, 1, m))
    forward = set()
    for seq in seqs:
        if seq.orientation == "forward":
            forward |= {p for p, c in zip(seq.pairs(), seq.candidate) if c}
    # prefixes and suffixes are all present
    assert all((1, b) in forward for b in range(1, m + 1))
    assert all((a, m) in forward for a in range(1, m + 1))
    # interior subedges only at power-of-two gaps
    interior = {(a, b) for a, b in forward if a > 1 and b < m}
    assert all(b - a in (1, 2, 4, 8) for a, b in interior)
    assert (2, 6) in interior and (3, 6) not in interior
