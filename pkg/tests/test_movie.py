import pytest

from legcob.front import FrontDiagram, L, R, X, classical_invariants
from legcob.moves import (
    BACKWARD,
    FORWARD,
    REID_I,
    SADDLE,
    ZERO_HANDLE,
    Move,
    Site,
)
from legcob.movie import (
    FAIL,
    PASS,
    CheckReport,
    EndpointMismatch,
    Movie,
    StepNotApplicable,
    classical_check,
    concatenate,
    replay,
    reversed_isotopy,
    summary_consistency,
    verify,
)

EMPTY = FrontDiagram(())
UNKNOT = FrontDiagram((L(1), R(1)))
TREFOIL = FrontDiagram((L(1), L(3), X(2), X(2), X(2), R(1), R(1)))
TWO_EYES = FrontDiagram((L(1), R(1), L(1), R(1)))


def trefoil_filling() -> Movie:
    """Birth an eye, grow three kinks on its lower strand, pinch twice."""
    return Movie(EMPTY, (
        Move(ZERO_HANDLE, "zerohandle", Site(0, 1), FORWARD),
        Move(REID_I, "r1a", Site(1, 2), FORWARD),
        Move(REID_I, "r1a", Site(4, 2), FORWARD),
        Move(REID_I, "r1a", Site(7, 2), FORWARD),
        Move(SADDLE, "saddle", Site(3, 3), FORWARD),
        Move(SADDLE, "saddle", Site(4, 3), FORWARD),
    ), TREFOIL)


def test_trefoil_filling_summary():
    s = verify(trefoil_filling())
    assert s.zero_handles == 1
    assert s.saddles == 2
    assert s.chi == -1
    assert s.surface_components == 1
    assert s.genus == 1
    assert s.genus_per_component == (1,)
    assert s.boundary_components_minus == 0
    assert s.boundary_components_plus == 1


def test_trefoil_filling_consistency():
    assert summary_consistency(trefoil_filling()) == PASS


def test_identity_movie_is_a_cylinder():
    s = verify(Movie(UNKNOT, (), UNKNOT))
    assert (s.chi, s.genus, s.surface_components) == (0, 0, 1)
    assert s.boundary_components_minus == 1
    assert s.boundary_components_plus == 1


def test_merge_movie_is_a_pair_of_pants():
    m = Movie(TWO_EYES, (Move(SADDLE, "saddle", Site(1, 1), FORWARD),),
              UNKNOT)
    s = verify(m)
    assert s.chi == -1
    assert s.genus == 0
    assert s.boundary_components_minus == 2
    assert s.boundary_components_plus == 1
    assert summary_consistency(m) == PASS


def test_split_pieces_reported_per_component():
    m = Movie(UNKNOT, (
        Move(ZERO_HANDLE, "zerohandle", Site(2, 1), FORWARD),
    ), FrontDiagram((L(1), R(1), L(1), R(1))))
    s = verify(m)
    assert s.surface_components == 2
    assert s.genus is None
    assert s.genus_per_component == (0, 0)


def test_step_not_applicable_carries_index():
    m = Movie(EMPTY, (
        Move(ZERO_HANDLE, "zerohandle", Site(0, 1), FORWARD),
        Move(SADDLE, "saddle", Site(0, 1), FORWARD),
    ), UNKNOT)
    with pytest.raises(StepNotApplicable) as exc:
        verify(m)
    assert exc.value.step_index == 1


def test_endpoint_mismatch():
    m = Movie(EMPTY, (
        Move(ZERO_HANDLE, "zerohandle", Site(0, 1), FORWARD),
    ), TREFOIL)
    with pytest.raises(EndpointMismatch):
        verify(m)


def test_flip_of_fresh_birth_allowed():
    # the bottom eye is reversed, so merging with the default-oriented
    # birth needs a flip; the birth is fresh, the bottom circle is not
    start = UNKNOT.with_orientations((-1,))
    m = Movie(start, (
        Move(ZERO_HANDLE, "zerohandle", Site(2, 1), FORWARD),
        Move(SADDLE, "saddle", Site(1, 1), FORWARD),
    ), UNKNOT)
    s = verify(m)
    assert s.chi == 0
    assert s.genus == 0
    assert summary_consistency(m) == PASS


def test_flip_of_bottom_circles_rejected():
    start = TWO_EYES.with_orientations((1, -1))
    m = Movie(start, (Move(SADDLE, "saddle", Site(1, 1), FORWARD),),
              UNKNOT)
    with pytest.raises(StepNotApplicable):
        verify(m)


def test_classical_check_examples():
    assert classical_check(None, TREFOIL, -1).verdict == PASS
    assert classical_check(EMPTY, TREFOIL, -1).verdict == PASS
    assert classical_check(UNKNOT, UNKNOT, 0).verdict == PASS
    report = classical_check(UNKNOT, TREFOIL, 0)
    assert report.verdict == FAIL
    assert any("tb" in v for v in report.violations)


def test_classical_check_rot_violation():
    from legcob.front import stabilize
    up = stabilize(UNKNOT, (1, 1), +1)
    down = stabilize(UNKNOT, (1, 1), -1)
    report = classical_check(up, down, 0)
    assert report.verdict == FAIL
    assert any("rotation" in v for v in report.violations)


def test_replay_returns_final_diagram():
    final, summary = replay(trefoil_filling())
    assert classical_invariants(final).tb == 1
    assert summary.chi == -1


def test_reversed_isotopy_movie_verifies():
    kinked = FrontDiagram((L(1), L(3), X(2), R(3), R(1)))
    m = Movie(UNKNOT, (Move(REID_I, "r1a", Site(1, 2), FORWARD),), kinked)
    verify(m)
    back = reversed_isotopy(m)
    assert back.start == kinked
    s = verify(back)
    assert s.chi == 0


def test_concatenate_adds_chi():
    first = Movie(EMPTY, trefoil_filling().steps[:4],
                  FrontDiagram((L(1), L(3), X(2), R(3), L(3), X(2), R(3),
                                L(3), X(2), R(3), R(1))))
    second = Movie(first.claimed_end, trefoil_filling().steps[4:], TREFOIL)
    whole = concatenate(first, second)
    assert verify(whole).chi == verify(first).chi + verify(second).chi
    assert verify(whole).chi == -1
