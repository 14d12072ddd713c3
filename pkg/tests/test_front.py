import pytest

from legcob.front import (
    FrontDiagram,
    FrontError,
    IndexOutOfRange,
    InvalidSite,
    L,
    NegativeStrandCount,
    NonClosed,
    R,
    X,
    canonical_form,
    classical_invariants,
    maslov_potential,
    stabilize,
)

UNKNOT = (L(1), R(1))
TREFOIL = (L(1), L(3), X(2), X(2), X(2), R(1), R(1))
SIX_ONE = (L(1), L(3), X(2), X(2), X(2), X(2), L(3), X(2), X(4), R(3), R(1), R(1))
TWO_EYES = (L(1), R(1), L(1), R(1))


def test_unknot_validates():
    d = FrontDiagram(UNKNOT)
    assert d.component_count == 1
    assert d.strand_counts == (0, 2, 0)
    assert d.orientations == (1,)


def test_trefoil_validates():
    d = FrontDiagram(TREFOIL)
    assert d.component_count == 1
    assert d.strand_counts == (0, 2, 4, 4, 4, 4, 2, 0)


def test_two_eyes_has_two_components():
    d = FrontDiagram(TWO_EYES)
    assert d.component_count == 2


@pytest.mark.parametrize(
    "events,error",
    [
        ((L(1), R(2)), IndexOutOfRange),
        ((L(2), R(1)), IndexOutOfRange),
        ((L(1),), NonClosed),
        ((R(1),), NegativeStrandCount),
        ((L(1), X(2), R(1)), IndexOutOfRange),
    ],
)
def test_bad_words_rejected(events, error):
    with pytest.raises(error):
        FrontDiagram(tuple(events))


def test_error_carries_event_index():
    with pytest.raises(IndexOutOfRange) as exc:
        FrontDiagram((L(1), R(2)))
    assert exc.value.event_index == 1


def test_unknot_invariants():
    inv = classical_invariants(FrontDiagram(UNKNOT))
    assert (inv.tb, inv.rot) == (-1, (0,))
    assert inv.writhe == 0
    assert inv.right_cusps == 1


def test_trefoil_invariants():
    inv = classical_invariants(FrontDiagram(TREFOIL))
    assert (inv.tb, inv.rot) == (1, (0,))
    assert inv.writhe == 3
    assert inv.right_cusps == 2


def test_six_one_invariants():
    d = FrontDiagram(SIX_ONE)
    assert d.component_count == 1
    inv = classical_invariants(d)
    assert (inv.tb, inv.rot) == (-5, (0,))


def test_two_eyes_invariants():
    inv = classical_invariants(FrontDiagram(TWO_EYES))
    assert inv.tb == -2
    assert inv.rot == (0, 0)


def test_tb_orientation_independent_rot_flips():
    d = FrontDiagram(TREFOIL)
    rev = d.reversed_component(0)
    assert classical_invariants(rev).tb == classical_invariants(d).tb
    assert classical_invariants(rev).rot == (0,)
    e = FrontDiagram(TWO_EYES).reversed_component(1)
    assert classical_invariants(e).tb == -2


def test_orientation_length_checked():
    with pytest.raises(FrontError):
        FrontDiagram(UNKNOT, (1, 1))
    with pytest.raises(FrontError):
        FrontDiagram(UNKNOT, (2,))


def test_effective_flags_on_unknot():
    d = FrontDiagram(UNKNOT)
    assert d.effective_flag(1, 1) == 1
    assert d.effective_flag(1, 2) == -1
    rev = d.reversed_component(0)
    assert rev.effective_flag(1, 1) == -1


def test_stabilize_unknot_signs():
    d = FrontDiagram(UNKNOT)
    up = stabilize(d, (1, 1), +1)
    assert classical_invariants(up).tb == -2
    assert classical_invariants(up).rot == (1,)
    dn = stabilize(d, (1, 1), -1)
    assert classical_invariants(dn).tb == -2
    assert classical_invariants(dn).rot == (-1,)


def test_stabilize_site_on_lower_strand():
    d = FrontDiagram(UNKNOT)
    s = stabilize(d, (1, 2), +1)
    assert s.events == (L(1), L(2), R(3), R(1))
    assert classical_invariants(s).rot == (1,)


def test_stabilize_opposite_signs_cancel_rot():
    d = FrontDiagram(UNKNOT)
    s = stabilize(stabilize(d, (1, 1), +1), (1, 1), -1)
    inv = classical_invariants(s)
    assert (inv.tb, inv.rot) == (-3, (0,))


def test_stabilize_twice_plus():
    d = FrontDiagram(UNKNOT)
    s = stabilize(stabilize(d, (1, 1), +1), (1, 1), +1)
    inv = classical_invariants(s)
    assert (inv.tb, inv.rot) == (-3, (2,))


def test_stabilize_six_one_pair():
    d = FrontDiagram(SIX_ONE)
    s = stabilize(stabilize(d, (1, 1), +1), (1, 1), -1)
    inv = classical_invariants(s)
    assert (inv.tb, inv.rot) == (-7, (0,))


def test_stabilize_rejects_bad_site_and_sign():
    d = FrontDiagram(UNKNOT)
    with pytest.raises(InvalidSite):
        stabilize(d, (1, 3), +1)
    with pytest.raises(InvalidSite):
        stabilize(d, (0, 1), +1)
    with pytest.raises(InvalidSite):
        stabilize(d, (1, 1), 0)


def test_maslov_unknot():
    pot = maslov_potential(FrontDiagram(UNKNOT))
    assert pot is not None
    assert pot.at(1, 1) == pot.at(1, 2) + 1


def test_maslov_trefoil_exists():
    d = FrontDiagram(TREFOIL)
    pot = maslov_potential(d)
    assert pot is not None
    for k, p in d.crossings():
        upper_in, lower_in = pot.at(k, p), pot.at(k, p + 1)
        assert {upper_in, lower_in} == {pot.at(k + 1, p), pot.at(k + 1, p + 1)}


def test_maslov_undefined_after_one_stabilization():
    d = stabilize(FrontDiagram(UNKNOT), (1, 1), +1)
    assert maslov_potential(d) is None


def test_canonical_trefoil():
    assert canonical_form(TREFOIL) == (L(1), L(1), X(2), X(2), X(2), R(1), R(1))


def test_canonical_merges_distant_orderings():
    a = canonical_form((L(1), L(3), R(3), R(1)))
    b = canonical_form((L(1), L(1), R(1), R(1)))
    assert a == b == (L(1), L(1), R(1), R(1))


def test_canonical_keeps_interleaved_eyes():
    assert canonical_form(TWO_EYES) == TWO_EYES


@pytest.mark.parametrize("word", [UNKNOT, TREFOIL, SIX_ONE, TWO_EYES])
def test_canonical_idempotent(word):
    once = canonical_form(word)
    assert canonical_form(once) == once
    FrontDiagram(once)  # canonical words stay valid


def test_left_right_cusp_counts_match():
    for word in (UNKNOT, TREFOIL, SIX_ONE, TWO_EYES):
        left = sum(1 for e in word if e.kind.value == "L")
        right = sum(1 for e in word if e.kind.value == "R")
        assert left == right
