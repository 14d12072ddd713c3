from fractions import Fraction

import pytest

from legcob.front import FrontDiagram, L, R, X, stabilize
from legcob.rulings import (
    INCONCLUSIVE,
    OBSTRUCTED,
    PASS,
    GradedUndefined,
    LaurentPoly,
    NotPrimePower,
    QuadNumber,
    count_obstruction,
    enumerate_rulings,
    is_prime_power,
    polynomial_obstruction,
    ruling_count,
    ruling_polynomial,
    sqrt_power,
)

from .ruling_oracle import brute_force_switch_sets

UNKNOT = FrontDiagram((L(1), R(1)))
TREFOIL = FrontDiagram((L(1), L(3), X(2), X(2), X(2), R(1), R(1)))
TWO_EYES = FrontDiagram((L(1), R(1), L(1), R(1)))


def test_unknot_single_ruling():
    rulings = enumerate_rulings(UNKNOT)
    assert len(rulings) == 1
    assert rulings[0].switches == frozenset()
    assert rulings[0].trace == ((2, 1), ())


def test_trefoil_three_rulings():
    rulings = enumerate_rulings(TREFOIL)
    assert [sorted(r.switches) for r in rulings] == [[2], [2, 3, 4], [4]]
    assert sorted(r.switch_count for r in rulings) == [1, 1, 3]


def test_stabilized_unknot_no_ruling():
    d = stabilize(UNKNOT, (1, 1), +1)
    assert ruling_count(d) == 0


def test_empty_word_has_the_empty_ruling():
    assert ruling_count(FrontDiagram(())) == 1
    assert ruling_polynomial(FrontDiagram(())) == LaurentPoly.one()


def test_polynomials():
    assert ruling_polynomial(UNKNOT).coeffs == ((-1, 1),)
    assert ruling_polynomial(TREFOIL).coeffs == ((-1, 2), (1, 1))
    assert ruling_polynomial(TWO_EYES).coeffs == ((-2, 1),)


def test_polynomial_str():
    assert str(ruling_polynomial(TREFOIL)) == "z + 2z^-1"


def test_exponent_bound():
    for d in (UNKNOT, TREFOIL, TWO_EYES):
        crossings = len(d.crossings())
        left = sum(1 for e in d.events if e.kind.value == "L")
        for e, c in ruling_polynomial(d).coeffs:
            assert c > 0
            assert e <= crossings - left


@pytest.mark.parametrize("d", [UNKNOT, TREFOIL, TWO_EYES])
def test_enumerator_matches_oracle(d):
    got = [r.switches for r in enumerate_rulings(d)]
    assert got == brute_force_switch_sets(d)


def test_graded_needs_potential():
    d = stabilize(UNKNOT, (1, 1), +1)
    with pytest.raises(GradedUndefined):
        enumerate_rulings(d, graded=True)


def test_graded_subset_of_ungraded():
    graded = {r.switches for r in enumerate_rulings(TREFOIL, graded=True)}
    ungraded = {r.switches for r in enumerate_rulings(TREFOIL)}
    assert graded <= ungraded
    assert graded == {frozenset(s) for s in brute_force_switch_sets(
        TREFOIL, graded=True)}


def test_count_obstruction():
    assert count_obstruction(TREFOIL, UNKNOT) == OBSTRUCTED
    assert count_obstruction(UNKNOT, TREFOIL) == INCONCLUSIVE
    assert count_obstruction(TREFOIL, TREFOIL) == INCONCLUSIVE


# -- QuadNumber ----------------------------------------------------------

def test_quad_basic_arithmetic():
    r2 = QuadNumber.sqrt(2)
    assert r2 * r2 == QuadNumber(2)
    assert (1 + r2) * (QuadNumber(1) - r2) == QuadNumber(-1)
    assert QuadNumber.sqrt(4) == QuadNumber(2)
    assert QuadNumber.sqrt(12) == QuadNumber(0, 2, 3)


def test_quad_inverse_and_pow():
    r2 = QuadNumber.sqrt(2)
    assert r2.inverse() == QuadNumber(0, Fraction(1, 2), 2)
    assert (1 + r2) * (1 + r2).inverse() == QuadNumber(1)
    assert r2 ** -2 == QuadNumber(Fraction(1, 2))
    assert r2 ** 0 == QuadNumber(1)


def test_quad_signs_and_order():
    r2 = QuadNumber.sqrt(2)
    assert (r2 - QuadNumber(Fraction(3, 2))).sign() == -1
    assert (r2 - QuadNumber(Fraction(7, 5))).sign() == 1
    assert QuadNumber(Fraction(7, 5)) < r2 < QuadNumber(Fraction(3, 2))
    assert (-r2).sign() == -1
    assert QuadNumber(0).sign() == 0


def test_quad_mixing_fields_rejected():
    with pytest.raises(ValueError):
        QuadNumber.sqrt(2) + QuadNumber.sqrt(3)


def test_sqrt_power():
    assert sqrt_power(2, 2) == QuadNumber(2)
    assert sqrt_power(2, -2) == QuadNumber(Fraction(1, 2))
    assert sqrt_power(2, 1) == QuadNumber.sqrt(2)
    assert sqrt_power(2, -1) == QuadNumber(0, Fraction(1, 2), 2)
    assert sqrt_power(9, 1) == QuadNumber(3)


def test_is_prime_power():
    assert all(is_prime_power(q) for q in (2, 3, 4, 5, 7, 8, 9, 16, 27, 31))
    assert not any(is_prime_power(q) for q in (0, 1, 6, 10, 12, 36))


def test_polynomial_obstruction_filling_passes():
    [report] = polynomial_obstruction(None, TREFOIL, chi=-1, qs=[2])
    assert report.verdict == PASS
    assert report.lhs == QuadNumber(1)
    assert report.rhs == QuadNumber(5)


def test_polynomial_obstruction_concordance_fails():
    [report] = polynomial_obstruction(TREFOIL, UNKNOT, chi=0, qs=[2])
    assert report.verdict == OBSTRUCTED
    # 5/sqrt(2) on the left, sqrt(2) on the right
    assert report.lhs == QuadNumber(0, Fraction(5, 2), 2)
    assert report.rhs == QuadNumber(0, 1, 2)


def test_polynomial_obstruction_rejects_q6():
    with pytest.raises(NotPrimePower):
        polynomial_obstruction(None, TREFOIL, chi=-1, qs=[6])
