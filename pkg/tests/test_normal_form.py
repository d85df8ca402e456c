import pytest
from gmpy2 import mpq

from cyops import corpus
from cyops.constructions import pullback_monomial, pullback_rational, sym_power_order2
from cyops.core.poly import Poly
from cyops.core.ratfunc import RatFunc
from cyops.core.series import Series, compose, reverse
from cyops.errors import NotSelfDual, OrderTooSmall
from cyops.normal_form import (LambertExpansion, lambert_coefficients, normal_form, prody_check,
                               q_coordinate, special_normal_form_equal, structure_series,
                               y_invariants)
from cyops.operators import DOperator, ThetaOperator

z = RatFunc(Poly([0, 1]))


def test_trivial_structure_series():
    L = ThetaOperator([Poly([0, 0, 0, 0, 0, 1])])
    for a in structure_series(L, 10):
        assert a == Series.one(10)
    res = prody_check(L, 10)
    assert res.holds and res.constant == 1


def test_quintic_alpha1(quintic):
    a1 = structure_series(quintic, 10)[0]
    assert a1.coeffs[:2] == (1, -770)


def test_sym_cube_structure(ops):
    S = sym_power_order2(ops["E_tilde"], 3)
    a = structure_series(S, 16)
    assert a[0] == a[1] == a[2]
    assert all(Y == Series.one(len(Y)) for Y in y_invariants(S, 16))


def test_q_coordinates(quintic, ops):
    assert q_coordinate(quintic, 4).coeffs == (0, 1, 770, 1014275)
    assert q_coordinate(ops["R2"], 5).coeffs == (0, 1, 1152, 2150976, 4983447552)
    assert q_coordinate(ops["R1"], 4).coeffs == (0, 1, 7040, 67555904)


def test_theta_q_is_alpha1_inverse_times_q(quintic):
    nf = normal_form(quintic, 12)
    assert (nf.q.theta() * nf.structure_series[0]) == nf.q


def test_j_invariant_from_E_tilde(ops):
    qinv = reverse(q_coordinate(ops["E_tilde"], 8))
    scaled = compose(qinv, Series([0, 1728, 0, 0, 0, 0, 0, 0]))
    j = scaled.inverse() * 1728
    assert j.shift == -1
    assert j.coeffs == (1, 744, 196884, 21493760, 864299970, 20245856256, 333202640600)


def test_y_invariants(quintic, ops):
    (Y1,) = y_invariants(quintic, 6)
    assert Y1.coeffs[:2] == (1, 575)
    lam = lambert_coefficients(Y1, 3, 3)
    assert lam.coefficients == (575, 121850, 63441275)
    assert 5 * lam.coefficients[0] == 2875
    Ys = y_invariants(ops["R1"], 10)
    assert len(Ys) == 4 and Ys[0] == Ys[3] and Ys[1] == Ys[2]
    assert Ys[1] == Series.one(len(Ys[1])) and Ys[0] != Series.one(len(Ys[0]))
    with pytest.raises(OrderTooSmall):
        y_invariants(ops["E_tilde"], 10)


def test_lambert_round_trip():
    lam = LambertExpansion(3, tuple(mpq(k * k - 3, k + 1) for k in range(1, 9)))
    back = lambert_coefficients(lam.resum(), 3, 8)
    assert back == lam
    assert not back.is_integral()


def test_lambert_tables(ops):
    nf = normal_form(ops["R3"], 8)
    lam = lambert_coefficients(nf.y_invariants[0], 4, 3)
    assert lam.coefficients == (1485, mpq(9853515, 8), 2555194005)


def test_special_normal_form_equal(quintic, ops):
    assert special_normal_form_equal(quintic, quintic, 12)
    assert not special_normal_form_equal(quintic, ops["R1"], 12)
    moved = pullback_rational(quintic, z + z * z)
    assert special_normal_form_equal(quintic, moved, 12)
    scaled = pullback_monomial(quintic, 3, 1)
    assert not special_normal_form_equal(quintic, scaled, 12)
    with pytest.raises(NotSelfDual):
        special_normal_form_equal(quintic, DOperator([0, 1, 1, 1, 1]), 8)


def test_prody_quintic(quintic):
    res = prody_check(quintic, 20)
    assert res.holds and res.constant == -3125
