from math import comb, factorial

import pytest
from gmpy2 import mpq

from cyops.checker import (check_cy_type, galois_classify, n_integral_witness, order7_relations,
                           reconstruct_sym_root)
from cyops.constructions import pullback_monomial, sym_power_order2
from cyops.core.poly import Poly
from cyops.core.ratfunc import RatFunc
from cyops.core.series import Series
from cyops.errors import CannotNormalize, NotSymPower
from cyops.frobenius import mum_flag
from cyops.operators import DOperator, ThetaOperator

z = RatFunc(Poly([0, 1]))


def test_n_integral_examples(quintic):
    f0 = mum_flag(quintic, 60).f(0)
    assert n_integral_witness(f0, 10 ** 4, 60) == 1
    exp = Series([mpq(1, factorial(m)) for m in range(200)])
    assert n_integral_witness(exp, 10 ** 6, 200) is None
    K = Series([mpq(comb(2 * m, m), 4 ** m) ** 2 for m in range(200)])
    assert n_integral_witness(K, 10 ** 6, 200) == 16
    # an oracle check that 16 is right: 16^m A_m is an integer on the window
    assert all((16 ** m * c).denominator == 1 for m, c in enumerate(K.coeffs))


@pytest.mark.parametrize("lam,h", [(1, 1), (2, 1), (-3, 1), (1, 2), (5, 3)])
def test_verdict_stable_under_monomial_pullback(quintic, lam, h):
    v = check_cy_type(pullback_monomial(quintic, lam, h), 30, 10 ** 4, 60)
    assert v.overall
    assert v.property_M.witness == 0


def test_non_self_dual_fails_P():
    # every order-2 operator is self-dual, so take order 3
    L = ThetaOperator([Poly([0, 0, 0, 1]), Poly([5, 1, 3, 2])])
    v = check_cy_type(L, 20, 10 ** 4, 20)
    assert not v.property_P.passed and not v.overall


def test_not_mum_fails_M(ops):
    v = check_cy_type(ops["E"], 20, 10 ** 4, 20)
    assert not v.property_M.passed and not v.overall


def test_order_one():
    # theta - z/2 * something: y = (1 - z)^(-1/2) solves (1 - z) T - z/2
    L = ThetaOperator([Poly([0, 1]), Poly([mpq(-1, 2), -1])])
    v = check_cy_type(L, 20, 10 ** 4, 40)
    assert v.property_N.passed and v.property_N.witness == 4
    assert v.property_Q.witness == "vacuous"


def test_reconstruct_examples(quintic):
    assert reconstruct_sym_root(DOperator([0, 0, 0, 1])) == DOperator([0, 0, 1])
    with pytest.raises(NotSymPower):
        reconstruct_sym_root(quintic)


def test_galois_order2(ops):
    g = galois_classify(ops["E_tilde"])
    assert g.ambient == "Sp_2" and g.classification == "SL2-criterion"


def test_order7_generic_fails():
    L = DOperator([0, 0, 0, 0, 0, z, 0, 1])
    rel = order7_relations(L)
    assert not rel.self_duality_relations
    assert not rel.relations["a4"]


def test_order7_strict(ops):
    with pytest.raises(CannotNormalize):
        order7_relations(ops["R1"], strict=True)
    rel = order7_relations(ops["R1"])
    assert rel.twisted.coeff(6).is_zero() and not rel.g_rational


@pytest.mark.slow
def test_sym6_relations(ops):
    rel = order7_relations(sym_power_order2(ops["E_tilde"], 6))
    assert all(rel.relations.values())
