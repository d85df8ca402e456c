from fractions import Fraction
from math import factorial

import pytest
from gmpy2 import mpq

from cyops.constructions import sym_power_order2
from cyops.core.poly import Poly
from cyops.errors import NotMUM
from cyops.frobenius import flag_annihilated, local_structure, mum_flag
from cyops.operators import ThetaOperator


def pochhammer(a, m):
    out = Fraction(1)
    for k in range(m):
        out *= a + k
    return out


def test_quintic_f0_closed_form(quintic):
    f0 = mum_flag(quintic, 21).f(0)
    assert f0.coeffs[:3] == (1, 120, 113400)
    assert list(f0.coeffs) == [factorial(5 * m) // factorial(m) ** 5 for m in range(21)]


def test_theta_power_flag():
    L = ThetaOperator([Poly([0, 0, 0, 0, 1])])
    flag = mum_flag(L, 8)
    for k, y in enumerate(flag.solutions):
        # y_k = log^k z / k!: only the part of log-degree k survives, equal to 1
        assert y.part(k).coeffs == (1,) + (0,) * 7
        assert all(y.part(j).is_zero() for j in range(k))


def test_E_tilde_hypergeometric(ops):
    N = 15
    F = [pochhammer(Fraction(1, 12), m) * pochhammer(Fraction(5, 12), m) / factorial(m) ** 2
         for m in range(N)]
    # (1 - z)^(1/4) = sum (-1/4)_k z^k / k!
    B = [pochhammer(Fraction(-1, 4), k) / factorial(k) for k in range(N)]
    expected = [sum(F[j] * B[m - j] for j in range(m + 1)) for m in range(N)]
    f0 = mum_flag(ops["E_tilde"], N).f(0)
    assert [Fraction(int(c.numerator), int(c.denominator)) for c in f0.coeffs] == expected


def test_flag_normalization_and_extension(quintic):
    short, long = mum_flag(quintic, 12), mum_flag(quintic, 24)
    for k in range(1, 4):
        assert short.f(k).coeffs[0] == 0
        assert long.f(k).coeffs[:12] == short.f(k).coeffs
    assert flag_annihilated(quintic, long)


def test_not_mum(ops):
    with pytest.raises(NotMUM):
        mum_flag(ops["E"], 10)


def test_local_structure_examples(quintic):
    reg = local_structure(quintic, mpq(1, 7), 12)
    assert reg.exponents == [0, 1, 2, 3] and not reg.has_logs
    con = local_structure(quintic, mpq(1, 3125), 16)
    assert con.exponents == [0, 1, 1, 2]
    assert sorted(con.block_sizes, reverse=True) == [2, 1, 1]
    mum = local_structure(quintic, 0, 12)
    assert len(mum.exponent_classes) == 1 and mum.block_sizes == [4]


def _wr(a, b):
    return a * b.theta() - a.theta() * b


@pytest.mark.parametrize("name", ["R1", "R2", "R3", "R4", "R5"])
def test_wronskian_relation(ops, name):
    y = mum_flag(ops[name], 20).solutions
    # with y_k ~ log^k z / k! the relation holds with a plus sign
    assert (_wr(y[3], y[0]) - _wr(y[2], y[1])).is_zero()
    assert not _wr(y[3], y[0]).is_zero()


def test_even_order_identity(ops):
    S = sym_power_order2(ops["E_tilde"], 3)
    y = mum_flag(S, 20).solutions
    assert (y[0] * y[2] - y[1] * y[1] * mpq(1, 2)).is_zero()
