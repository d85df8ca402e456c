from math import comb

import pytest
from gmpy2 import mpq

from cyops.core.poly import Poly
from cyops.core.ratfunc import RatFunc
from cyops.core.series import (Series, compose, invert_unit, nth_root_unit, pade_reconstruct,
                               reverse)
from cyops.errors import CompositionAtNonzeroPoint, NonUnitConstantTerm, NotAUnit, NotReversible

N = 12


def S(*cs):
    return Series(list(cs) + [0] * (N - len(cs)))


def test_invert_geometric():
    assert invert_unit(S(1, -1)).coeffs == tuple([mpq(1)] * N)


def test_invert_one():
    assert invert_unit(S(1)) == S(1)


def test_invert_long_division():
    # 1/(1+z)^2 by long division: coefficient of z^m is (-1)^m (m+1)
    assert invert_unit(S(1, 2, 1)).coeffs == tuple(mpq((-1) ** m * (m + 1)) for m in range(N))


def test_invert_non_unit():
    with pytest.raises(NotAUnit):
        invert_unit(S(0, 1))


def test_compose_examples():
    geo = Series([1] * N)
    assert compose(geo, S(0, 0, 1)).coeffs == tuple(mpq(1 - m % 2) for m in range(N))
    f = Series(range(1, N + 1))
    assert compose(f, S(0, 1)) == f
    assert compose(S(1, 1), S(0, 1, 1)) == S(1, 1, 1)


def test_compose_needs_zero_constant():
    with pytest.raises(CompositionAtNonzeroPoint):
        compose(S(1, 1), S(1, 1))


def test_reverse_lagrange():
    # inverse of z + z^2: coefficient of z^m is (-1)^(m-1) Catalan(m-1)
    inv = reverse(S(0, 1, 1))
    cat = [comb(2 * k, k) // (k + 1) for k in range(N)]
    assert inv.coeffs == tuple([mpq(0)] + [mpq((-1) ** (m - 1) * cat[m - 1]) for m in range(1, N)])


def test_reverse_mobius():
    f = Series([0] + [1] * (N - 1))
    assert reverse(f).coeffs == tuple([mpq(0)] + [mpq((-1) ** (m - 1)) for m in range(1, N)])
    assert reverse(S(0, 1)) == S(0, 1)


def test_reverse_errors():
    with pytest.raises(NotReversible):
        reverse(S(0, 0, 1))


def test_nth_root():
    cube = S(1, 3, 3, 1)
    assert nth_root_unit(cube, 3) == S(1, 1)
    assert nth_root_unit(S(1), 5) == S(1)
    half = mpq(1, 2)
    binom = [mpq(1)]
    for k in range(1, N):
        binom.append(binom[-1] * (half - k + 1) / k)
    assert nth_root_unit(S(1, 1), 2).coeffs == tuple(binom)
    with pytest.raises(NonUnitConstantTerm):
        nth_root_unit(S(2, 1), 2)


def test_pade_examples():
    f = Series([1] + [2] * (N - 1))
    assert pade_reconstruct(f, 1, 1) == RatFunc(Poly([1, 1]), Poly([1, -1]))
    assert pade_reconstruct(S(1, 1), 1, 0) == RatFunc(Poly([1, 1]))
    g = Series([(m + 1) * 5 ** m for m in range(N)])
    r = pade_reconstruct(g, 0, 2)
    assert r == RatFunc(Poly([1]), Poly([1, -10, 25]))


def test_series_arith_and_log_exp():
    f = S(1, 1)
    assert (f * invert_unit(f)) == S(1)
    assert (S(0, 1) * S(0, 1)) == S(0, 0, 1)
    e = S(0, 1).exp()
    assert e.coeffs[:4] == (1, 1, mpq(1, 2), mpq(1, 6))
    assert e.log() == S(0, 1)
    assert S(1, 1, 1).theta() == S(0, 1, 2)
