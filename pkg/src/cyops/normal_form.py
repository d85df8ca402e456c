"""Local normal form at a MUM point.

From the canonical flag the structure series alpha_1..alpha_n are peeled off
one at a time: with ``g_j`` the power-series pieces left after k steps,

    g_j  <-  g_j / g_0 + theta(g_{j+1} / g_0),     alpha_{k+1} = 1 / g_0.

The special coordinate is ``q = z exp(f_1/f_0)`` and the Y-invariants are
``(alpha_1 / alpha_{i+1}) o q^{-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .core.series import LogSeries, Series, compose, invert_unit, reverse
from .errors import NotMUM, NotSelfDual, OrderTooSmall
from .frobenius import DEFAULT_TRUNCATION, Flag, mum_flag
from .operators import Operator, _as_d, self_dual_witness


@dataclass(frozen=True)
class NormalFormData:
    flag: Flag
    structure_series: tuple       # alpha_1 .. alpha_n
    q: Series
    q_inverse: Series
    y_invariants: tuple           # Y_1 .. Y_{n-2}

    @property
    def n(self) -> int:
        return len(self.structure_series)


@dataclass(frozen=True)
class LambertExpansion:
    ell: int
    coefficients: tuple           # N_1 .. N_D

    def resum(self, truncation: int | None = None) -> Series:
        """1 + sum_d N_d d^ell z^d / (1 - z^d)."""
        n = truncation if truncation is not None else len(self.coefficients) + 1
        out = [mpq(0)] * n
        out[0] = mpq(1)
        for d, N in enumerate(self.coefficients, start=1):
            w = N * d ** self.ell
            for m in range(d, n, d):
                out[m] += w
        return Series(out)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)


def normalized_pieces(flag: Flag) -> list[Series]:
    """f_0..f_n divided by z^r, as shift-0 power series."""
    r = flag.mum_exponent
    return [flag.f(k).mul_z(-r).power_part() for k in range(flag.order)]


def _structure_from_pieces(g: list[Series]) -> list[Series]:
    alphas = []
    while len(g) > 1:
        inv = invert_unit(g[0])
        g = [g[j] * inv + (g[j + 1] * inv).theta() for j in range(len(g) - 1)]
        alphas.append(invert_unit(g[0]))
    return alphas


def structure_series(L: Operator, truncation: int = DEFAULT_TRUNCATION,
                     flag: Flag | None = None) -> list[Series]:
    """alpha_1..alpha_n; each is a unit power series with constant term 1."""
    flag = flag if flag is not None else mum_flag(L, truncation)
    return _structure_from_pieces(normalized_pieces(flag))


def q_from_flag(flag: Flag) -> Series:
    f = normalized_pieces(flag)
    if len(f) < 2:
        raise NotMUM("the q-coordinate needs at least two flag members")
    ratio = f[1] * invert_unit(f[0])
    return ratio.exp().mul_z(1)


def q_coordinate(L: Operator, truncation: int = DEFAULT_TRUNCATION) -> Series:
    """Special coordinate q = z exp(f_1/f_0), with ``truncation`` terms."""
    flag = mum_flag(L, truncation)
    q = q_from_flag(flag)
    return q.reshift(0).truncate(truncation)


def normal_form(L: Operator, truncation: int = DEFAULT_TRUNCATION) -> NormalFormData:
    flag = mum_flag(L, truncation)
    alphas = structure_series(L, truncation, flag)
    q = q_from_flag(flag).reshift(0).truncate(truncation)
    qinv = reverse(q)
    ys = []
    n = len(alphas)
    for i in range(1, n - 1):
        ys.append(compose(alphas[0] * invert_unit(alphas[i]), qinv))
    return NormalFormData(flag, tuple(alphas), q, qinv, tuple(ys))


def y_invariants(L: Operator, truncation: int = DEFAULT_TRUNCATION) -> list[Series]:
    """Y_1..Y_{n-2}; needs order at least 4."""
    if L.order < 4:
        raise OrderTooSmall("Y-invariants need an operator of order >= 4")
    return list(normal_form(L, truncation).y_invariants)


def apply_normal_form(alphas, y: LogSeries) -> LogSeries:
    """theta alpha_n theta ... alpha_1 theta applied to y."""
    out = y.theta()
    for a in alphas:
        out = (out * a).theta()
    return out


def lambert_coefficients(Y: Series, ell: int, depth: int) -> LambertExpansion:
    """N_1..N_depth with Y = 1 + sum_d N_d d^ell z^d/(1 - z^d).

    N_d = (c_d - sum_{e | d, e < d} N_e e^ell) / d^ell; non-integral values
    are returned as they are.
    """
    Y = Y.power_part()
    if Y[0] != 1:
        raise ValueError("Lambert expansion needs Y(0) = 1")
    if len(Y) < depth + 1:
        raise ValueError(f"need {depth + 1} coefficients, have {len(Y)}")
    N = []
    for d in range(1, depth + 1):
        acc = Y[d]
        for e in range(1, d):
            if d % e == 0:
                acc -= N[e - 1] * e ** ell
        N.append(acc / d ** ell)
    return LambertExpansion(ell, tuple(N))


def special_normal_form(L: Operator, truncation: int = DEFAULT_TRUNCATION) -> list[Series]:
    """The series (alpha_{i+1}/alpha_1) o q^{-1} for i = 1..n-1."""
    nf = normal_form(L, truncation)
    a = nf.structure_series
    return [compose(a[i] * invert_unit(a[0]), nf.q_inverse) for i in range(1, len(a))]


def special_normal_form_equal(L1: Operator, L2: Operator,
                              truncation: int = DEFAULT_TRUNCATION) -> bool:
    """True iff the special local normal forms agree to ``truncation``."""
    for L in (L1, L2):
        if self_dual_witness(L) is None:
            raise NotSelfDual("special normal forms are compared for self-dual operators only")
    if L1.order != L2.order:
        return False
    s1 = special_normal_form(L1, truncation)
    s2 = special_normal_form(L2, truncation)
    return all(a.coeffs == b.coeffs for a, b in zip(s1, s2))


@dataclass(frozen=True)
class ProdYResult:
    holds: bool
    constant: mpq
    lhs: Series


def prody_check(L: Operator, truncation: int = 30) -> ProdYResult:
    """Check (z^n alpha alpha_1^n / y_0^2) o q^{-1} = c * prod Y_i.

    ``alpha`` is the rational self-duality witness of the monic operator
    whose MUM exponent has been shifted to zero. With theta_q = alpha_1 theta
    the power of alpha_1 sits in the numerator (for the quintic the left side
    is then a multiple of the Yukawa coupling 5 + 2875 q + ...).
    """
    from .constructions import twist
    from .core.ratfunc import RatFunc

    M = _as_d(L).monic()
    flag = mum_flag(M, truncation)
    r = flag.mum_exponent
    if r:
        M = twist(M, RatFunc(-r) / RatFunc.z())
    alpha = self_dual_witness(M)
    if alpha is None:
        raise NotSelfDual("no rational self-duality witness")
    nf = normal_form(M, truncation)
    n = nf.n
    f0 = normalized_pieces(nf.flag)[0]
    a1 = nf.structure_series[0]
    za = alpha.to_series(truncation + n).mul_z(n).reshift(0).truncate(truncation)
    lhs = compose(za * a1 ** n * invert_unit(f0 * f0), nf.q_inverse)
    prod = Series.one(truncation)
    for Y in nf.y_invariants:
        prod = prod * Y
    ratio = lhs * invert_unit(prod)
    c = ratio[0]
    holds = all(x == 0 for x in ratio.coeffs[1:])
    return ProdYResult(holds, c, lhs)
