"""Pullbacks, twists and symmetric powers of differential operators."""

from __future__ import annotations

from gmpy2 import mpq

from .core.poly import Poly
from .core.ratfunc import RatFunc
from .core.series import LogSeries, Series
from .errors import DegenerateSymmetricPower, NoOperatorInBounds
from .operators import (DOperator, Operator, ThetaOperator, _as_d, apply,
                        min_operator_of_series, series_rank, to_theta_form)


def pullback_monomial(L: Operator, lam=1, h: int = 1) -> ThetaOperator:
    """Operator whose solutions are ``y(lam * z^h)`` for solutions y of L.

    In theta form x = lam z^h turns theta_x into theta_z / h and x^i into
    lam^i z^(h i).
    """
    lam = mpq(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    if h < 1:
        raise ValueError("h must be a positive integer")
    theta = L if isinstance(L, ThetaOperator) else to_theta_form(L)
    out = [Poly()] * (h * (len(theta.slices) - 1) + 1)
    for i, s in enumerate(theta.slices):
        out[h * i] = s.scale_var(mpq(1, h)) * lam ** i
    return to_theta_form(ThetaOperator(out))


def pullback_inversion(L: Operator) -> ThetaOperator:
    """Operator whose solutions are ``y(1/z)``."""
    theta = L if isinstance(L, ThetaOperator) else to_theta_form(L)
    m = len(theta.slices) - 1
    out = [theta.slices[m - k].scale_var(-1) for k in range(m + 1)]
    return to_theta_form(ThetaOperator(out))


def pullback_rational(L: Operator, psi: RatFunc) -> DOperator:
    """Monic operator whose solutions are ``y(psi(z))`` for a rational map."""
    psi = RatFunc.coerce(psi)
    dpsi = psi.derivative()
    if dpsi.is_zero():
        raise ValueError("pullback along a constant map")
    M = _as_d(L).monic()
    step = DOperator([0, dpsi.inverse()])       # d/dx = (1/psi') d/dz
    acc = DOperator([0])
    power = DOperator([1])
    for i, a in enumerate(M.coeffs):
        if i:
            power = step * power
        if not a.is_zero():
            acc = acc + DOperator.mult(a.compose(psi)) * power
    return acc.monic()


def twist(L: Operator, u) -> DOperator:
    """Substitute D -> D - u in the monic form.

    Solutions of the result are f * y for solutions y of L, where f'/f = u.
    """
    u = RatFunc.coerce(u)
    M = _as_d(L).monic()
    step = DOperator([-u, 1])
    acc = DOperator([0])
    power = DOperator([1])
    for i, a in enumerate(M.coeffs):
        if i:
            power = step * power
        if not a.is_zero():
            acc = acc + DOperator.mult(a) * power
    return acc


def _coefficient_degree_bound(P: DOperator, n: int) -> int:
    """Generous bound for the coefficient degrees of Sym^n(P)."""
    M = P.monic()
    den = Poly([1])
    for a in M.coeffs:
        den = (den * a.den) // den.gcd(a.den)
    num = max(a.num.degree + den.degree - a.den.degree for a in M.coeffs)
    return max(1, (n + 1) * max(den.degree, num, 1) + n)


def annihilates_sym_power(S: Operator, P: Operator, n: int) -> bool:
    """Exact test that S kills every product of n solutions of P.

    With y'' = -b1 y' - b2 y the derivatives of y^n are tracked in the basis
    m_j = y^(n-j) y'^j, where D m_j = (n-j) m_(j+1) - j b1 m_j - j b2 m_(j-1).
    S kills all products iff S(y^n) is the zero combination.
    """
    M = _as_d(P).monic()
    if M.order != 2:
        raise ValueError("P must have order 2")
    b2, b1 = M.coeff(0), M.coeff(1)
    S = _as_d(S)
    zero = RatFunc(0)
    v = [RatFunc(1)] + [zero] * n
    acc = [zero] * (n + 1)
    for i in range(S.order + 1):
        c = S.coeff(i)
        if not c.is_zero():
            acc = [a + c * x for a, x in zip(acc, v)]
        if i == S.order:
            break
        w = [x.derivative() for x in v]
        for j, x in enumerate(v):
            if x.is_zero():
                continue
            if j < n:
                w[j + 1] = w[j + 1] + x * (n - j)
            if j:
                w[j] = w[j] - x * b1 * j
                w[j - 1] = w[j - 1] - x * b2 * j
        v = w
    return all(a.is_zero() for a in acc)


def sym_power_order2(P: Operator, n: int, max_coeff_deg: int | None = None) -> DOperator:
    """``Sym^n`` of a second order operator, in monic D-form.

    Built as the minimal operator of the products u^(n-k) v^k of a local
    solution basis {u, v}; the result is then checked exactly (independent
    of any truncation) with :func:`annihilates_sym_power`.
    """
    from .frobenius import local_basis

    P = _as_d(P)
    if P.order != 2:
        raise ValueError("sym_power_order2 needs an operator of order 2")
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return P.monic()
    bound = max_coeff_deg if max_coeff_deg is not None else _coefficient_degree_bound(P, n)
    trunc = bound + n + 30
    for _ in range(3):
        point, (u, v) = local_basis(P, trunc)
        one = LogSeries([Series.one(trunc)])
        upow, vpow = [one], [one]
        for _ in range(n):
            upow.append(upow[-1] * u)
            vpow.append(vpow[-1] * v)
        prods = [upow[n - k] * vpow[k] for k in range(n + 1)]
        if series_rank(prods) < n + 1:
            raise DegenerateSymmetricPower("products of solutions are linearly dependent")
        try:
            op = min_operator_of_series(prods, n + 1, bound, min_order=n + 1)
        except NoOperatorInBounds:
            raise DegenerateSymmetricPower("no operator of order n+1 found in bounds")
        if point != 0:
            op = op.translate(-point)
        op = op.monic()
        if annihilates_sym_power(op, P, n):
            return op
        trunc *= 2
    raise ArithmeticError("symmetric power failed the exact check")


def sym_square_order(L: Operator, truncation: int = 30) -> int:
    """Dimension of the span of pairwise products of a local solution basis.

    Equals the order of the minimal operator annihilating all products
    ``y_i y_j`` (the symmetric square of L).
    """
    from .frobenius import local_basis

    L = _as_d(L)
    if L.order < 2:
        raise ValueError("need order at least 2")
    _, sols = local_basis(L, truncation)
    prods = [sols[i] * sols[j] for i in range(len(sols)) for j in range(i, len(sols))]
    return series_rank(prods)
