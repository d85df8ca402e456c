"""Linear differential operators over Q(z).

Two presentations of the same ring element are supported:

* :class:`DOperator` -- ``sum a_i(z) D^i`` with rational-function
  coefficients, ``D = d/dz``.
* :class:`ThetaOperator` -- ``sum z^i P_i(T)`` with polynomial slices in the
  Euler operator ``T = z d/dz``.

``to_theta_form`` clears denominators on the left, so the theta form of a
D-operator agrees with it only up to a rational left factor; both annihilate
the same functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence, Union

from gmpy2 import mpq

from .core.linalg import nullspace
from .core.poly import Poly, falling, irreducible_factors, rat_str, rational_roots
from .core.ratfunc import RatFunc
from .core.series import LogSeries, Series
from .errors import IrregularSingularity, NonIntegralResidue

INFINITY = "infinity"


def _stirling2(k: int) -> list[int]:
    """Row k of Stirling numbers of the second kind, S(k, 0..k)."""
    row = [1]
    for n in range(1, k + 1):
        new = [0] * (n + 1)
        for j in range(1, n + 1):
            new[j] = j * (row[j] if j < len(row) else 0) + row[j - 1]
        row = new
    return row


class DOperator:
    """``sum_i coeffs[i] * D^i`` with ``coeffs[-1] != 0``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = [RatFunc.coerce(c) for c in coeffs]
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs) if cs else (RatFunc(0),)

    @classmethod
    def D(cls) -> "DOperator":
        return cls([0, 1])

    @classmethod
    def mult(cls, a) -> "DOperator":
        """Multiplication by the rational function ``a``."""
        return cls([a])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> RatFunc:
        return self.coeffs[-1]

    def coeff(self, i: int) -> RatFunc:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else RatFunc(0)

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0].is_zero()

    def is_monic(self) -> bool:
        return self.leading == RatFunc(1)

    def monic(self) -> "DOperator":
        lead = self.leading
        if lead == RatFunc(1):
            return self
        inv = lead.inverse()
        return DOperator([c * inv for c in self.coeffs])

    def __eq__(self, other) -> bool:
        if isinstance(other, ThetaOperator):
            other = other.to_d()
        if not isinstance(other, DOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"DOperator({self.to_str()})"

    def to_str(self) -> str:
        terms = []
        for i in range(self.order, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            d = "" if i == 0 else ("D" if i == 1 else f"D^{i}")
            if not d:
                terms.append(f"({c.to_str()})")
            elif c == RatFunc(1):
                terms.append(d)
            else:
                terms.append(f"({c.to_str()})*{d}")
        return " + ".join(terms) if terms else "0"

    # ring operations
    def __add__(self, other) -> "DOperator":
        other = _as_d(other)
        k = max(len(self.coeffs), len(other.coeffs))
        return DOperator([self.coeff(i) + other.coeff(i) for i in range(k)])

    __radd__ = __add__

    def __neg__(self) -> "DOperator":
        return DOperator([-c for c in self.coeffs])

    def __sub__(self, other) -> "DOperator":
        return self + (-_as_d(other))

    def __rsub__(self, other) -> "DOperator":
        return _as_d(other) - self

    def __mul__(self, other) -> "DOperator":
        other = _as_d(other)
        out = [RatFunc(0)] * (self.order + other.order + 1)
        # (a D^i)(b D^j) = a sum_k C(i,k) b^(k) D^(i+j-k)
        derivs = {}
        for j, b in enumerate(other.coeffs):
            if b.is_zero():
                continue
            dk = [b]
            for _ in range(self.order):
                dk.append(dk[-1].derivative())
            derivs[j] = dk
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, dk in derivs.items():
                for k in range(i + 1):
                    if dk[k].is_zero():
                        continue
                    out[i + j - k] = out[i + j - k] + a * dk[k] * comb(i, k)
        return DOperator(out)

    def __rmul__(self, other) -> "DOperator":
        return _as_d(other) * self

    def __pow__(self, k: int) -> "DOperator":
        out = DOperator([1])
        for _ in range(k):
            out = out * self
        return out

    def dual(self) -> "DOperator":
        """``sum (-1)^(ord+i) D^i a_i``; monic operators have monic duals."""
        n1 = self.order
        out = [RatFunc(0)] * (n1 + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            sign = -1 if (n1 + i) % 2 else 1
            # D^i a = sum_k C(i,k) a^(i-k) D^k
            da = [a]
            for _ in range(i):
                da.append(da[-1].derivative())
            for k in range(i + 1):
                out[k] = out[k] + da[i - k] * (sign * comb(i, k))
        return DOperator(out)

    def formal_adjoint(self) -> "DOperator":
        """``sum (-D)^i a_i``; differs from :meth:`dual` by (-1)^order."""
        d = self.dual()
        return -d if self.order % 2 else d

    def to_theta(self, normalize: bool = True) -> "ThetaOperator":
        return to_theta_form(self, normalize=normalize)

    def to_d(self) -> "DOperator":
        return self

    def apply(self, y) -> LogSeries:
        return apply(self, y)

    def translate(self, p) -> "DOperator":
        """Operator in the coordinate w = z - p (so the point p moves to 0)."""
        return DOperator([c.taylor_shift(p) for c in self.coeffs])


class ThetaOperator:
    """``sum_i z^i slices[i](T)`` with T = z d/dz."""

    __slots__ = ("slices",)

    def __init__(self, slices: Sequence):
        ss = [s if isinstance(s, Poly) else Poly(s) for s in slices]
        while len(ss) > 1 and ss[-1].is_zero():
            ss.pop()
        self.slices = tuple(ss) if ss else (Poly(),)

    @classmethod
    def theta(cls) -> "ThetaOperator":
        return cls([Poly([0, 1])])

    @classmethod
    def z(cls) -> "ThetaOperator":
        return cls([Poly(), Poly([1])])

    @property
    def order(self) -> int:
        return max(s.degree for s in self.slices)

    @property
    def z_degree(self) -> int:
        return len(self.slices) - 1

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.slices)

    def slice(self, i: int) -> Poly:
        return self.slices[i] if 0 <= i < len(self.slices) else Poly()

    def __eq__(self, other) -> bool:
        if isinstance(other, DOperator):
            return self.to_d() == other
        if not isinstance(other, ThetaOperator):
            return NotImplemented
        return self.slices == other.slices

    def __hash__(self):
        return hash(self.slices)

    def __repr__(self):
        return f"ThetaOperator({self.to_str()})"

    def to_str(self) -> str:
        """Canonical text in the parser grammar (``T`` for theta)."""
        terms = []
        for i, s in enumerate(self.slices):
            if s.is_zero():
                continue
            body = s.to_str("T")
            if i == 0:
                terms.append(body)
                continue
            zpow = "z" if i == 1 else f"z^{i}"
            terms.append(f"{zpow}*({body})")
        return " + ".join(terms) if terms else "0"

    def __add__(self, other) -> "ThetaOperator":
        if isinstance(other, DOperator):
            return NotImplemented
        other = _as_theta(other)
        k = max(len(self.slices), len(other.slices))
        return ThetaOperator([self.slice(i) + other.slice(i) for i in range(k)])

    __radd__ = __add__

    def __neg__(self) -> "ThetaOperator":
        return ThetaOperator([-s for s in self.slices])

    def __sub__(self, other) -> "ThetaOperator":
        if isinstance(other, DOperator):
            return NotImplemented
        return self + (-_as_theta(other))

    def __mul__(self, other) -> "ThetaOperator":
        if isinstance(other, DOperator):
            return NotImplemented
        other = _as_theta(other)
        # z^i P(T) z^j Q(T) = z^(i+j) P(T+j) Q(T)
        out = [Poly()] * (len(self.slices) + len(other.slices) - 1)
        for j, qj in enumerate(other.slices):
            if qj.is_zero():
                continue
            for i, pi in enumerate(self.slices):
                if pi.is_zero():
                    continue
                out[i + j] = out[i + j] + pi.taylor_shift(j) * qj
        return ThetaOperator(out)

    def __rmul__(self, other) -> "ThetaOperator":
        return _as_theta(other) * self

    def __pow__(self, k: int) -> "ThetaOperator":
        out = ThetaOperator([Poly([1])])
        for _ in range(k):
            out = out * self
        return out

    def to_d(self) -> DOperator:
        return to_d_form(self)

    def to_theta(self, normalize: bool = True) -> "ThetaOperator":
        return self.normalized() if normalize else self

    def normalized(self) -> "ThetaOperator":
        """Strip z-powers and polynomial content on the left, then scale to a
        primitive integer operator whose lowest slice has positive lead."""
        return to_theta_form(to_d_form(self))

    def dual(self) -> "ThetaOperator":
        """Sign-normalised dual, ``(-1)^order`` times the formal adjoint."""
        k = self.order
        out = [s.compose(Poly([-1 - i, -1])) for i, s in enumerate(self.slices)]
        op = ThetaOperator(out)
        return -op if k % 2 else op

    def formal_adjoint(self) -> "ThetaOperator":
        """``sum z^i P_i(-T-1-i)`` (the rule T^dual = -T - 1)."""
        return ThetaOperator([s.compose(Poly([-1 - i, -1]))
                              for i, s in enumerate(self.slices)])

    def apply(self, y) -> LogSeries:
        return apply(self, y)


Operator = Union[DOperator, ThetaOperator]


def _as_d(x) -> DOperator:
    if isinstance(x, DOperator):
        return x
    if isinstance(x, ThetaOperator):
        return x.to_d()
    return DOperator([RatFunc.coerce(x)])


def _as_theta(x) -> ThetaOperator:
    if isinstance(x, ThetaOperator):
        return x
    return ThetaOperator([Poly([x])])


# ---------------------------------------------------------------------------
# presentations


def to_d_form(op: Operator) -> DOperator:
    """Exact D-form of a theta operator (theta^k = sum S(k,j) z^j D^j)."""
    if isinstance(op, DOperator):
        return op
    order = op.order
    out = [Poly()] * (order + 1)
    stir = [_stirling2(k) for k in range(order + 1)]
    for i, s in enumerate(op.slices):
        for k, pk in enumerate(s.coeffs):
            if pk == 0:
                continue
            for j in range(1, k + 1) if k else [0]:
                c = stir[k][j] * pk
                if c:
                    out[j] = out[j] + Poly.monomial(i + j, c)
    return DOperator([RatFunc(p) for p in out])


def to_theta_form(op: Operator, normalize: bool = True) -> ThetaOperator:
    """Theta form ``g * op`` with the smallest polynomial left factor g.

    With ``normalize`` the result is additionally made primitive over Z with
    a positive leading coefficient in its lowest nonzero slice.
    """
    if isinstance(op, ThetaOperator):
        if not normalize:
            return op
        op = to_d_form(op)
    elif not normalize:
        return _exact_theta(op)
    # g = lcm over j of den(a_j) z^j makes every g a_j z^-j a polynomial
    g = Poly([1])
    for j, a in enumerate(op.coeffs):
        if a.is_zero():
            continue
        dj = a.den * Poly.monomial(j)
        g = (g * dj) // g.gcd(dj)
    cs = []
    for j, a in enumerate(op.coeffs):
        if a.is_zero():
            cs.append(Poly())
            continue
        cj = (g // (a.den * Poly.monomial(j))) * a.num
        cs.append(cj)
    common = Poly()
    for c in cs:
        if not c.is_zero():
            common = c if common.is_zero() else common.gcd(c)
    if normalize and common.degree > 0:
        cs = [c // common for c in cs]
    zdeg = max(c.degree for c in cs)
    slices = []
    falls = [falling(j) for j in range(len(cs))]
    for i in range(zdeg + 1):
        s = Poly()
        for j, c in enumerate(cs):
            if c[i] != 0:
                s = s + falls[j] * c[i]
        slices.append(s)
    theta = ThetaOperator(slices)
    if normalize:
        theta = _primitive_theta(theta)
    return theta


def _exact_theta(op: DOperator) -> ThetaOperator:
    """Theta form of an element of Q[z][theta] without any left factor."""
    cs = []
    for j, a in enumerate(op.coeffs):
        if not a.is_poly() or (not a.is_zero() and a.num.valuation() < j):
            raise ValueError("operator is not a polynomial in z and theta")
        cs.append(a.num.shift_down(j) if not a.is_zero() else Poly())
    zdeg = max(c.degree for c in cs)
    slices = []
    for i in range(zdeg + 1):
        s = Poly()
        for j, c in enumerate(cs):
            if c[i] != 0:
                s = s + falling(j) * c[i]
        slices.append(s)
    return ThetaOperator(slices)


def _primitive_theta(op: ThetaOperator) -> ThetaOperator:
    from math import gcd, lcm

    den = 1
    for s in op.slices:
        for c in s.coeffs:
            den = lcm(den, int(c.denominator))
    g = 0
    for s in op.slices:
        for c in s.coeffs:
            g = gcd(g, int(c * den))
    lowest = next(s for s in op.slices if not s.is_zero())
    if lowest.lc < 0:
        g = -g
    scale = mpq(den, g)
    return ThetaOperator([s * scale for s in op.slices])


def multiply(P: Operator, Q: Operator) -> Operator:
    """Composition ``P o Q``; theta forms stay theta forms."""
    if isinstance(P, ThetaOperator) and isinstance(Q, ThetaOperator):
        return P * Q
    return _as_d(P) * _as_d(Q)


def dual(L: Operator) -> Operator:
    return L.dual()


# ---------------------------------------------------------------------------
# action on logarithmic series


def _apply_poly_theta(p: Poly, y: LogSeries) -> LogSeries:
    if p.is_zero():
        return y * 0
    acc = y * p.coeffs[-1]
    for c in reversed(p.coeffs[:-1]):
        acc = acc.theta() + y * c
    return acc


def apply(L: Operator, y) -> LogSeries:
    """Exact action of L on a (logarithmic) series."""
    if isinstance(y, Series):
        y = LogSeries([y])
    if isinstance(L, ThetaOperator):
        acc = None
        for i, s in enumerate(L.slices):
            if s.is_zero():
                continue
            t = _apply_poly_theta(s, y)
            t = LogSeries([p.mul_z(i) for p in t.parts])
            acc = t if acc is None else acc + t
        return acc if acc is not None else y * 0
    n = max(len(p) for p in y.parts)
    acc = None
    dy = y
    for i, a in enumerate(L.coeffs):
        if i:
            dy = dy.derivative()
        if a.is_zero():
            continue
        term = dy * a.to_series(n)
        acc = term if acc is None else acc + term
    return acc if acc is not None else y * 0


# ---------------------------------------------------------------------------
# indicial equations


@dataclass(frozen=True)
class IndicialData:
    point: object
    polynomial: Poly
    rational_roots: tuple
    residual_factor: Poly

    @property
    def exponents(self) -> list:
        """Rational exponents with multiplicity, sorted ascending."""
        out = []
        for r, m in self.rational_roots:
            out.extend([r] * m)
        return out

    def all_rational(self) -> bool:
        return self.residual_factor.degree == 0


def local_theta_at(L: Operator, p) -> ThetaOperator:
    """Normalised theta form of L in a local coordinate centred at ``p``."""
    if p == INFINITY:
        from .constructions import pullback_inversion

        return to_theta_form(pullback_inversion(L))
    p = mpq(p)
    if p == 0:
        return to_theta_form(L)
    return to_theta_form(_as_d(L).translate(p))


def indicial(L: Operator, p=0) -> IndicialData:
    """Indicial polynomial (monic) and its rational roots at ``p``."""
    order = L.order
    if p == INFINITY:
        theta = to_theta_form(L)
        poly = theta.slices[-1].compose(Poly([0, -1]))
    else:
        poly = local_theta_at(L, p).slices[0]
    if poly.degree != order:
        raise IrregularSingularity(
            f"indicial polynomial at {p} has degree {poly.degree} < order {order}")
    poly = poly.monic()
    roots, residual = rational_roots(poly)
    return IndicialData(p, poly, tuple(roots), residual)


def singular_points(L: Operator) -> tuple[list, Poly]:
    """Finite rational singular points and the residual irrational factor.

    A finite point is singular when some coefficient of the monic D-form
    has a pole there.
    """
    M = _as_d(L).monic()
    den = Poly([1])
    for a in M.coeffs:
        den = (den * a.den) // den.gcd(a.den)
    if den.degree < 1:
        return [], Poly([1])
    roots, residual = rational_roots(den)
    return [r for r, _ in roots], residual


def is_regular_point(L: Operator, p) -> bool:
    M = _as_d(L).monic()
    return all(a.den(p) != 0 for a in M.coeffs)


# ---------------------------------------------------------------------------
# self-duality


@dataclass(frozen=True)
class SelfDualWitness:
    alpha: RatFunc
    convention: str = "signed-dual"   # L alpha = alpha L^dual
    residues: dict = field(default_factory=dict)


def log_derivative_solution(u: RatFunc):
    """Rational alpha with alpha'/alpha = u, or None if none exists.

    Raises :class:`NonIntegralResidue` when u has a simple pole with a
    non-integral residue (alpha would need a fractional power).
    """
    if u.is_zero():
        return RatFunc(1), {}
    A, B = u.num, u.den
    if A.degree >= B.degree:
        return None, {}
    alpha = RatFunc(1)
    residues = {}
    for f, mult in irreducible_factors(B):
        if f.degree < 1:
            continue
        if mult > 1:
            return None, {}
        cof = B // f
        R = A % f
        S = (f.derivative() * cof) % f
        e = R.lc / S.lc
        if R != S * e:
            return None, {}
        residues[f.to_str()] = e
        if e.denominator != 1:
            raise NonIntegralResidue(
                f"residue {rat_str(e)} along {f.to_str()} is not an integer")
        alpha = alpha * RatFunc(f) ** int(e)
    if alpha.derivative() != alpha * u:
        return None, residues
    return alpha, residues


def self_dual_witness(L: Operator):
    """Rational alpha with ``L alpha = alpha L^dual``, or None.

    The candidate comes from the first-order equation
    ``alpha'/alpha = -2 a_n / (n+1)``; the full identity is then checked
    exactly.
    """
    w = self_dual_witness_full(L)
    return None if w is None else w.alpha


def self_dual_witness_full(L: Operator):
    M = _as_d(L).monic()
    n1 = M.order
    if n1 < 1:
        return None
    u = M.coeff(n1 - 1) * mpq(-2, n1)
    alpha, residues = log_derivative_solution(u)
    if alpha is None:
        return None
    if verify_self_dual(M, alpha):
        return SelfDualWitness(alpha, "signed-dual", residues)
    if verify_self_dual(M, alpha, adjoint=True):
        return SelfDualWitness(alpha, "formal-adjoint", residues)
    return None


def verify_self_dual(L: Operator, alpha: RatFunc, adjoint: bool = False) -> bool:
    """Exact check of ``L alpha == alpha L^dual`` (monic form of L)."""
    M = _as_d(L).monic()
    Ld = M.formal_adjoint() if adjoint else M.dual()
    a = DOperator.mult(alpha)
    return M * a == a * Ld


# ---------------------------------------------------------------------------
# minimal operators of series


def min_operator_of_series(ys, max_order: int, max_coeff_deg: int,
                           min_order: int | None = None) -> DOperator:
    """Lowest-order operator with polynomial coefficients of degree at most
    ``max_coeff_deg`` annihilating every series in ``ys``.

    For each order the smallest workable coefficient degree is located by
    rank computations modulo a prime; the kernel itself is exact and the
    result (monic D-form) is re-checked by :func:`apply`.
    """
    from .errors import NoOperatorInBounds

    ys = [LogSeries([y]) if isinstance(y, Series) else y for y in ys]
    start = min_order if min_order is not None else max(1, series_rank(ys))
    for k in range(start, max_order + 1):
        system = _KernelSystem(ys, k)
        if not system.has_kernel(max_coeff_deg):
            continue
        lo, hi = -1, max_coeff_deg
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if system.has_kernel(mid):
                hi = mid
            else:
                lo = mid
        for d in range(hi, max_coeff_deg + 1):
            for v in system.kernel(d):
                op = _vector_to_op(v, k, d)
                if op.order < k:
                    continue
                op = op.monic()
                if all(apply(op, y).is_zero() for y in ys):
                    return op
    raise NoOperatorInBounds(
        f"no operator of order <= {max_order} with coefficient degree <= {max_coeff_deg}")


def _vector_to_op(v, k: int, d: int) -> DOperator:
    coeffs = []
    for i in range(k + 1):
        coeffs.append(RatFunc(Poly(v[i * (d + 1):(i + 1) * (d + 1)])))
    return DOperator(coeffs)


class _KernelSystem:
    """Linear conditions on sum_i p_i(z) D^i killing every series."""

    def __init__(self, ys, k: int):
        self.k = k
        self.blocks = []
        for y in ys:
            ders = [y]
            for _ in range(k):
                ders.append(ders[-1].derivative())
            depth = max(len(t.parts) for t in ders)
            lo = min(p.shift for t in ders for p in t.parts)
            hi = min(t.precision for t in ders)
            for j in range(depth):
                self.blocks.append(([t.part(j) for t in ders], lo, hi))

    def rows(self, d: int):
        rows = []
        zero = mpq(0)
        for parts, lo, hi in self.blocks:
            for m in range(lo, hi):
                row = []
                for p in parts:
                    for e in range(d + 1):
                        row.append(p[m - e] if lo <= m - e < p.precision else zero)
                if any(row):
                    rows.append(row)
        return rows

    def has_kernel(self, d: int) -> bool:
        from .core.linalg import rank_mod

        ncols = (self.k + 1) * (d + 1)
        return rank_mod(self.rows(d), ncols) < ncols

    def kernel(self, d: int):
        return nullspace(self.rows(d), (self.k + 1) * (d + 1))


def _kernel(ys, k: int, d: int):
    return _KernelSystem(ys, k).kernel(d)


def series_rank(ys) -> int:
    """Dimension over Q of the span of the given (log) series."""
    from .core.linalg import rank

    ys = [LogSeries([y]) if isinstance(y, Series) else y for y in ys]
    if not ys:
        return 0
    lo = min(p.shift for y in ys for p in y.parts)
    hi = min(y.precision for y in ys)
    depth = max(len(y.parts) for y in ys)
    rows = [y.vector(lo, hi, depth) for y in ys]
    return rank(rows, len(rows[0]))
