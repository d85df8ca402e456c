"""Local solutions at regular singular points (Frobenius method).

Solutions are computed for the theta form ``sum z^i P_i(T)`` as
``z^rho * sum_m sum_j c[m][j] z^m ln(z)^j / j!``. On the block of
coefficients belonging to ``z^m`` the Euler operator acts as ``m + N`` with
``N`` the shift ``j -> j - 1`` on the log index, which turns the differential
equation into a triangular recursion in m.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .core.linalg import rank
from .core.poly import Poly, rational_roots
from .core.series import LogSeries, Series
from .errors import IrrationalExponents, IrregularSingularity, NotMUM
from .operators import INFINITY, Operator, ThetaOperator, local_theta_at, to_theta_form

DEFAULT_TRUNCATION = 50


@dataclass(frozen=True)
class Flag:
    """Flag ``y_k = sum_j ln(z)^j/j! f_{k-j}`` at a MUM point z = 0."""

    solutions: tuple
    mum_exponent: int

    @property
    def order(self) -> int:
        return len(self.solutions)

    @property
    def truncation(self) -> int:
        return len(self.solutions[0].parts[0])

    def f(self, k: int) -> Series:
        """The power-series piece f_k (shift r, as stored in y_k)."""
        return self.solutions[k].part(0)


@dataclass(frozen=True)
class ExponentClass:
    base: mpq                      # smallest exponent in the class
    exponents: tuple               # sorted, with multiplicity
    block_sizes: tuple             # Jordan block sizes of the log action

    @property
    def multiplicity(self) -> int:
        return len(self.exponents)


@dataclass(frozen=True)
class LocalStructure:
    point: object
    exponent_classes: tuple
    residual_factor: Poly = field(default_factory=lambda: Poly([1]))

    @property
    def exponents(self) -> list:
        return sorted(e for c in self.exponent_classes for e in c.exponents)

    @property
    def block_sizes(self) -> list:
        return sorted((b for c in self.exponent_classes for b in c.block_sizes),
                      reverse=True)

    @property
    def has_logs(self) -> bool:
        return any(b > 1 for b in self.block_sizes)


class _Recursion:
    """Coefficient recursion for ``z^-rho L z^rho`` in theta form."""

    def __init__(self, theta: ThetaOperator, rho):
        self.slices = [s.taylor_shift(rho) for s in theta.slices]
        self._cache = {}

    def taylor(self, i: int, a: int) -> tuple:
        """Coefficients of P_i(a + x), i.e. P_i^(k)(a)/k!."""
        key = (i, a)
        t = self._cache.get(key)
        if t is None:
            t = self.slices[i].taylor_shift(a).coeffs
            self._cache[key] = t
        return t

    def solve(self, start: int, slot: int, mults: dict, depth: int, trunc: int):
        """Solution seeded at offset ``start`` in log slot ``slot``.

        ``mults`` maps integer offsets to root multiplicities of P_0 in the
        exponent class; ``depth`` bounds the log degree (+1).
        """
        zero = mpq(0)
        coeffs = [[zero] * depth for _ in range(trunc)]
        nslices = len(self.slices)
        for m in range(start, trunc):
            rhs = [zero] * depth
            for i in range(1, nslices):
                prev = m - i
                if prev < start or self.slices[i].is_zero():
                    continue
                c = coeffs[prev]
                if not any(c):
                    continue
                tay = self.taylor(i, prev)
                for j in range(depth):
                    acc = zero
                    for k in range(len(tay)):
                        if j + k >= depth:
                            break
                        if tay[k] and c[j + k]:
                            acc += tay[k] * c[j + k]
                    rhs[j] -= acc
            mu = mults.get(m, 0)
            v = [zero] * depth
            if m == start:
                v[slot] = mpq(1)
            else:
                for j in range(mu, depth):
                    v[j] = rhs[j - mu]
                if any(rhs[j] != 0 for j in range(depth - mu, depth)):
                    raise ArithmeticError("log degree exceeded the class multiplicity")
            u = self.taylor(0, m)[mu:]
            out = [zero] * depth
            for j in range(depth - 1, -1, -1):
                acc = v[j]
                for k in range(1, len(u)):
                    if j + k >= depth:
                        break
                    if u[k]:
                        acc -= u[k] * out[j + k]
                out[j] = acc / u[0]
            coeffs[m] = out
        lead = coeffs[start][slot]
        if lead != 1:
            coeffs = [[x / lead for x in c] for c in coeffs]
        return coeffs


def _to_logseries(coeffs, depth: int, shift: int) -> LogSeries:
    trunc = len(coeffs)
    parts = [Series([coeffs[m][j] for m in range(trunc)], shift) for j in range(depth)]
    return LogSeries(parts)


def mum_flag(L: Operator, truncation: int = DEFAULT_TRUNCATION) -> Flag:
    """Canonical flag at z = 0: f_0 = z^r (1 + O(z)), f_1..f_n in z Q[[z]]."""
    theta = to_theta_form(L)
    n1 = theta.order
    p0 = theta.slices[0]
    if p0.degree != n1:
        raise NotMUM("indicial polynomial at 0 has too small a degree")
    roots, residual = rational_roots(p0)
    if len(roots) != 1 or residual.degree > 0 or roots[0][0].denominator != 1:
        raise NotMUM("indicial polynomial at 0 is not (T - r)^(n+1)")
    r = int(roots[0][0])
    rec = _Recursion(theta, r)
    sols = []
    for k in range(n1):
        coeffs = rec.solve(0, k, {0: n1}, n1, truncation)
        sols.append(_to_logseries(coeffs, k + 1, r))
    return Flag(tuple(sols), r)


def _exponent_classes(p0: Poly):
    roots, residual = rational_roots(p0)
    classes = {}
    for root, mult in roots:
        key = root - (root.numerator // root.denominator)
        classes.setdefault(key, []).append((root, mult))
    return [sorted(v) for _, v in sorted(classes.items())], residual


def class_solutions(theta: ThetaOperator, members, truncation: int):
    """Basis of solutions for one exponent class.

    Returns ``(base, [LogSeries...])`` where each series must be multiplied
    by ``z^base`` (base may be non-integral).
    """
    base = members[0][0]
    mults = {int(root - base): mult for root, mult in members}
    depth = sum(mults.values())
    trunc = max(truncation, max(mults) + 2)
    rec = _Recursion(theta, base)
    sols = []
    for off in sorted(mults):
        for slot in range(mults[off]):
            coeffs = rec.solve(off, slot, mults, depth, trunc)
            sols.append(_to_logseries(coeffs, depth, 0))
    return base, sols


def _block_sizes(sols) -> tuple:
    """Jordan type of d/d(ln z) acting on the span of ``sols``."""
    dim = len(sols)
    ranks = [dim]
    current = list(sols)
    while ranks[-1] > 0:
        current = [s.log_shift() for s in current]
        ranks.append(series_rank_list(current))
    # blocks of size >= k: ranks[k-1] - ranks[k]
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes = []
    for k in range(len(at_least)):
        exact = at_least[k] - (at_least[k + 1] if k + 1 < len(at_least) else 0)
        sizes.extend([k + 1] * exact)
    return tuple(sorted(sizes, reverse=True))


def series_rank_list(ys) -> int:
    if not ys:
        return 0
    depth = max(len(y.parts) for y in ys)
    hi = min(y.precision for y in ys)
    lo = min(p.shift for y in ys for p in y.parts)
    rows = [y.vector(lo, hi, depth) for y in ys]
    return rank(rows, len(rows[0]))


def local_structure(L: Operator, p=0, truncation: int = DEFAULT_TRUNCATION,
                    allow_irrational: bool = True) -> LocalStructure:
    """Exponents and log-block structure of L at ``p`` (rational or infinity)."""
    theta = local_theta_at(L, p)
    order = theta.order
    p0 = theta.slices[0]
    if p0.degree != order:
        raise IrregularSingularity(f"point {p} is not a regular singular point")
    classes, residual = _exponent_classes(p0)
    if residual.degree > 0 and not allow_irrational:
        raise IrrationalExponents(f"non-rational exponents at {p}: {residual.to_str('T')}")
    out = []
    for members in classes:
        base, sols = class_solutions(theta, members, min(truncation, 24))
        exps = []
        for root, mult in members:
            exps.extend([root] * mult)
        out.append(ExponentClass(base, tuple(exps), _block_sizes(sols)))
    return LocalStructure(p, tuple(out), residual)


def local_basis(L: Operator, truncation: int = DEFAULT_TRUNCATION):
    """A basis of local solutions as integer-shift log series.

    Uses z = 0 when all exponents there are integers; otherwise moves to
    the first regular rational point. Returns ``(point, solutions)``.
    """
    from .operators import is_regular_point

    theta = to_theta_form(L)
    p0 = theta.slices[0]
    if p0.degree == theta.order:
        classes, residual = _exponent_classes(p0)
        if residual.degree <= 0 and all(m[0][0].denominator == 1 for m in classes):
            sols = []
            for members in classes:
                base, ss = class_solutions(theta, members, truncation)
                sols.extend(LogSeries([q.mul_z(int(base)) for q in s.parts]) for s in ss)
            return mpq(0), sols
    for cand in _candidate_points():
        if is_regular_point(L, cand):
            th = local_theta_at(L, cand)
            (members,), _ = _exponent_classes(th.slices[0])
            _, sols = class_solutions(th, members, truncation)
            return cand, sols
    raise IrregularSingularity("no regular rational point found")


def _candidate_points():
    yield mpq(0)
    for k in range(1, 50):
        yield mpq(k)
        yield mpq(-k)
        yield mpq(1, k + 1)
        yield mpq(-1, k + 1)


def flag_annihilated(L: Operator, flag: Flag) -> bool:
    from .operators import apply

    return all(apply(L, y).is_zero() for y in flag.solutions)
