"""Truncated Laurent series and logarithmic series over Q.

A :class:`Series` with ``shift`` r and coefficients ``A_0..A_{N-1}`` stands
for ``z^r * sum A_m z^m + O(z^(r+N))``. Every operation keeps the smallest
absolute precision of its inputs and never invents coefficients past it.

A :class:`LogSeries` is ``sum_j ln(z)^j / j! * parts[j]``.
"""

from __future__ import annotations

from math import comb
from typing import Sequence

from gmpy2 import mpq

from ..errors import (CompositionAtNonzeroPoint, NonUnitConstantTerm,
                      NotAUnit, NotReversible)
from .poly import rat_str

_ZERO = mpq(0)


class Series:
    __slots__ = ("coeffs", "shift")

    def __init__(self, coeffs: Sequence = (), shift: int = 0):
        self.coeffs = tuple(mpq(c) for c in coeffs)
        self.shift = int(shift)

    # construction helpers
    @classmethod
    def one(cls, truncation: int) -> "Series":
        return cls([1] + [0] * (truncation - 1))

    @classmethod
    def z(cls, truncation: int) -> "Series":
        """The series z with ``truncation`` coefficients (shift 0)."""
        return cls([0, 1] + [0] * (truncation - 2))

    @classmethod
    def zero(cls, truncation: int, shift: int = 0) -> "Series":
        return cls([0] * truncation, shift)

    @classmethod
    def from_poly(cls, poly, truncation: int) -> "Series":
        cs = list(poly.coeffs[:truncation])
        return cls(cs + [0] * (truncation - len(cs)))

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs)

    @property
    def precision(self) -> int:
        """First absolute power of z that is not known."""
        return self.shift + len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> mpq:
        """Coefficient of z^k (absolute power)."""
        if k < self.shift:
            return _ZERO
        if k >= self.precision:
            raise IndexError(f"coefficient z^{k} is beyond the truncation")
        return self.coeffs[k - self.shift]

    def __repr__(self):
        head = ", ".join(rat_str(c) for c in self.coeffs[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        sh = f", shift={self.shift}" if self.shift else ""
        return f"Series([{head}{more}]{sh}, N={len(self.coeffs)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.shift == other.shift and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.shift))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return self.shift + i
        return None

    def trim(self) -> "Series":
        """Drop leading zero coefficients (raises the shift, keeps precision)."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        if k == 0:
            return self
        return Series(self.coeffs[k:], self.shift + k)

    def truncate(self, n: int) -> "Series":
        """Keep ``n`` coefficients."""
        if n > len(self.coeffs):
            raise IndexError("cannot extend a series past its truncation")
        return Series(self.coeffs[:n], self.shift)

    def with_precision(self, prec: int) -> "Series":
        """Cut to absolute precision ``prec`` (never extends)."""
        return self.truncate(max(0, min(len(self.coeffs), prec - self.shift)))

    def reshift(self, shift: int) -> "Series":
        """Re-express with a lower (or equal) shift by padding zeros."""
        if shift > self.shift:
            lead = self.coeffs[: shift - self.shift]
            if any(c != 0 for c in lead):
                raise ValueError("cannot raise shift over nonzero coefficients")
            return Series(self.coeffs[shift - self.shift:], shift)
        return Series((_ZERO,) * (self.shift - shift) + self.coeffs, shift)

    def mul_z(self, k: int) -> "Series":
        return Series(self.coeffs, self.shift + k)

    def power_part(self) -> "Series":
        """Shift-0 view; requires no negative powers with nonzero coefficient."""
        if self.shift == 0:
            return self
        return self.reshift(0)

    # arithmetic
    def __add__(self, other) -> "Series":
        if not isinstance(other, Series):
            other = Series([other] + [0] * max(0, self.precision - 1))
        shift = min(self.shift, other.shift)
        prec = min(self.precision, other.precision)
        out = []
        for k in range(shift, prec):
            a = self.coeffs[k - self.shift] if k >= self.shift else _ZERO
            b = other.coeffs[k - other.shift] if k >= other.shift else _ZERO
            out.append(a + b)
        return Series(out, shift)

    __radd__ = __add__

    def __neg__(self) -> "Series":
        return Series([-c for c in self.coeffs], self.shift)

    def __sub__(self, other) -> "Series":
        if not isinstance(other, Series):
            return self + (-mpq(other))
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            c = mpq(other)
            return Series([c * x for x in self.coeffs], self.shift)
        n = min(len(self.coeffs), len(other.coeffs))
        a, b = self.coeffs, other.coeffs
        out = [_ZERO] * n
        for i in range(n):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(n - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return Series(out, self.shift + other.shift)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Series":
        if k < 0:
            return self.inverse() ** (-k)
        out = Series.one(len(self.coeffs))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def invert_unit(self) -> "Series":
        return invert_unit(self)

    def inverse(self) -> "Series":
        """Inverse of a Laurent series with nonzero leading coefficient."""
        t = self.trim()
        if not t.coeffs:
            raise NotAUnit("series vanishes to its truncation order")
        return Series(invert_unit(Series(t.coeffs)).coeffs, -t.shift)

    def __truediv__(self, other) -> "Series":
        if not isinstance(other, Series):
            return self * (1 / mpq(other))
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Series":
        return self.inverse() * mpq(other)

    # calculus
    def derivative(self) -> "Series":
        """d/dz; a shift-0 series stays a power series with one fewer term."""
        if self.shift == 0:
            return Series([k * c for k, c in enumerate(self.coeffs)][1:])
        return Series([(k + self.shift) * c for k, c in enumerate(self.coeffs)],
                      self.shift - 1)

    def theta(self) -> "Series":
        """z d/dz."""
        return Series([(k + self.shift) * c for k, c in enumerate(self.coeffs)],
                      self.shift)

    def integral(self) -> "Series":
        """Antiderivative with zero constant of a power series."""
        if self.shift != 0:
            raise ValueError("integral only implemented for power series")
        return Series([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def exp(self) -> "Series":
        p = self.power_part()
        if p.coeffs and p.coeffs[0] != 0:
            raise ValueError("exp needs a series with zero constant term")
        n = len(p.coeffs)
        g = p.coeffs
        out = [mpq(1)] + [_ZERO] * (n - 1)
        for m in range(1, n):
            acc = _ZERO
            for k in range(1, m + 1):
                if g[k]:
                    acc += k * g[k] * out[m - k]
            out[m] = acc / m
        return Series(out)

    def log(self) -> "Series":
        p = self.power_part()
        if not p.coeffs or p.coeffs[0] != 1:
            raise NonUnitConstantTerm("log needs constant term 1")
        return (p.derivative() * invert_unit(p.truncate(len(p) - 1))).integral()

    def compose(self, inner: "Series") -> "Series":
        return compose(self, inner)

    def to_strings(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]


def invert_unit(f: Series) -> Series:
    """Multiplicative inverse of a power series with nonzero constant term."""
    if f.shift != 0 or not f.coeffs or f.coeffs[0] == 0:
        raise NotAUnit("series is not a unit of Q[[z]]")
    a = f.coeffs
    n = len(a)
    inv0 = 1 / a[0]
    out = [inv0] + [_ZERO] * (n - 1)
    for m in range(1, n):
        acc = _ZERO
        for k in range(1, m + 1):
            if a[k]:
                acc += a[k] * out[m - k]
        out[m] = -acc * inv0
    return Series(out)


def compose(f: Series, g: Series) -> Series:
    """f(g(z)) for a power series f and g with g(0) = 0."""
    g = g.power_part()
    if not g.coeffs:
        return Series()
    if g.coeffs[0] != 0:
        raise CompositionAtNonzeroPoint("inner series must vanish at 0")
    if f.shift < 0:
        raise ValueError("outer series must be a power series")
    f = f.power_part()
    n = min(len(f.coeffs), len(g.coeffs))
    gt = g.truncate(n)
    acc = Series([f.coeffs[n - 1]] + [0] * (n - 1)) if n else Series()
    for k in range(n - 2, -1, -1):
        acc = acc * gt
        acc = Series((acc.coeffs[0] + f.coeffs[k],) + acc.coeffs[1:])
    return acc


def reverse(f: Series) -> Series:
    """Compositional inverse of f in z*Q[[z]] with f'(0) != 0 (Newton)."""
    f = f.power_part()
    n = len(f.coeffs)
    if n < 2 or f.coeffs[0] != 0 or f.coeffs[1] == 0:
        raise NotReversible("need f(0) = 0 and f'(0) != 0")
    h = Series([0, 1 / f.coeffs[1]])
    prec = 2
    while prec < n:
        prec = min(2 * prec, n)
        fp = f.truncate(prec)
        hp = Series(h.coeffs + (_ZERO,) * (prec - len(h.coeffs)))
        resid = (compose(fp, hp) - Series.z(prec)).trim()
        # resid has valuation >= 2, so f'(h) to prec - 1 terms is enough
        dfh = compose(fp.derivative(), hp.truncate(prec - 1))
        h = (hp - resid * invert_unit(dfh)).power_part()
    return h


def nth_root_unit(f: Series, n: int) -> Series:
    """The unique n-th root with constant term 1 of f, f(0) = 1."""
    if n < 1:
        raise ValueError("root index must be positive")
    f = f.power_part()
    if not f.coeffs or f.coeffs[0] != 1:
        raise NonUnitConstantTerm("n-th root needs constant term 1")
    return (f.log() * mpq(1, n)).exp() if len(f) > 1 else Series([1])


def series_from_function(coeff, truncation: int) -> Series:
    return Series([coeff(m) for m in range(truncation)])


# ---------------------------------------------------------------------------
# logarithmic series


class LogSeries:
    """``sum_j ln(z)^j/j! * parts[j]``."""

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[Series]):
        parts = list(parts)
        while len(parts) > 1 and parts[-1].is_zero():
            parts.pop()
        self.parts = tuple(parts)

    @classmethod
    def from_series(cls, s: Series) -> "LogSeries":
        return cls([s])

    @classmethod
    def log_power(cls, k: int, truncation: int) -> "LogSeries":
        """ln(z)^k / k!."""
        return cls([Series.zero(truncation)] * k + [Series.one(truncation)])

    @property
    def log_degree(self) -> int:
        return len(self.parts) - 1

    @property
    def precision(self) -> int:
        return min(p.precision for p in self.parts)

    def part(self, j: int) -> Series:
        if j < len(self.parts):
            return self.parts[j]
        s = self.parts[0]
        return Series.zero(len(s), s.shift)

    def __repr__(self):
        return f"LogSeries({list(self.parts)!r})"

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)

    def __eq__(self, other) -> bool:
        if isinstance(other, Series):
            other = LogSeries([other])
        if not isinstance(other, LogSeries):
            return NotImplemented
        k = max(len(self.parts), len(other.parts))
        return all(self.part(j).coeffs == other.part(j).coeffs
                   and (self.part(j).shift == other.part(j).shift or self.part(j).is_zero())
                   for j in range(k))

    __hash__ = None

    def __add__(self, other) -> "LogSeries":
        if isinstance(other, Series):
            other = LogSeries([other])
        k = max(len(self.parts), len(other.parts))
        return LogSeries([self.part(j) + other.part(j) for j in range(k)])

    def __neg__(self) -> "LogSeries":
        return LogSeries([-p for p in self.parts])

    def __sub__(self, other) -> "LogSeries":
        if isinstance(other, Series):
            other = LogSeries([other])
        return self + (-other)

    def __mul__(self, other) -> "LogSeries":
        if isinstance(other, LogSeries):
            out = {}
            for a, pa in enumerate(self.parts):
                for b, pb in enumerate(other.parts):
                    term = pa * pb * comb(a + b, a)
                    out[a + b] = out[a + b] + term if a + b in out else term
            return LogSeries([out[j] for j in range(max(out) + 1)])
        return LogSeries([p * other for p in self.parts])

    __rmul__ = __mul__

    def __truediv__(self, other) -> "LogSeries":
        if isinstance(other, Series):
            inv = other.inverse()
            return LogSeries([p * inv for p in self.parts])
        return self * (1 / mpq(other))

    def theta(self) -> "LogSeries":
        k = len(self.parts)
        return LogSeries([
            self.parts[j].theta() + self.parts[j + 1] if j + 1 < k else self.parts[j].theta()
            for j in range(k)
        ])

    def derivative(self) -> "LogSeries":
        k = len(self.parts)
        out = []
        for j in range(k):
            d = self.parts[j].derivative()
            if j + 1 < k:
                d = d + self.parts[j + 1].mul_z(-1)
            out.append(d)
        return LogSeries(out)

    def log_shift(self) -> "LogSeries":
        """Action of d/d(ln z): the nilpotent part of local monodromy."""
        if len(self.parts) == 1:
            s = self.parts[0]
            return LogSeries([Series.zero(len(s), s.shift)])
        return LogSeries(self.parts[1:])

    def with_precision(self, prec: int) -> "LogSeries":
        return LogSeries([p.with_precision(prec) for p in self.parts])

    def vector(self, lo: int, hi: int, depth: int) -> list:
        """Flat coefficient vector over powers [lo, hi) and log parts < depth."""
        out = []
        for j in range(depth):
            p = self.part(j)
            out.extend(p[k] for k in range(lo, hi))
        return out


def pade_reconstruct(f: Series, max_num_deg: int, max_den_deg: int):
    """Rational function P/Q with deg P <= M, deg Q <= N matching f.

    Every known coefficient of ``f`` is used as a constraint, so a returned
    fit reproduces the input on its whole truncation.
    """
    from ..errors import NoRationalFit
    from .linalg import nullspace
    from .poly import Poly
    from .ratfunc import RatFunc

    f = f.power_part()
    n = len(f.coeffs)
    M, N = max_num_deg, max_den_deg
    if n < M + N + 2:
        raise ValueError("truncation too small for the requested degree bounds")
    a = f.coeffs
    rows = []
    for m in range(M + 1, n):
        rows.append([a[m - j] if m - j >= 0 else _ZERO for j in range(N + 1)])
    basis = nullspace(rows, N + 1)
    if not basis:
        raise NoRationalFit(f"no rational function with degrees ({M}, {N}) fits")
    # lowest-degree denominator first
    basis.sort(key=lambda v: max(i for i, c in enumerate(v) if c != 0))
    for q in basis:
        den = Poly(q)
        num_cs = [sum((a[m - j] * q[j] for j in range(min(m, N) + 1)), _ZERO)
                  for m in range(M + 1)]
        r = RatFunc(Poly(num_cs), den)
        if r.den(0) == 0:
            continue
        if r.to_series(n).power_part().coeffs == a:
            return r
    raise NoRationalFit(f"no rational function with degrees ({M}, {N}) fits")
