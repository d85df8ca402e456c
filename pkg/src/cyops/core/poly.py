"""Dense univariate polynomials over Q.

Coefficients are stored low degree first as ``gmpy2.mpq`` values. The same
class is used for polynomials in ``z`` and for polynomials in the Euler
operator ``T`` (indicial polynomials, theta slices).
"""

from __future__ import annotations

from math import comb
from typing import Iterable, Sequence

from gmpy2 import mpq

Rational = mpq


def Q(x, d=None) -> mpq:
    """Coerce ``x`` (int, mpq, Fraction, "p/q" string) to an exact rational."""
    if d is not None:
        return mpq(x, d)
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            p, q = x.split("/")
            return mpq(int(p), int(q))
        return mpq(int(x))
    return mpq(x)


def rat_str(x) -> str:
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Poly:
    """Immutable dense polynomial; ``coeffs[i]`` multiplies ``var**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [mpq(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # constructors
    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls([-mpq(r), 1])
        return p

    # basic queries
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> mpq:
        return self.coeffs[-1] if self.coeffs else mpq(0)

    def __getitem__(self, i: int) -> mpq:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return mpq(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            if isinstance(other, (int, type(mpq(0)))):
                other = Poly([other])
            else:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly([{', '.join(rat_str(c) for c in self.coeffs)}])"

    def to_str(self, var: str = "z") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = rat_str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{rat_str(a)}*{mono}"
            terms.append((sign, body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # arithmetic
    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Poly":
        return _coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = mpq(other)
            return Poly([c * x for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [mpq(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return Poly(), self
        quo = [mpq(0)] * (len(rem) - dq)
        inv_lc = 1 / other.lc
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv_lc
            quo[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] -= c * y
        return Poly(quo), Poly(rem[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    # calculus and evaluation
    def __call__(self, x):
        acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, k: int = 1) -> "Poly":
        p = self
        for _ in range(k):
            p = Poly([i * c for i, c in enumerate(p.coeffs)][1:])
        return p

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly([c])
        return acc

    def taylor_shift(self, a) -> "Poly":
        """Return p(x + a)."""
        a = mpq(a)
        n = len(self.coeffs)
        out = [mpq(0)] * n
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            apow = mpq(1)
            for k in range(i, -1, -1):
                out[k] += c * comb(i, k) * apow
                apow *= a
        return Poly(out)

    def scale_var(self, lam) -> "Poly":
        """Return p(lam * x)."""
        lam = mpq(lam)
        out, pw = [], mpq(1)
        for c in self.coeffs:
            out.append(c * pw)
            pw *= lam
        return Poly(out)

    def reversed_var(self, n: int | None = None) -> "Poly":
        """Return x^n p(1/x); n defaults to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [mpq(0)] * (n + 1 - len(self.coeffs))
        return Poly(reversed(cs[: n + 1]))

    def valuation(self) -> int:
        """Order of vanishing at 0 (infinite for zero is reported as -1)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return -1

    def shift_down(self, k: int) -> "Poly":
        """Divide by var^k; the low coefficients must vanish."""
        if any(c != 0 for c in self.coeffs[:k]):
            raise ArithmeticError("polynomial not divisible by var^k")
        return Poly(self.coeffs[k:])

    def primitive(self):
        """Return (content, integer primitive polynomial with positive lc)."""
        if self.is_zero():
            return mpq(1), self
        from math import gcd, lcm

        den = 1
        for c in self.coeffs:
            den = lcm(den, int(c.denominator))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return mpq(g, den), Poly([v // g for v in ints])


def _coerce(x) -> Poly:
    return x if isinstance(x, Poly) else Poly([x])


def falling(k: int) -> Poly:
    """T (T-1) ... (T-k+1)."""
    return Poly.from_roots(range(k))


def irreducible_factors(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors over Q with multiplicities.

    Factorisation over Q is delegated to sympy; everything else in the
    package stays on ``gmpy2`` rationals.
    """
    import sympy

    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * x**i
               for i, c in enumerate(p.coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    out = []
    for fac, mult in factors:
        cs = [sympy.Rational(c) for c in reversed(fac.all_coeffs())]
        out.append((Poly([mpq(int(c.p), int(c.q)) for c in cs]).monic(), mult))
    return out


def rational_roots(p: Poly):
    """Exact rational roots with multiplicity, plus the residual cofactor.

    Returns ``(roots, residual)``: ``roots`` is a sorted list of
    ``(root, multiplicity)`` and ``residual`` is the monic product of the
    factors without rational roots.
    """
    roots = []
    residual = Poly([1])
    for fac, mult in irreducible_factors(p):
        if fac.degree == 1:
            roots.append((-fac[0], mult))
        elif fac.degree > 1:
            residual = residual * fac ** mult
    roots.sort(key=lambda rm: rm[0])
    return roots, residual
