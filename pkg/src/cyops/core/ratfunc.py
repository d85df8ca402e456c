"""Reduced rational functions in z over Q."""

from __future__ import annotations

from gmpy2 import mpq

from .poly import Poly, rat_str


class RatFunc:
    """Quotient ``num / den`` with ``den`` monic and coprime to ``num``."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, reduced: bool = False):
        num = num if isinstance(num, Poly) else Poly([num])
        if den is None:
            den = Poly([1])
        elif not isinstance(den, Poly):
            den = Poly([den])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        if not reduced and den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def z(cls) -> "RatFunc":
        return cls(Poly([0, 1]))

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return cls(x)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def is_const(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.to_str()})"

    def to_str(self, var: str = "z") -> str:
        if self.den.degree == 0:
            return self.num.to_str(var)
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"

    def __add__(self, other) -> "RatFunc":
        o = RatFunc.coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other) -> "RatFunc":
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        o = RatFunc.coerce(other)
        if o.is_const():
            return RatFunc(self.num * o.num[0], self.den, reduced=True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, reduced=True)

    def __truediv__(self, other) -> "RatFunc":
        return self * RatFunc.coerce(other).inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, reduced=True)

    def derivative(self, k: int = 1) -> "RatFunc":
        f = self
        for _ in range(k):
            n, d = f.num, f.den
            f = RatFunc(n.derivative() * d - n * d.derivative(), d * d)
        return f

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {rat_str(x)}")
        return self.num(x) / d

    def compose(self, inner: "RatFunc") -> "RatFunc":
        """``self(inner(z))``, computed by homogenising both parts."""
        inner = RatFunc.coerce(inner)
        p, q = inner.num, inner.den
        deg = max(self.num.degree, self.den.degree, 0)

        def hom(poly: Poly) -> Poly:
            acc = Poly()
            for i, c in enumerate(poly.coeffs):
                if c:
                    acc = acc + (p ** i) * (q ** (deg - i)) * c
            return acc

        return RatFunc(hom(self.num), hom(self.den))

    def taylor_shift(self, a) -> "RatFunc":
        return RatFunc(self.num.taylor_shift(a), self.den.taylor_shift(a))

    def valuation(self) -> int:
        """Order at z = 0 (negative for a pole)."""
        return self.num.valuation() - self.den.valuation()

    def to_series(self, truncation: int):
        """Laurent expansion at 0 with ``truncation`` coefficients."""
        from .series import Series

        v = self.den.valuation()
        d = self.den.shift_down(v)
        num = Series(self.num.coeffs[:truncation] + (0,) * max(0, truncation - len(self.num.coeffs)))
        den = Series(d.coeffs[:truncation] + (0,) * max(0, truncation - len(d.coeffs)))
        s = num * den.invert_unit()
        return Series(s.coeffs, shift=-v)

    def residue_at_zero(self) -> mpq:
        """Coefficient of 1/z in the Laurent expansion at 0."""
        v = self.den.valuation()
        if v == 0:
            return mpq(0)
        s = self.to_series(v + 1)
        return s[-1]


def rf(num_coeffs, den_coeffs=(1,)) -> RatFunc:
    """Shorthand constructor from coefficient lists (low degree first)."""
    return RatFunc(Poly(num_coeffs), Poly(den_coeffs))
