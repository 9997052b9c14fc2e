"""Rational functions num/den over a field, kept with monic denominator."""

from __future__ import annotations

from .poly import Poly
from .rings import RingError


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(num.ring, 1, num.var)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = num.gcd(den) if not num.is_zero() else den.monic()
        num, den = num // g, den // g
        c = num.ring.inv(den.lc)
        self.num = num.scale(c)
        self.den = den.scale(c)

    @property
    def ring(self):
        return self.num.ring

    @property
    def var(self):
        return self.num.var

    @classmethod
    def const(cls, ring, c, var="t"):
        return cls(Poly.const(ring, c, var))

    def _other(self, o):
        if isinstance(o, RatFunc):
            return o
        if isinstance(o, Poly):
            return RatFunc(o)
        return RatFunc(Poly.const(self.ring, o, self.var))

    def __add__(self, o):
        o = self._other(o)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, o):
        return self + (-self._other(o))

    def __rsub__(self, o):
        return self._other(o) - self

    def __mul__(self, o):
        o = self._other(o)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._other(o)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(self.den, self.num) ** (-n)
        return RatFunc(self.num**n, self.den**n)

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, o):
        o = self._other(o)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x, ring=None):
        R = ring or self.ring
        d = self.den(x, ring)
        if R.is_zero(d):
            raise RingError("evaluation at a pole")
        return R.mul(self.num(x, ring), R.inv(d))

    def frob(self):
        """Apply a -> a^p to the coefficients and t -> t^p: the map f -> f^p."""
        return self ** self.ring.p

    def artin_schreier(self) -> "RatFunc":
        """P(f) = f^p - f."""
        return self ** self.ring.p - self

    def fmt(self):
        if self.den.degree == 0:
            return self.num.fmt()
        return f"({self.num.fmt()}) / ({self.den.fmt()})"

    def __repr__(self):
        return f"RatFunc({self.fmt()})"
