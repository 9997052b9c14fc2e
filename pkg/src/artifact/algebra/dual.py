"""Dual numbers a + b*eps with eps**2 = 0 over a coefficient ring."""

from __future__ import annotations

from dataclasses import dataclass

from .rings import Ring, RingError


@dataclass(frozen=True)
class DualNumber:
    ring: Ring
    re: object
    eps: object

    @classmethod
    def of(cls, ring, re, eps=0):
        return cls(ring, ring.coerce(re), ring.coerce(eps))

    def _other(self, o):
        if isinstance(o, DualNumber):
            return o
        return DualNumber.of(self.ring, o, 0)

    def __add__(self, o):
        o, R = self._other(o), self.ring
        return DualNumber(R, R.add(self.re, o.re), R.add(self.eps, o.eps))

    __radd__ = __add__

    def __neg__(self):
        R = self.ring
        return DualNumber(R, R.neg(self.re), R.neg(self.eps))

    def __sub__(self, o):
        return self + (-self._other(o))

    def __mul__(self, o):
        o, R = self._other(o), self.ring
        return DualNumber(R, R.mul(self.re, o.re),
                          R.add(R.mul(self.re, o.eps), R.mul(self.eps, o.re)))

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.re)

    def inverse(self) -> "DualNumber":
        R = self.ring
        if not R.is_unit(self.re):
            raise RingError("dual number with non-unit real part is not invertible")
        ia = R.inv(self.re)
        return DualNumber(R, ia, R.neg(R.mul(self.eps, R.mul(ia, ia))))

    def __truediv__(self, o):
        return self * self._other(o).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        R = self.ring
        if n == 0:
            return DualNumber(R, R.one, R.zero)
        # (a + b eps)^n = a^n + n a^(n-1) b eps
        an1 = R.pow(self.re, n - 1)
        return DualNumber(R, R.mul(an1, self.re), R.mul(R.coerce(n), R.mul(an1, self.eps)))

    def __repr__(self):
        return f"({self.ring.fmt(self.re)} + {self.ring.fmt(self.eps)}*eps)"
