"""Truncated Laurent series in a fractional power of q.

A ``FracSeries`` stands for  sum_i c_i * u**(val + i)  with  u = q**(1/den),
known modulo u**prec.  Precision is carried pessimistically: every result
claims only what its inputs justify.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .poly import Poly
from .rings import QQ, Ring


class SeriesError(ArithmeticError):
    pass


EXACT = 1 << 30  # precision used for polynomials viewed as exact series


class FracSeries:
    __slots__ = ("ring", "den", "val", "coeffs", "prec")

    def __init__(self, ring: Ring, coeffs, val: int = 0, den: int = 1, prec: int | None = None,
                 _raw: bool = False):
        cs = list(coeffs) if _raw else [ring.coerce(c) for c in coeffs]
        if prec is None:
            prec = val + len(cs)
        cs = cs[: max(0, prec - val)]
        # strip leading zeros into the valuation
        start = 0
        while start < len(cs) and ring.is_zero(cs[start]):
            start += 1
        cs = cs[start:]
        val += start
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        if not cs:
            val = prec
        self.ring = ring
        self.den = den
        self.val = val
        self.coeffs = tuple(cs)
        self.prec = prec

    # ------------------------------------------------------------ constructors

    @classmethod
    def raw(cls, ring, coeffs, val=0, den=1, prec=None):
        return cls(ring, coeffs, val, den, prec, _raw=True)

    @classmethod
    def const(cls, ring, c, den=1, prec=EXACT):
        return cls(ring, [c], 0, den, prec)

    @classmethod
    def const_raw(cls, ring, value, den=1, prec=EXACT):
        """Constant series from a raw ring value (no integer coercion)."""
        return cls(ring, [value], 0, den, prec, _raw=True)

    @classmethod
    def gen(cls, ring, den=1, prec=EXACT):
        """The series u = q**(1/den)."""
        return cls(ring, [1], 1, den, prec)

    @classmethod
    def from_dict(cls, ring, terms: dict, den=1, prec=None):
        """Build from {exponent_in_u: coefficient}."""
        if not terms:
            return cls(ring, [], 0, den, prec if prec is not None else 0)
        lo, hi = min(terms), max(terms)
        cs = [ring.zero] * (hi - lo + 1)
        for e, c in terms.items():
            cs[e - lo] = ring.coerce(c)
        return cls(ring, cs, lo, den, hi + 1 if prec is None else prec, _raw=True)

    def _new(self, coeffs, val, prec, den=None):
        return FracSeries(self.ring, coeffs, val, self.den if den is None else den, prec, _raw=True)

    # ------------------------------------------------------------ inspection

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, e: int):
        """Coefficient of u**e (u = q**(1/den))."""
        if e >= self.prec:
            raise SeriesError(f"exponent {e} is beyond the truncation {self.prec}")
        i = e - self.val
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def coeff_q(self, x: Fraction):
        """Coefficient of q**x."""
        x = Fraction(x)
        e = x * self.den
        if e.denominator != 1:
            return self.ring.zero
        return self.coeff(int(e))

    def lead(self):
        if not self.coeffs:
            raise SeriesError("zero series has no leading coefficient")
        return self.coeffs[0]

    def terms(self):
        """(exponent_in_u, coefficient) for the nonzero known terms."""
        return [(self.val + i, c) for i, c in enumerate(self.coeffs) if not self.ring.is_zero(c)]

    def dense(self, lo: int, hi: int):
        """Coefficients of u**lo .. u**(hi-1)."""
        return [self.coeff(e) for e in range(lo, hi)]

    def rel_prec(self) -> int:
        return self.prec - self.val

    def __len__(self):
        return len(self.coeffs)

    # ------------------------------------------------------------ rescaling

    def rescale(self, den: int) -> "FracSeries":
        """Same series written with a finer exponent denominator."""
        if den == self.den:
            return self
        if den % self.den:
            raise SeriesError(f"cannot rewrite denominator {self.den} as {den}")
        k = den // self.den
        cs = []
        for i, c in enumerate(self.coeffs):
            if i:
                cs.extend([self.ring.zero] * (k - 1))
            cs.append(c)
        return self._new(cs, self.val * k, self.prec * k, den)

    def _align(self, other):
        if not isinstance(other, FracSeries):
            other = FracSeries.const(self.ring, other, self.den)
        if other.ring is not self.ring and other.ring != self.ring:
            raise SeriesError(f"mismatched coefficient rings {self.ring} and {other.ring}")
        if other.den == self.den:
            return self, other
        L = self.den * other.den // math.gcd(self.den, other.den)
        return self.rescale(L), other.rescale(L)

    def truncate(self, prec: int) -> "FracSeries":
        return self._new(self.coeffs, self.val, min(prec, self.prec))

    def with_prec(self, prec: int) -> "FracSeries":
        """Declare the series exact up to ``prec`` (missing terms are zero)."""
        return self._new(self.coeffs, self.val, prec)

    # ------------------------------------------------------------ arithmetic

    def __add__(self, other):
        a, b = self._align(other)
        R = a.ring
        prec = min(a.prec, b.prec)
        live = [s for s in (a, b) if s.coeffs]
        if not live:
            return a._new([], prec, prec)
        lo = min(s.val for s in live)
        if lo >= prec:
            return a._new([], prec, prec)
        hi = min(prec, max(s.val + len(s.coeffs) for s in live))
        cs = [R.zero] * max(0, hi - lo)
        for s in live:
            off = s.val - lo
            for i, c in enumerate(s.coeffs):
                if off + i < len(cs):
                    cs[off + i] = R.add(cs[off + i], c)
        return a._new(cs, lo, prec)

    __radd__ = __add__

    def __neg__(self):
        return self._new([self.ring.neg(c) for c in self.coeffs], self.val, self.prec)

    def __sub__(self, other):
        a, b = self._align(other)
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._align(other)
        return b + (-a)

    def scale(self, c):
        """Multiply by a raw ring value."""
        return self._new([self.ring.mul(c, x) for x in self.coeffs], self.val, self.prec)

    def __mul__(self, other):
        if not isinstance(other, FracSeries):
            return self.scale(self.ring.coerce(other))
        a, b = self._align(other)
        R = a.ring
        if a.is_zero() or b.is_zero():
            # a zero series is only known to its precision
            val = a.val + b.val
            prec = min(a.prec + b.val, b.prec + a.val)
            return a._new([], prec, prec)
        val = a.val + b.val
        prec = min(a.val + b.prec, b.val + a.prec)
        n = min(prec - val, len(a.coeffs) + len(b.coeffs) - 1)
        ac, bc = a.coeffs[:n], b.coeffs[:n]
        cs = [R.zero] * n
        for i, x in enumerate(ac):
            if R.is_zero(x):
                continue
            lim = n - i
            for j, y in enumerate(bc[:lim]):
                cs[i + j] = R.add(cs[i + j], R.mul(x, y))
        return a._new(cs, val, prec)

    __rmul__ = __mul__

    def shift(self, k: int) -> "FracSeries":
        """Multiply by u**k."""
        return self._new(self.coeffs, self.val + k, self.prec + k)

    def inverse(self) -> "FracSeries":
        R = self.ring
        if self.is_zero():
            raise SeriesError("inverse of a series known to be zero to its precision")
        c0 = self.coeffs[0]
        if not R.is_unit(c0):
            raise SeriesError("leading coefficient is not a unit")
        inv0 = R.inv(c0)
        n = self.prec - self.val
        if n > EXACT // 2:
            raise SeriesError("cannot invert an untruncated series; truncate it first")
        a = list(self.coeffs[:n]) + [R.zero] * max(0, n - len(self.coeffs))
        b = [R.zero] * n
        b[0] = inv0
        for k in range(1, n):
            acc = R.zero
            for j in range(1, k + 1):
                if not R.is_zero(a[j]):
                    acc = R.add(acc, R.mul(a[j], b[k - j]))
            b[k] = R.neg(R.mul(acc, inv0))
        return self._new(b, -self.val, -self.val + n)

    def __truediv__(self, other):
        if not isinstance(other, FracSeries):
            return self.scale(self.ring.inv(self.ring.coerce(other)))
        a, b = self._align(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = FracSeries.const(self.ring, 1, self.den)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def eval_poly(self, f: Poly) -> "FracSeries":
        """f(self) by Horner."""
        acc = FracSeries.const(self.ring, 0, self.den)
        for c in reversed(f.coeffs):
            acc = acc * self + FracSeries.raw(self.ring, [c], 0, self.den, EXACT)
        return acc

    def derivative_u(self) -> "FracSeries":
        """d/du, lowering precision by one."""
        R = self.ring
        cs = [R.mul(R.coerce(self.val + i), c) for i, c in enumerate(self.coeffs)]
        return self._new(cs, self.val - 1, self.prec - 1)

    def theta(self) -> "FracSeries":
        """q d/dq: the coefficient of q**(e/den) is scaled by e/den."""
        R = self.ring
        cs = [R.mul(R.coerce(Fraction(self.val + i, self.den)), c) for i, c in enumerate(self.coeffs)]
        return self._new(cs, self.val, self.prec)

    def map(self, f, ring: Ring) -> "FracSeries":
        """Apply a coefficient map into another ring (e.g. reduction mod p)."""
        return FracSeries(ring, [f(c) for c in self.coeffs], self.val, self.den, self.prec, _raw=True)

    def reduce(self, ring: Ring) -> "FracSeries":
        return self.map(ring.coerce, ring)

    def equal_to(self, other, prec: int | None = None) -> bool:
        """True when the two series agree up to ``prec`` (default: the shared precision)."""
        d = self - other
        if prec is not None and d.prec < prec:
            raise SeriesError(f"precision {d.prec} is below the requested {prec}")
        if prec is None:
            return d.is_zero()
        return all(d.ring.is_zero(c) for e, c in zip(range(d.val, prec), d.coeffs))

    def __eq__(self, other):
        if not isinstance(other, FracSeries):
            return NotImplemented
        a, b = self._align(other)
        return (a.coeffs, a.val, a.prec) == (b.coeffs, b.val, b.prec)

    def __hash__(self):
        return hash((self.coeffs, self.val, self.prec, self.den))

    def dump(self) -> str:
        """One "num/den coefficient" line per nonzero known term."""
        lines = [f"{e}/{self.den} {self.ring.fmt(c)}" for e, c in self.terms()]
        lines.append(f"# truncation {self.prec}/{self.den}")
        return "\n".join(lines)

    def __repr__(self):
        shown = []
        for e, c in self.terms()[:6]:
            x = Fraction(e, self.den)
            shown.append(f"{self.ring.fmt(c)}*q^{x}")
        tail = " + ..." if len(self.terms()) > 6 else ""
        return f"FracSeries({' + '.join(shown) or '0'}{tail} + O(q^{Fraction(self.prec, self.den)}))"


def series_solve(relation, seed: FracSeries, prec: int, max_iter: int | None = None) -> FracSeries:
    """Newton lifting of a root of sum_j A_j(u) * y**j.

    ``relation`` is the list [A_0, A_1, ...] of FracSeries (or ring scalars).
    The seed must be a simple root to first order: F'(seed) has a unit
    leading coefficient and v(F(seed)) > 2 v(F'(seed)).
    """
    R = seed.ring
    den = seed.den
    coeffs = [a if isinstance(a, FracSeries) else FracSeries.const(R, a, den) for a in relation]
    for a in coeffs:
        if a.prec < prec:
            raise SeriesError(f"relation is only known to {a.prec}, below the target {prec}")
    deriv = [c.scale(R.coerce(j)) for j, c in enumerate(coeffs)][1:]

    def ev(cs, y):
        acc = FracSeries.const(R, 0, den)
        for c in reversed(cs):
            acc = acc * y + c
        return acc.truncate(prec)

    y = seed.with_prec(prec) if seed.prec < prec else seed.truncate(prec)
    fy, dy = ev(coeffs, y), ev(deriv, y)
    if dy.is_zero() or not R.is_unit(dy.lead()):
        raise SeriesError("singular seed: derivative is not a unit")
    if not fy.is_zero() and fy.val <= 2 * dy.val:
        raise SeriesError("singular seed: residual is not small enough for Newton")
    if max_iter is None:
        max_iter = max(4, 2 * (prec - y.val).bit_length() + 4)
    for _ in range(max_iter):
        if fy.is_zero():
            return y
        y = (y - fy / dy).truncate(prec)
        fy, dy = ev(coeffs, y), ev(deriv, y)
    if fy.is_zero():
        return y
    raise SeriesError("branch error: Newton iteration did not converge")


def qseries_from_list(coeffs, ring: Ring = QQ, prec: int | None = None) -> FracSeries:
    """Integer-exponent series sum_n coeffs[n] q**n."""
    return FracSeries(ring, coeffs, 0, 1, len(coeffs) if prec is None else prec)
