"""Dense univariate polynomials over a ``Ring``."""

from __future__ import annotations

import random
from itertools import product

from .rings import GF, Ring, RingError


class Poly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of var**i."""

    __slots__ = ("ring", "coeffs", "var")

    def __init__(self, ring: Ring, coeffs, var: str = "x", _raw: bool = False):
        cs = list(coeffs) if _raw else [ring.coerce(c) for c in coeffs]
        while cs and ring.is_zero(cs[-1]):
            cs.pop()
        self.ring = ring
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def raw(cls, ring, coeffs, var="x"):
        return cls(ring, coeffs, var, _raw=True)

    @classmethod
    def monomial(cls, ring, n, c=None, var="x"):
        c = ring.one if c is None else ring.coerce(c)
        return cls.raw(ring, [ring.zero] * n + [c], var)

    @classmethod
    def const(cls, ring, c, var="x"):
        return cls(ring, [c], var)

    def _new(self, coeffs):
        return Poly(self.ring, coeffs, self.var, _raw=True)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.ring.zero

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ring.zero

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.one

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _other(self, other):
        if isinstance(other, Poly):
            return other
        return Poly(self.ring, [other], self.var)

    def __add__(self, other):
        other = self._other(other)
        R = self.ring
        n = max(len(self.coeffs), len(other.coeffs))
        return self._new([R.add(self[i], other[i]) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return self._new([self.ring.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        other = self._other(other)
        R = self.ring
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._new([])
        out = [R.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if R.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = R.add(out[i + j], R.mul(x, y))
        return self._new(out)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by a raw ring value."""
        return self._new([self.ring.mul(c, x) for x in self.coeffs])

    def __pow__(self, n: int):
        result = Poly.const(self.ring, 1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "Poly"):
        R = self.ring
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        inv_lc = R.inv(other.lc)
        rem = list(self.coeffs)
        db = other.degree
        quo = [R.zero] * max(0, len(rem) - db)
        for d in range(len(rem) - 1, db - 1, -1):
            c = rem[d]
            if R.is_zero(c):
                continue
            c = R.mul(c, inv_lc)
            quo[d - db] = c
            for i, y in enumerate(other.coeffs):
                rem[d - db + i] = R.sub(rem[d - db + i], R.mul(c, y))
        return self._new(quo), self._new(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(self._other(other))[0]

    def __mod__(self, other):
        return self.divmod(self._other(other))[1]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.ring.inv(self.lc))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "Poly"):
        """(g, s, t) with s*self + t*other = g monic."""
        one = Poly.const(self.ring, 1, self.var)
        zero = Poly(self.ring, [], self.var)
        r0, r1, s0, s1, t0, t1 = self, other, one, zero, zero, one
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        c = self.ring.inv(r0.lc)
        return r0.scale(c), s0.scale(c), t0.scale(c)

    def invmod(self, modulus: "Poly") -> "Poly":
        g, s, _ = self.xgcd(modulus)
        if g.degree != 0:
            raise RingError("polynomial is not invertible modulo the modulus")
        return s % modulus

    def powmod(self, n: int, modulus: "Poly") -> "Poly":
        if n < 0:
            return self.invmod(modulus).powmod(-n, modulus)
        result = Poly.const(self.ring, 1, self.var) % modulus
        base = self % modulus
        while n:
            if n & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return result

    def __call__(self, x, ring: Ring | None = None):
        """Evaluate by Horner; ``ring`` lets the point live in an extension."""
        R = ring or self.ring
        cs = self.coeffs if R is self.ring else [R.embed(c, self.ring) for c in self.coeffs]
        acc = R.zero
        for c in reversed(cs):
            acc = R.add(R.mul(acc, x), c)
        return acc

    def derivative(self):
        R = self.ring
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            out.append(R.mul(R.coerce(i), c))
        return self._new(out)

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly(self.ring, [], other.var)
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.raw(self.ring, [c], other.var)
        return acc

    def reverse(self, n: int | None = None) -> "Poly":
        """var**n * self(1/var); n defaults to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [self.ring.zero] * (n + 1 - len(self.coeffs))
        return self._new(list(reversed(cs[: n + 1])))

    def map_coeffs(self, f, ring: Ring | None = None):
        return Poly.raw(ring or self.ring, [f(c) for c in self.coeffs], self.var)

    def is_even(self):
        return all(self.ring.is_zero(c) for c in self.coeffs[1::2])

    # ------------------------------------------------------------ finite fields

    def _check_field(self):
        if not isinstance(self.ring, GF):
            raise RingError("factorization needs a finite field")

    def squarefree_part_is_self(self) -> bool:
        return self.gcd(self.derivative()).degree == 0

    def is_irreducible(self) -> bool:
        self._check_field()
        n = self.degree
        if n <= 0:
            return False
        f = self.monic()
        q = self.ring.q
        x = Poly.monomial(self.ring, 1, var=self.var)
        from sympy import primefactors

        if x.powmod(q**n, f) != x % f:
            return False
        for r in primefactors(n):
            h = x.powmod(q ** (n // r), f) - x
            if f.gcd(h).degree != 0:
                return False
        return True

    def factor(self, seed: int = 0):
        """Monic irreducible factors with multiplicity, sorted canonically."""
        self._check_field()
        if self.is_zero():
            raise RingError("cannot factor zero")
        out = {}
        for g, e in _squarefree(self.monic()):
            for d, h in _ddf(g):
                for pi in _edf(h, d, random.Random(seed)):
                    out[pi] = out.get(pi, 0) + e
        return sorted(out.items(), key=lambda t: (t[0].degree, t[0].coeffs))

    def roots(self, field: GF | None = None):
        """Distinct roots in ``field`` (an extension of the coefficient field)."""
        self._check_field()
        field = field or self.ring
        if field is self.ring:
            lifted = self
        else:
            lifted = self.map_coeffs(lambda c: field.embed(c, self.ring), field)
        roots = []
        for pi, _ in lifted.factor():
            if pi.degree == 1:
                roots.append(field.neg(pi.coeffs[0]))
        return sorted(roots)

    def __repr__(self):
        return f"Poly({self.fmt()} over {self.ring!r})"

    def fmt(self) -> str:
        R, v = self.ring, self.var
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if R.is_zero(c):
                continue
            cs = R.fmt(c)
            if " " in cs or ("+" in cs.lstrip("-")):
                cs = f"({cs})"
            mono = "" if i == 0 else (v if i == 1 else f"{v}^{i}")
            if not mono:
                terms.append(cs)
            elif c == R.one:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms)


def _squarefree(f: Poly):
    """Yun-style squarefree decomposition over a finite field."""
    R = f.ring
    p = R.char
    out = []

    def rec(f, mult):
        if f.degree <= 0:
            return
        df = f.derivative()
        if df.is_zero():
            # f = g(x^p); take p-th roots of coefficients
            g = Poly.raw(
                R,
                [R.pow(f.coeffs[i], R.q // p) for i in range(0, len(f.coeffs), p)],
                f.var,
            )
            rec(g, mult * p)
            return
        c = f.gcd(df)
        w = f // c
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            z = w // y
            if z.degree > 0:
                out.append((z.monic(), i * mult))
            i += 1
            w = y
            c = c // y
        if c.degree > 0:
            rec(_pth_root(c), mult * p)

    def _pth_root(c):
        return Poly.raw(
            R, [R.pow(c.coeffs[i], R.q // p) for i in range(0, len(c.coeffs), p)], c.var
        )

    rec(f, 1)
    return out


def _ddf(f: Poly):
    R = f.ring
    x = Poly.monomial(R, 1, var=f.var)
    h = x
    d = 0
    out = []
    while f.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(R.q, f)
        g = f.gcd(h - x)
        if g.degree > 0:
            out.append((d, g))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f.degree, f.monic()))
    return out


def _edf(f: Poly, d: int, rng: random.Random):
    R = f.ring
    if f.degree == d:
        return [f.monic()]
    if R.p == 2:
        raise RingError("characteristic 2 is not supported")
    e = (R.q**d - 1) // 2
    while True:
        a = Poly.raw(R, [rng.randrange(R.q) for _ in range(f.degree)], f.var)
        if a.degree <= 0:
            continue
        g = f.gcd(a.powmod(e, f) - 1)
        if 0 < g.degree < f.degree:
            return _edf(g, d, rng) + _edf(f // g, d, rng)


def monic_enum(field: Ring, degree: int, var: str = "x"):
    """All monic polynomials of the given degree, each once.

    Order: lexicographic in (c_{d-1}, ..., c_0) with coefficients read as
    integer codes.  Deterministic across runs.
    """
    if degree < 0:
        return
    one = field.one
    for tail in product(field.elements(), repeat=degree):
        yield Poly.raw(field, list(reversed(tail)) + [one], var)


def resultant(f: Poly, g: Poly):
    """Res(f, g) over a field, via the Euclidean algorithm."""
    R = f.ring
    if f.is_zero() or g.is_zero():
        return R.zero
    if isinstance(R, GF) and R.n == 1:
        return _resultant_prime(list(f.coeffs), list(g.coeffs), R.p)
    res = R.one
    a, b = f, g
    while b.degree > 0:
        r = a % b
        if r.is_zero():
            return R.zero
        # Res(a, b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} Res(b, r)
        if (a.degree * b.degree) % 2:
            res = R.neg(res)
        res = R.mul(res, R.pow(b.lc, a.degree - r.degree))
        a, b = b, r
    return R.mul(res, R.pow(b.lc, a.degree))


def _resultant_prime(a: list, b: list, p: int) -> int:
    """Euclidean resultant on coefficient lists over Z/p (ints, low degree first)."""
    res = 1
    while len(b) > 1:
        # r = a mod b
        r = a[:]
        inv = pow(b[-1], -1, p)
        db = len(b) - 1
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i] * inv % p
            if c:
                off = i - db
                for j in range(db):
                    r[off + j] = (r[off + j] - c * b[j]) % p
            r[i] = 0
        while r and r[-1] == 0:
            r.pop()
        if not r:
            return 0
        da = len(a) - 1
        if (da * db) % 2:
            res = -res
        res = res * pow(b[-1], da - (len(r) - 1), p) % p
        a, b = b, r
    return res * pow(b[0], len(a) - 1, p) % p
