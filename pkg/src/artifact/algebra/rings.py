"""Coefficient rings.

Every ring is a small descriptor object that knows how to combine raw
values.  Raw values are cheap Python objects (ints, Fractions, tuples) so
that hot loops never pay for wrapper allocation; ``Elem`` gives the
operator-friendly view when convenience matters more than speed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from sympy import factorint, isprime


class RingError(ArithmeticError):
    pass


class Ring:
    """Interface shared by all coefficient rings."""

    zero = 0
    one = 1
    char = 0

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero

    def eq(self, a, b) -> bool:
        return a == b

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def fmt(self, a) -> str:
        return str(a)

    def elem(self, x) -> "Elem":
        return Elem(self, self.coerce(x))


class Rationals(Ring):
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Elem):
            x = x.value
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise RingError("division by zero in Q")
        return 1 / a

    def is_unit(self, a):
        return a != 0

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


QQ = Rationals()


class ZMod(Ring):
    """Z/nZ with representatives in range(n)."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("modulus must be at least 2")
        self.n = n
        f = factorint(n)
        self.char = n if len(f) == 1 and isprime(n) else n
        self.zero = 0
        self.one = 1

    def coerce(self, x):
        if isinstance(x, Elem):
            x = x.value
        if isinstance(x, Fraction):
            if math.gcd(x.denominator, self.n) != 1:
                raise RingError(f"{x} has a denominator not prime to {self.n}")
            return x.numerator * pow(x.denominator, -1, self.n) % self.n
        return int(x) % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def neg(self, a):
        return -a % self.n

    def mul(self, a, b):
        return a * b % self.n

    def inv(self, a):
        try:
            return pow(a, -1, self.n)
        except ValueError:
            raise RingError(f"{a} is not a unit mod {self.n}") from None

    def is_unit(self, a):
        return math.gcd(a, self.n) == 1

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        return pow(a, n, self.n)

    def __repr__(self):
        return f"ZMod({self.n})"

    def __eq__(self, other):
        return isinstance(other, ZMod) and other.n == self.n

    def __hash__(self):
        return hash(("ZMod", self.n))


def _poly_mulmod(a, b, f, p):
    """Product of coefficient lists a*b modulo monic f over F_p."""
    n = len(f) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d] % p
        if c:
            for i in range(n + 1):
                prod[d - n + i] -= c * f[i]
    return [c % p for c in prod[:n]] + [0] * max(0, n - len(prod))


def _is_primitive(f, p):
    n = len(f) - 1
    order = p**n - 1
    one = [1] + [0] * (n - 1)

    def xpow(e):
        result, base = one, ([0, 1] + [0] * (n - 2)) if n > 1 else [(-f[0]) % p]
        while e:
            if e & 1:
                result = _poly_mulmod(result, base, f, p)
            base = _poly_mulmod(base, base, f, p)
            e >>= 1
        return result

    if f[0] % p == 0:
        return False
    if xpow(order) != one:
        return False
    return all(xpow(order // r) != one for r in factorint(order))


@lru_cache(maxsize=None)
def primitive_modulus(p: int, n: int) -> tuple:
    """First monic primitive polynomial of degree n over F_p (low-to-high).

    Candidates are scanned in a fixed order: constant term first, as an
    integer in base p.  The result is reproducible across runs.
    """
    if n == 1:
        # x - g for the least primitive root g
        for g in range(2 if p > 2 else 1, p):
            if all(pow(g, (p - 1) // r, p) != 1 for r in factorint(p - 1)):
                return ((-g) % p, 1)
        return (p - 1, 1)
    for code in range(p**n):
        f = [(code // p**i) % p for i in range(n)] + [1]
        if _is_primitive(f, p):
            return tuple(f)
    raise RingError(f"no primitive polynomial of degree {n} over F_{p}")


MAX_TABLE = 1 << 23


class GF(Ring):
    """The field with p**n elements.

    Elements are ints 0..q-1 read as base-p digit vectors, digit i being
    the coefficient of x**i modulo the primitive modulus.  Multiplication
    goes through exp/log tables; the integers 0..p-1 are the prime field.
    """

    def __new__(cls, p: int, n: int = 1):
        return _gf(p, n)

    @classmethod
    def _build(cls, p, n):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        self = object.__new__(cls)
        self.p, self.n = p, n
        self.q = p**n
        self.char = p
        self.zero, self.one = 0, 1
        if self.q > MAX_TABLE:
            raise RingError(f"F_{p}^{n} is too large for table arithmetic")
        self.modulus = primitive_modulus(p, n)
        self._make_tables()
        self._embeddings = {}
        return self

    def _make_tables(self):
        p, n, q = self.p, self.n, self.q
        exp = [0] * (2 * q)
        log = [0] * q
        f = self.modulus
        if n == 1:
            g = (-f[0]) % p
            x = 1
            for i in range(q - 1):
                exp[i] = x
                log[x] = i
                x = x * g % p
        else:
            digits = [1] + [0] * (n - 1)
            for i in range(q - 1):
                code = 0
                for d in reversed(digits):
                    code = code * p + d
                exp[i] = code
                log[code] = i
                top = digits[-1]
                digits = [0] + digits[:-1]
                if top:
                    digits = [(digits[j] - top * f[j]) % p for j in range(n)]
        for i in range(q - 1, 2 * q):
            exp[i] = exp[i - (q - 1)]
        self.exp, self.log = exp, log
        self.gen = exp[1]
        if n > 1:
            pw = [p**i for i in range(n)]
            self._pw = pw

    def coerce(self, x):
        if isinstance(x, Elem):
            if x.ring is self:
                return x.value
            return self.embed(x.value, x.ring)
        if isinstance(x, Fraction):
            num, den = x.numerator % self.p, x.denominator % self.p
            if den == 0:
                raise RingError(f"{x} has a denominator divisible by {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def digits(self, a):
        return [(a // self.p**i) % self.p for i in range(self.n)]

    def from_digits(self, ds):
        code = 0
        for d in reversed(list(ds)):
            code = code * self.p + d % self.p
        return code

    def add(self, a, b):
        p = self.p
        if self.n == 1:
            return (a + b) % p
        out, pw = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * pw
            a //= p
            b //= p
            pw *= p
        return out

    def neg(self, a):
        p = self.p
        if self.n == 1:
            return -a % p
        out, pw = 0, 1
        while a:
            out += (-(a % p) % p) * pw
            a //= p
            pw *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def scal(self, c: int, a):
        """Multiply by the prime-field integer c."""
        return self.mul(c % self.p, a)

    def inv(self, a):
        if a == 0:
            raise RingError("division by zero in finite field")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if a == 0:
            if e < 0:
                raise RingError("zero to a negative power")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def is_unit(self, a):
        return a != 0

    def frob(self, a, times: int = 1):
        return self.pow(a, self.p**times)

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def is_square(self, a):
        return a == 0 or self.log[a] % 2 == 0 or self.p == 2

    def sqrt(self, a):
        if a == 0:
            return 0
        la = self.log[a]
        if la % 2:
            raise RingError("not a square")
        return self.exp[la // 2]

    def root_of_unity(self, order: int):
        """The element gen**((q-1)/order), a primitive root of that order."""
        if (self.q - 1) % order:
            raise RingError(f"F_{self.q} has no primitive {order}-th root of unity")
        return self.exp[(self.q - 1) // order]

    def absolute_norm(self, a):
        """Norm down to F_p, as an int in 0..p-1."""
        if a == 0:
            return 0
        return self.exp[(self.log[a] * ((self.q - 1) // (self.p - 1))) % (self.q - 1)]

    def trace(self, a):
        """Absolute trace down to F_p."""
        t, x = 0, a
        for _ in range(self.n):
            t = self.add(t, x)
            x = self.frob(x)
        return t

    def minpoly_degree(self, a) -> int:
        """Degree over F_p of the element."""
        x, d = self.frob(a), 1
        while x != a:
            x, d = self.frob(x), d + 1
        return d

    def embed(self, a, sub: "GF"):
        """Image of an element of the subfield ``sub`` in this field."""
        if sub is self:
            return a
        if sub.p != self.p or self.n % sub.n:
            raise RingError(f"F_{sub.q} does not embed in F_{self.q}")
        if a < self.p:
            return a
        beta = self._root_of_modulus(sub)
        out, pw = 0, 1
        for d in sub.digits(a):
            out = self.add(out, self.scal(d, pw))
            pw = self.mul(pw, beta)
        return out

    def _root_of_modulus(self, sub):
        key = sub.n
        if key not in self._embeddings:
            step = (self.q - 1) // (sub.q - 1)
            f = sub.modulus
            for k in range(1, sub.q - 1):
                if math.gcd(k, sub.q - 1) != 1:
                    continue
                cand = self.exp[(k * step) % (self.q - 1)]
                val, pw = 0, 1
                for c in f:
                    val = self.add(val, self.scal(c, pw))
                    pw = self.mul(pw, cand)
                if val == 0:
                    self._embeddings[key] = cand
                    break
            else:
                raise RingError("subfield modulus has no root")
        return self._embeddings[key]

    def restrict(self, a, sub: "GF"):
        """Inverse of ``embed``; raises if a is not in the subfield."""
        if a < self.p:
            return a
        key = ("inv", sub.n)
        if key not in self._embeddings:
            self._embeddings[key] = {self.embed(b, sub): b for b in range(sub.q)}
        try:
            return self._embeddings[key][a]
        except KeyError:
            raise RingError("element is not in the requested subfield") from None

    def fmt(self, a):
        if self.n == 1:
            return str(a)
        ds = self.digits(a)
        terms = []
        for i, d in enumerate(ds):
            if d:
                if i == 0:
                    terms.append(str(d))
                else:
                    mono = "z" if i == 1 else f"z^{i}"
                    terms.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(reversed(terms)) or "0"

    def __repr__(self):
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    def __reduce__(self):
        return (GF, (self.p, self.n))


@lru_cache(maxsize=None)
def _gf(p, n):
    return GF._build(p, n)


# ---------------------------------------------------------------- cyclotomic


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients of Phi_n, low to high."""
    from sympy import Poly, cyclotomic_poly as cp, symbols

    x = symbols("x")
    return tuple(int(c) for c in reversed(Poly(cp(n, x), x).all_coeffs()))


class Cyclotomic(Ring):
    """Q(zeta_n); elements are tuples of Fractions of length phi(n).

    With ``integral=True`` the ring is meant to be Z[zeta_n]; arithmetic is
    the same and ``is_integral`` is the membership test.
    """

    def __new__(cls, n: int):
        return _cyclo(n)

    @classmethod
    def _build(cls, n):
        self = object.__new__(cls)
        self.order = n
        self.phi = phi = len(cyclotomic_poly(n)) - 1
        self.modpoly = cyclotomic_poly(n)
        self.zero = tuple([Fraction(0)] * phi)
        self.one = tuple([Fraction(1)] + [Fraction(0)] * (phi - 1))
        # reduction table: zeta**k as a vector for 0 <= k < 2n
        self._powers = []
        vec = list(self.one)
        for _ in range(2 * n):
            self._powers.append(tuple(vec))
            vec = self._shift(vec)
        return self

    def _shift(self, vec):
        phi, f = self.phi, self.modpoly
        top = vec[-1]
        out = [Fraction(0)] + list(vec[:-1])
        if top:
            for i in range(phi):
                out[i] -= top * f[i]
        return out

    def coerce(self, x):
        if isinstance(x, Elem):
            x = x.value
        if isinstance(x, tuple):
            if len(x) != self.phi:
                raise RingError("cyclotomic orders differ")
            return tuple(Fraction(c) for c in x)
        return tuple([Fraction(x)] + [Fraction(0)] * (self.phi - 1))

    def zeta(self, k: int = 1):
        return self._powers[k % self.order]

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def scale(self, c, a):
        return tuple(c * x for x in a)

    def mul(self, a, b):
        phi = self.phi
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = [Fraction(0)] * phi
        for k, c in enumerate(prod):
            if c:
                vec = self._powers[k]
                for i in range(phi):
                    if vec[i]:
                        out[i] += c * vec[i]
        return tuple(out)

    def galois(self, a, k: int):
        """Apply zeta -> zeta**k (k prime to n)."""
        out = list(self.zero)
        for i, c in enumerate(a):
            if c:
                vec = self._powers[(i * k) % self.order]
                for j in range(self.phi):
                    out[j] += c * vec[j]
        return tuple(out)

    def conj(self, a):
        return self.galois(a, -1)

    def norm(self, a) -> Fraction:
        """Product of all Galois conjugates, a rational number."""
        prod = self.one
        for k in range(1, self.order + 1):
            if math.gcd(k, self.order) == 1:
                prod = self.mul(prod, self.galois(a, k))
        if any(prod[1:]):
            raise RingError("norm is not rational; internal error")
        return prod[0]

    def inv(self, a):
        if not any(a):
            raise RingError("division by zero in cyclotomic field")
        # a^{-1} = (product of the other conjugates) / norm
        rest = self.one
        for k in range(2, self.order + 1):
            if math.gcd(k, self.order) == 1:
                rest = self.mul(rest, self.galois(a, k))
        nm = self.mul(a, rest)[0]
        return self.scale(1 / nm, rest)

    def is_unit(self, a):
        return any(a)

    def is_zero(self, a):
        return not any(a)

    def is_integral(self, a) -> bool:
        return all(c.denominator == 1 for c in a)

    def is_rational(self, a) -> bool:
        return not any(a[1:])

    def to_complex(self, a, k: int = 1) -> complex:
        """Embedding sending zeta to exp(2 pi i k / n)."""
        z = complex(math.cos(2 * math.pi * k / self.order), math.sin(2 * math.pi * k / self.order))
        acc, zp = 0j, 1 + 0j
        for c in a:
            acc += float(c) * zp
            zp *= z
        return acc

    def embeddings(self):
        return [k for k in range(1, self.order + 1) if math.gcd(k, self.order) == 1]

    def reduce_to(self, a, field: GF, zeta_image):
        """Reduce an integral-at-p element into a finite field."""
        out, zp = 0, 1
        p = field.p
        for c in a:
            if c:
                if c.denominator % p == 0:
                    raise RingError("coefficient is not p-integral")
                out = field.add(out, field.mul(field.coerce(c), zp))
            zp = field.mul(zp, zeta_image)
        return out

    def fmt(self, a):
        terms = []
        for i, c in enumerate(a):
            if c:
                mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                if not mono:
                    terms.append(str(c))
                elif c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append("-" + mono)
                else:
                    terms.append(f"{c}*{mono}")
        return " + ".join(reversed(terms)).replace("+ -", "- ") or "0"

    def __repr__(self):
        return f"Cyclotomic({self.order})"

    def __reduce__(self):
        return (Cyclotomic, (self.order,))


@lru_cache(maxsize=None)
def _cyclo(n):
    return Cyclotomic._build(n)


def embed_cyclo(a, src: Cyclotomic, dst: Cyclotomic):
    """Map Q(zeta_m) into Q(zeta_n) for m | n."""
    if dst.order % src.order:
        raise RingError(f"Q(zeta_{src.order}) does not embed in Q(zeta_{dst.order})")
    step = dst.order // src.order
    out = list(dst.zero)
    for i, c in enumerate(a):
        if c:
            vec = dst.zeta(i * step)
            for j in range(dst.phi):
                out[j] += c * vec[j]
    return tuple(out)


class Elem:
    """Operator-friendly wrapper around a raw ring value."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        self.ring = ring
        self.value = value

    def _lift(self, other):
        if isinstance(other, Elem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingError(f"mismatched rings {self.ring} and {other.ring}")
            return other.value
        return self.ring.coerce(other)

    def __add__(self, other):
        return Elem(self.ring, self.ring.add(self.value, self._lift(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Elem(self.ring, self.ring.sub(self.value, self._lift(other)))

    def __rsub__(self, other):
        return Elem(self.ring, self.ring.sub(self._lift(other), self.value))

    def __mul__(self, other):
        return Elem(self.ring, self.ring.mul(self.value, self._lift(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Elem(self.ring, self.ring.neg(self.value))

    def __truediv__(self, other):
        return Elem(self.ring, self.ring.mul(self.value, self.ring.inv(self._lift(other))))

    def __rtruediv__(self, other):
        return Elem(self.ring, self.ring.mul(self._lift(other), self.ring.inv(self.value)))

    def __pow__(self, n: int):
        return Elem(self.ring, self.ring.pow(self.value, n))

    def inverse(self):
        return Elem(self.ring, self.ring.inv(self.value))

    def conj(self):
        return Elem(self.ring, self.ring.conj(self.value))

    def __eq__(self, other):
        try:
            return self.ring.eq(self.value, self._lift(other))
        except (RingError, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((repr(self.ring), self.value))

    def __bool__(self):
        return not self.ring.is_zero(self.value)

    def __repr__(self):
        return f"{self.ring.fmt(self.value)} in {self.ring!r}"


FieldElem = Elem


def CycInt(n: int, coeffs) -> Elem:
    """Integral element of Z[zeta_n] from a coefficient list."""
    ring = Cyclotomic(n)
    coeffs = list(coeffs) + [0] * (ring.phi - len(coeffs))
    if len(coeffs) > ring.phi:
        # reduce a long representative modulo Phi_n
        acc = ring.zero
        for i, c in enumerate(coeffs):
            acc = ring.add(acc, ring.scale(Fraction(c), ring.zeta(i)))
        return Elem(ring, acc)
    return Elem(ring, ring.coerce(tuple(coeffs)))
