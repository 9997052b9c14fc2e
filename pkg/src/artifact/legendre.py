"""Deuring polynomial, the level-4 coordinate sigma and q-expansions of lambda and sigma."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .algebra import GF, QQ, Cyclotomic, FracSeries, GlobalParams, Poly, series_solve
from .algebra.params import DomainError
from .algebra.rings import Ring, RingError


def deuring_poly(p: int) -> Poly:
    """H(lam) = (-1)^m sum_i C(m, i)^2 lam^i over F_p, m = (p-1)/2."""
    if p in (2, 3):
        raise DomainError("p must differ from 2 and 3")
    GlobalParams(p)
    m = (p - 1) // 2
    sign = -1 if m % 2 else 1
    return Poly(GF(p), [sign * comb(m, i) ** 2 for i in range(m + 1)], "λ")


@dataclass(frozen=True)
class LambdaMap:
    """lam(sigma) = (sigma^2 + c)^2 / (e * sigma^2).

    ``literal`` is (sigma + 1/(2 sigma))^2; ``halved`` is ((sigma + 1/sigma)/2)^2,
    the classical level-4 cover branched over lam in {0, 1, infinity}.
    """

    name: str
    c: Fraction
    e: Fraction

    def __call__(self, sigma, ring: Ring):
        c, e = ring.coerce(self.c), ring.coerce(self.e)
        s2 = ring.mul(sigma, sigma)
        num = ring.add(s2, c)
        return ring.mul(ring.mul(num, num), ring.inv(ring.mul(e, s2)))


LITERAL = LambdaMap("literal", Fraction(1, 2), Fraction(1))
HALVED = LambdaMap("halved", Fraction(1), Fraction(4))
LAMBDA_MAPS = {m.name: m for m in (LITERAL, HALVED)}


def lambda_map(name: str | LambdaMap) -> LambdaMap:
    if isinstance(name, LambdaMap):
        return name
    try:
        return LAMBDA_MAPS[name]
    except KeyError:
        raise ValueError(f"unknown lambda map {name!r}; choose from {sorted(LAMBDA_MAPS)}") from None


def p_sigma(params: GlobalParams, lam_map="literal") -> Poly:
    """Monic sigma^{2m} e^m H(lam(sigma)) over F_p, of degree 2(p-1)."""
    lm = lambda_map(lam_map)
    p = params.p
    F = GF(p)
    H = deuring_poly(p)
    m = H.degree
    s = Poly.monomial(F, 1, var="σ")
    inner = s * s + Poly.const(F, lm.c, "σ")  # sigma^2 + c
    inner2 = inner * inner
    acc = Poly(F, [], "σ")
    for i, h in enumerate(H.coeffs):
        term = inner2**i * Poly.monomial(F, 2 * (m - i), var="σ")
        acc = acc + term.scale(F.mul(h, F.coerce(lm.e ** (m - i))))
    return acc.monic()


@dataclass(frozen=True)
class SupersingularData:
    p: int
    H: Poly
    p_sigma: Poly
    lambda_roots: tuple


def supersingular_data(params: GlobalParams, lam_map="literal") -> SupersingularData:
    H = deuring_poly(params.p)
    return SupersingularData(params.p, H, p_sigma(params, lam_map), tuple(H.roots(GF(params.p, 2))))


# ---------------------------------------------------------------- q-expansions


def _theta_parts(n_terms: int):
    """(theta2^4 / (16 x), theta3) as integer lists in x = q^{1/2}."""
    a = [0] * n_terms  # sum_{n>=0} x^{n(n+1)}
    n = 0
    while n * (n + 1) < n_terms:
        a[n * (n + 1)] += 1
        n += 1
    t3 = [0] * n_terms
    t3[0] = 1
    n = 1
    while n * n < n_terms:
        t3[n * n] += 2
        n += 1
    return a, t3


def lambda_q(T: int) -> FracSeries:
    """lam(q) = theta2^4 / theta3^4 in powers of q^{1/2}, known modulo q^{T/2}."""
    if T < 4:
        raise DomainError("lambda_q needs T >= 4")
    a, t3 = _theta_parts(T)
    A = FracSeries(QQ, a, 0, 2, T - 1)
    B = FracSeries(QQ, t3, 0, 2, T - 1)
    return ((A**4) / (B**4)).scale(QQ.coerce(16)).shift(1)


def _sqrt_rational(r: Fraction, ring: Ring, zeta8):
    """A square root of the rational r in a ring containing a primitive 8th root of unity.

    Works for r = +-2^a * square; sqrt(2) = z + z^-1 and i = z^2.
    """
    r = Fraction(r)
    if r == 0:
        return ring.zero
    sign = -1 if r < 0 else 1
    r = abs(r)
    two_pow = 0
    num, den = r.numerator, r.denominator
    while num % 2 == 0:
        num //= 2
        two_pow += 1
    while den % 2 == 0:
        den //= 2
        two_pow -= 1
    from math import isqrt

    sn, sd = isqrt(num), isqrt(den)
    if sn * sn != num or sd * sd != den:
        raise RingError(f"sqrt({r}) is not in Q(zeta_8)")
    root = ring.coerce(Fraction(sn, sd) * Fraction(2) ** (two_pow // 2))
    z = zeta8
    if two_pow % 2:
        sqrt2 = ring.add(z, ring.pow(z, 7))
        root = ring.mul(root, sqrt2)
    if sign < 0:
        root = ring.mul(root, ring.mul(z, z))
    return root


def sigma_ring(p: int | None = None):
    """Coefficient ring for sigma(q): Q(zeta_8), or its residue field above p."""
    if p is None:
        R = Cyclotomic(8)
        return R, R.zeta(1)
    f = 1 if p % 8 == 1 else 2
    F = GF(p, f)
    return F, F.root_of_unity(8)


def reduce_zeta8(a, p: int):
    """Reduction of an element of Q(zeta_8) at the prime fixed by ``sigma_ring``."""
    F, z = sigma_ring(p)
    return Cyclotomic(8).reduce_to(a, F, z)


def branch_description(lam_map="literal") -> str:
    lm = lambda_map(lam_map)
    return (f"lambda map {lm.name}: sigma(q) -> sqrt({-lm.c}) at the cusp lam = 0, "
            f"sigma - sigma(0) of order q^(1/4)")


def sigma_q(T: int, lam_map="literal", p: int | None = None) -> FracSeries:
    """sigma(q) in powers of q^{1/4}, modulo q^{T/4}.

    Over Q(zeta_8) when ``p`` is None, otherwise directly over the residue
    field used by ``reduce_zeta8``.  The branch is the one through
    sqrt(-c) at the cusp, reached in two Newton steps: first the unit part
    of sqrt(lam), then the quadratic sigma^2 - sqrt(e) w sigma + c = 0.
    """
    lm = lambda_map(lam_map)
    R, z = sigma_ring(p)
    n_half = (T + 1) // 2 + 2
    lam = lambda_q(n_half + 1)  # den 2
    if p is None:
        lam_R = lam.map(R.coerce, R)
    else:
        lam_R = lam.reduce(R)
    # lam / (16 x) is a unit series in x = q^{1/2}
    unit = lam_R.shift(-1).scale(R.inv(R.coerce(16)))
    one = FracSeries.const(R, 1, 2)
    target = n_half
    root = series_solve([-unit.truncate(target), 0, 1], one, target)  # sqrt of the unit part
    w = root.rescale(4).shift(1).scale(R.coerce(4))  # sqrt(lam) = 4 q^{1/4} root
    sqrt_e = _sqrt_rational(lm.e, R, z)
    s0 = _sqrt_rational(-lm.c, R, z)
    seed = FracSeries.const_raw(R, s0, 4)
    prec = min(T, w.prec)
    relation = [
        FracSeries.const_raw(R, R.coerce(lm.c), 4, prec),
        (-w).scale(sqrt_e).truncate(prec),
        FracSeries.const(R, 1, 4, prec),
    ]
    return series_solve(relation, seed, prec)


def lambda_of_series(s: FracSeries, lam_map="literal") -> FracSeries:
    """Substitute a sigma-series into lam(sigma)."""
    lm = lambda_map(lam_map)
    R = s.ring
    inner = s * s + FracSeries.const_raw(R, R.coerce(lm.c), s.den)
    return (inner * inner) / (s * s).scale(R.coerce(lm.e))
