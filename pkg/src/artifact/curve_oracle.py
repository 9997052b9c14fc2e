"""Brute-force ground truth: point counts, zeta numerators from counts, regular differentials."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import divisors, mobius

from .algebra import GF, Elem, GlobalParams, Poly
from .algebra.rings import MAX_TABLE
from .legendre import p_sigma


class DegenerateCurve(ValueError):
    pass


class ScaleExceeded(ValueError):
    pass


class InconsistentCounts(ArithmeticError):
    pass


# ---------------------------------------------------------------- Legendre curves


def legendre_trace(F: GF, lam) -> int:
    """a = q + 1 - #E(F) for y^2 = x(x-1)(x-lam) over F."""
    q = F.q
    total = 0
    for x in range(q):
        rhs = F.mul(F.mul(x, F.sub(x, 1)), F.sub(x, lam))
        if rhs == 0:
            total += 1
        elif F.log[rhs] % 2 == 0:
            total += 2
    return q + 1 - (total + 1)


def supersingular_test(p: int, lam0) -> bool:
    """True iff the Legendre curve at lam0 has trace of Frobenius divisible by p.

    ``lam0`` is an Elem of a finite field of characteristic p (or an int in F_p).
    """
    if isinstance(lam0, Elem):
        F, lam = lam0.ring, lam0.value
    else:
        F, lam = GF(p), GF(p).coerce(lam0)
    if F.p != p:
        raise ValueError("field characteristic differs from p")
    if lam in (0, 1):
        raise DegenerateCurve("lambda in {0, 1} gives a singular cubic")
    return legendre_trace(F, lam) % p == 0


# ---------------------------------------------------------------- Kummer model


def _nth_power_solutions(E: GF, g: int, c) -> int:
    """#{z in E : z^g = c} for a unit c."""
    d = gcd(g, E.q - 1)
    return d if (E.log[c] % d) == 0 else 0


def _root_multiplicity(P: Poly, E: GF, x):
    """(multiplicity e, unit part value (P/(s-x)^e)(x)) of P at x in E."""
    cs = [E.embed(c, P.ring) for c in P.coeffs]
    e = 0
    while True:
        # synthetic division by (s - x)
        acc, quo = 0, []
        for c in reversed(cs):
            acc = E.add(E.mul(acc, x), c)
            quo.append(acc)
        rem = quo.pop()
        if rem != 0:
            return e, rem
        cs = list(reversed(quo))
        e += 1


def _fiber_counts(args):
    P, N, E_key, lo, hi = args
    E = GF(*E_key)
    total = 0
    for x in range(lo, hi):
        e, u = _root_multiplicity(P, E, x)
        g = gcd(N, e) if e else N
        total += _nth_power_solutions(E, g, u)
    return total


def infinity_data(P: Poly, N: int):
    """(g, lc): the places above infinity are the roots of z^g = lc, g = gcd(N, deg P)."""
    return gcd(N, P.degree), P.lc


def kummer_count(params: GlobalParams, n: int, lam_map="literal", P: Poly | None = None,
                 workers: int | None = None) -> int:
    """Points over F_{q^n} (q = p^delta) on the smooth model of y^{p-1} = P(sigma).

    Every place is counted: above sigma0 with P(sigma0) = u t^e the rational
    places are the solutions of z^{gcd(N, e)} = u; above infinity the
    solutions of z^{gcd(N, deg P)} = lc(P).
    """
    if P is None:
        P = p_sigma(params, lam_map)
    N = params.N
    deg = params.delta * n
    if params.p**deg > MAX_TABLE:
        raise ScaleExceeded(f"F_{params.p}^{deg} exceeds the brute-force scale")
    E = GF(params.p, deg)
    workers = workers or 1
    chunks = [(P, N, (params.p, deg), E.q * i // workers, E.q * (i + 1) // workers) for i in range(workers)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            total = sum(ex.map(_fiber_counts, chunks))
    else:
        total = sum(map(_fiber_counts, chunks))
    g, lc = infinity_data(P, N)
    total += _nth_power_solutions(E, g, E.embed(lc, P.ring))
    return total


@dataclass(frozen=True)
class CountTable:
    q: int
    counts: tuple

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise InconsistentCounts("negative point count")


def count_table(params: GlobalParams, r: int, lam_map="literal", workers: int | None = None) -> CountTable:
    workers = workers or int(os.environ.get("ANNIHILATOR_WORKERS", "1"))
    return CountTable(params.k_order, tuple(kummer_count(params, n, lam_map, workers=workers)
                                            for n in range(1, r + 1)))


def zeta_from_counts(table: CountTable) -> list[int]:
    """First r coefficients of P(t) in Z(t) = P(t) / ((1 - t)(1 - q t))."""
    q = table.q
    S = [None] + [N - 1 - q**n for n, N in enumerate(table.counts, start=1)]
    a = [Fraction(1)]
    for n in range(1, len(table.counts) + 1):
        acc = sum(S[i] * a[n - i] for i in range(1, n + 1))
        a.append(Fraction(acc, n))
        if a[-1].denominator != 1:
            raise InconsistentCounts(f"coefficient {n} of the numerator is not an integer")
    return [int(c) for c in a]


def counts_from_zeta(num: list[int], den: list[int], r: int) -> list[int]:
    """N_1..N_r from Z = num/den via logarithmic derivative (integer arithmetic)."""
    # -t Z'/Z = ... ; use s_n = sum of inverse roots^n: for f = prod(1 - a t), log f = -sum s_n t^n/n
    def power_sums(f):
        # Newton: n e_n style for f(t) = 1 + f1 t + ...
        s = []
        for n in range(1, r + 1):
            acc = -n * (f[n] if n < len(f) else 0)
            for i in range(1, n):
                acc -= (f[i] if i < len(f) else 0) * s[n - i - 1]
            s.append(acc)
        return s

    if num[0] != 1 or den[0] != 1:
        raise ValueError("numerator and denominator must have constant term 1")
    sn, sd = power_sums(num), power_sums(den)
    # log Z = sum N_n t^n / n with N_n = -s_n(num) + s_n(den) where s_n(f) = sum of inverse roots^n
    return [sd[i] - sn[i] for i in range(r)]


# ---------------------------------------------------------------- differentials


def genus(params: GlobalParams, P: Poly) -> int:
    """Riemann-Hurwitz for y^N = P(sigma) (P over k, any multiplicities)."""
    N = params.N
    k = params.k
    Pk = P if P.ring is k else P.map_coeffs(lambda c: k.embed(c, P.ring), k)
    ram = 0
    for pi, mult in Pk.factor():
        ram += pi.degree * (N - gcd(N, mult))
    g_inf = gcd(N, P.degree)
    ram += N - g_inf
    two_g_minus_2 = -2 * N + ram
    return two_g_minus_2 // 2 + 1


def holo_diff_basis(params: GlobalParams, lam_map="literal", P: Poly | None = None):
    """Exponent pairs (a, b) with sigma^a y^{-b} dsigma regular everywhere.

    Valuations: at a root of multiplicity mu (ramification e = N/gcd(N, mu))
    the order is e - 1 - b e mu / N; above infinity (e = N/gcd(N, D)) it is
    -a e - e - 1 + b e D / N.  Only 1 <= b <= N - 1 are needed.
    """
    if P is None:
        P = p_sigma(params, lam_map)
    N, D = params.N, P.degree
    k = params.k
    Pk = P.map_coeffs(lambda c: k.embed(c, P.ring), k)
    mults = {m for _, m in Pk.factor()}
    basis = []
    e_inf = N // gcd(N, D)
    for b in range(1, N):
        ok_finite = True
        for mu in mults:
            e = N // gcd(N, mu)
            if Fraction(e - 1) - Fraction(b * e * mu, N) < 0:
                ok_finite = False
        if not ok_finite:
            continue
        a = 0
        while Fraction(-a * e_inf - e_inf - 1) + Fraction(b * e_inf * D, N) >= 0:
            basis.append((a, b))
            a += 1
    g = genus(params, P)
    if len(basis) != g:
        raise ArithmeticError(f"differential basis has {len(basis)} elements, genus is {g}")
    return basis


def mobius_place_degrees(counts_by_n: dict[int, int]) -> dict[int, int]:
    """Places of each degree from rational point counts over F_{q^n}, n | max."""
    out = {}
    for d in sorted(counts_by_n):
        s = sum(mobius(d // e) * counts_by_n[e] for e in divisors(d) if e in counts_by_n)
        if s % d:
            raise InconsistentCounts("non-integral place count")
        if s:
            out[d] = s // d
    return out
