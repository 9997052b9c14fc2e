"""Eisenstein series, the theta operator and the mod-p congruence target."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import GF, QQ, FracSeries, GlobalParams
from .algebra.params import DomainError


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from sum_{k<=n} C(n+1, k) B_k = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2:
        return Fraction(0)
    acc = Fraction(0)
    binom = 1  # C(n+1, k)
    for k in range(n):
        acc += binom * bernoulli(k)
        binom = binom * (n + 1 - k) // (k + 1)
    return -acc / (n + 1)


def divisor_power_sums(power: int, T: int) -> list[int]:
    """sigma_power(n) for 0 <= n < T (entry 0 is unused and set to 0)."""
    out = [0] * T
    for d in range(1, T):
        dp = d**power
        for n in range(d, T, d):
            out[n] += dp
    return out


@dataclass(frozen=True)
class ModularSeries:
    """A q-expansion tagged with its weight.

    theta adds 2 to the weight, products add weights; the bookkeeping is
    a cheap structural check on compositions.
    """

    series: FracSeries
    weight: int

    def __mul__(self, other: "ModularSeries") -> "ModularSeries":
        return ModularSeries(self.series * other.series, self.weight + other.weight)

    def __truediv__(self, other: "ModularSeries") -> "ModularSeries":
        return ModularSeries(self.series / other.series, self.weight - other.weight)

    def __pow__(self, n: int) -> "ModularSeries":
        return ModularSeries(self.series**n, self.weight * n)

    def theta(self, times: int = 1) -> "ModularSeries":
        s = self.series
        for _ in range(times):
            s = theta(s)
        return ModularSeries(s, self.weight + 2 * times)

    def reduce(self, p: int) -> "ModularSeries":
        return ModularSeries(self.series.reduce(GF(p)), self.weight)


EisensteinSeries = ModularSeries


def eisenstein_series(w: int, T: int) -> ModularSeries:
    """E_w = 1 - (2w/B_w) sum sigma_{w-1}(n) q^n over Q, modulo q^T."""
    if w % 2 or w < 4:
        raise DomainError(f"weight must be even and at least 4, got {w}")
    if T < 1:
        raise DomainError("truncation must be positive")
    c = -Fraction(2 * w) / bernoulli(w)
    sig = divisor_power_sums(w - 1, T)
    coeffs = [Fraction(1)] + [c * sig[n] for n in range(1, T)]
    return ModularSeries(FracSeries(QQ, coeffs, 0, 1, T), w)


def theta(f: FracSeries) -> FracSeries:
    """q d/dq."""
    return f.theta()


def as_rhs_min_terms(p: int) -> int:
    return 12 * (p - 1) + 40


def as_rhs(params: GlobalParams, T: int, *, check_integrality: bool = True) -> FracSeries:
    """theta^{p-2}(E_{p+1}) / E_{p-1}^3 reduced mod p, in integer powers of q."""
    p = params.p
    if T < as_rhs_min_terms(p):
        raise DomainError(f"truncation {T} is too small; need at least {as_rhs_min_terms(p)} q-terms")
    num = eisenstein_series(p + 1, T).theta(p - 2)
    den = eisenstein_series(p - 1, T) ** 3
    assert num.weight == den.weight == 3 * (p - 1)
    quo = num / den  # weight 0: a function on the curve
    if check_integrality:
        for _, c in quo.series.terms():
            if c.denominator % p == 0:
                raise ArithmeticError(f"coefficient {c} is not p-integral")
    return quo.series.reduce(GF(p))
