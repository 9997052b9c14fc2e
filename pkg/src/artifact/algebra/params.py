"""Global parameters: the prime, the residue field and the level exponent."""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import isprime

from .rings import GF


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class GlobalParams:
    p: int
    m: int = 1
    delta: int = field(init=False)
    k_order: int = field(init=False)

    def __post_init__(self):
        if not isprime(self.p) or self.p in (2, 3):
            raise DomainError(f"p must be a prime other than 2 and 3, got {self.p}")
        if self.m < 1:
            raise DomainError("level exponent m must be at least 1")
        delta = 1 if (self.p - 1) % 4 == 0 else 2
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "k_order", self.p**delta)

    @property
    def k(self) -> GF:
        return GF(self.p, self.delta)

    @property
    def N(self) -> int:
        """Kummer degree p - 1 of the first layer."""
        return self.p - 1

    @property
    def unit_order(self) -> int:
        """Order of (Z/p^m)^x."""
        return (self.p - 1) * self.p ** (self.m - 1)
