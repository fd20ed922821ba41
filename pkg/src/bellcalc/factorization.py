"""Prime factorizations of the second Bell index, largest factor first."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class Factorization:
    k: int
    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(p) for p in self.factors)
        object.__setattr__(self, "factors", factors)
        if self.k < 2:
            raise DomainError(f"factorizations are defined for k >= 2, got {self.k}")
        if any(p < 2 for p in factors):
            raise DomainError(f"factors must be >= 2: {factors}")
        if math.prod(factors) != self.k:
            raise DomainError(f"factors {factors} do not multiply to {self.k}")
        if any(a < b for a, b in zip(factors, factors[1:])):
            raise DomainError(f"factors must be in descending order: {factors}")

    @property
    def sigma(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def prime_factors(k: int) -> list[int]:
    """Prime factors of ``k`` with multiplicity, ascending (trial division)."""
    out = []
    for d in (2, 3):
        while k % d == 0:
            out.append(d)
            k //= d
    d = 5
    while d * d <= k:
        for q in (d, d + 2):
            while k % q == 0:
                out.append(q)
                k //= q
        d += 6
    if k > 1:
        out.append(k)
    return out


def factorize(k: int) -> Factorization:
    if k < 2:
        raise DomainError(f"factorize needs k >= 2, got {k}")
    return Factorization(k, tuple(sorted(prime_factors(k), reverse=True)))


def as_factor_tuple(k: int, f=None) -> tuple[int, ...]:
    """Normalize ``f`` (Factorization, int sequence, or None) to a factor tuple
    whose product is ``k``. Orderings other than descending are allowed."""
    if f is None:
        return factorize(k).factors
    factors = tuple(int(p) for p in (f.factors if isinstance(f, Factorization) else f))
    if not factors or any(p < 2 for p in factors) or math.prod(factors) != k:
        raise DomainError(f"{factors} is not a factorization of {k}")
    return factors
