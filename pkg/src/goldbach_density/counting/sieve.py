"""Eratosthenes sieve with prime counting, plus an independent segmented counter."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ..errors import PreconditionError

DEFAULT_CAP = 10**8


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Primality of ``0..limit`` as a read-only boolean vector."""

    limit: int
    is_prime: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, limit: int, cap: int = DEFAULT_CAP) -> "PrimeTable":
        if limit < 2:
            raise PreconditionError(f"sieve limit must be >= 2, got {limit}")
        if limit > cap:
            raise PreconditionError(f"sieve limit {limit} exceeds the cap {cap}")
        flags = np.ones(limit + 1, dtype=bool)
        flags[:2] = False
        flags[4::2] = False
        for p in range(3, math.isqrt(limit) + 1, 2):
            if flags[p]:
                flags[p * p::2 * p] = False
        flags.setflags(write=False)
        return cls(limit, flags)

    @cached_property
    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.is_prime)

    @cached_property
    def _cumulative(self) -> np.ndarray:
        return np.cumsum(self.is_prime, dtype=np.int64)

    def pi(self, x: int) -> int:
        """Number of primes ``<= x``."""
        if x < 0:
            return 0
        if x > self.limit:
            raise PreconditionError(f"pi({x}) beyond sieve limit {self.limit}")
        return int(self._cumulative[x])

    def covers(self, x: int) -> bool:
        return x <= self.limit


def sieve(limit: int, cap: int = DEFAULT_CAP) -> PrimeTable:
    return PrimeTable.build(limit, cap)


def segmented_prime_count(limit: int, segment: int = 1 << 16) -> int:
    """Count primes ``<= limit`` segment by segment (odd numbers only)."""
    if limit < 2:
        return 0
    root = math.isqrt(limit)
    base = [p for p in range(3, root + 1, 2) if all(p % q for q in range(3, math.isqrt(p) + 1, 2))]
    count = 1  # the prime 2
    lo = 3
    while lo <= limit:
        hi = min(lo + 2 * segment, limit + 1)
        # odd numbers lo, lo+2, ... < hi
        odd = np.ones((hi - lo + 1) // 2, dtype=bool)
        for p in base:
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start % 2 == 0:
                start += p
            if start >= hi:
                continue
            odd[(start - lo) // 2::p] = False
        count += int(odd.sum())
        lo = hi if hi % 2 else hi + 1
    return count
