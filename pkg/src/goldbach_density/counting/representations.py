"""Ordered counts r(n) = #{(p1, p2, p3) in P1 x P2 x P3 : p1 + p2 + p3 = n}."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import PreconditionError
from .ntt import exact_convolve
from .sieve import PrimeTable, sieve
from .subsets import PrimeSubsetSpec

METHODS = ("convolution", "brute")
BRUTE_MAX = 10**4


@dataclass
class RepresentationReport:
    n0: int
    n1: int
    method: str
    counts: dict[int, int]
    elapsed_ms: float
    specs: tuple[str, str, str] = ("all", "all", "all")
    failures: list[int] = field(default_factory=list)

    def csv_rows(self) -> list[tuple[int, int, str, float]]:
        return [(n, c, self.method, round(self.elapsed_ms, 3)) for n, c in sorted(self.counts.items())]


def _table_for(limit: int, table: PrimeTable | None) -> PrimeTable:
    if table is not None and table.limit >= limit:
        return table
    return sieve(max(limit, 2))


def _indicators(specs: Sequence[PrimeSubsetSpec], table: PrimeTable, limit: int) -> list[np.ndarray]:
    if len(specs) != 3:
        raise PreconditionError("need exactly three subset specs")
    return [s.membership(table, limit) for s in specs]


def _all_counts_convolution(ind: list[np.ndarray], limit: int) -> np.ndarray:
    a, b, c = (x.astype(np.int64) for x in ind)
    pair = exact_convolve(a, b)[: limit + 1]
    # any coefficient of pair*c is at most (limit+1) * max(pair)
    bound = (limit + 1) * int(pair.max(initial=0))
    return np.asarray(exact_convolve(pair, c, bound=max(bound, 1))[: limit + 1])


def _all_counts_brute(ind: list[np.ndarray], limit: int) -> np.ndarray:
    """Enumerate p1 explicitly and all (p2, p3) sums with an outer addition."""
    P1, P2, P3 = (np.flatnonzero(x) for x in ind)
    counts = np.zeros(limit + 1, dtype=np.int64)
    if len(P2) == 0 or len(P3) == 0:
        return counts
    pair = (P2[:, None] + P3[None, :]).reshape(-1)
    pair = pair[pair <= limit]
    pair_hist = np.bincount(pair, minlength=limit + 1)
    for p1 in P1:
        counts[p1:] += pair_hist[: limit + 1 - p1]
    return counts


def _single_brute(ind: list[np.ndarray], n: int) -> int:
    """Triple loop with the innermost loop replaced by a membership lookup."""
    P1, P2 = np.flatnonzero(ind[0]), np.flatnonzero(ind[1])
    third = ind[2]
    total = 0
    for p1 in P1:
        rest = n - p1 - P2
        rest = rest[rest >= 0]
        total += int(third[rest].sum())
    return total


def count_representations(n: int, specs: Sequence[PrimeSubsetSpec], method: str = "convolution",
                          table: PrimeTable | None = None) -> RepresentationReport:
    """Exact r(n) for a single n (even n allowed as a diagnostic)."""
    if n < 0:
        raise PreconditionError(f"n must be nonnegative, got {n}")
    if method not in METHODS:
        raise PreconditionError(f"unknown method {method!r}")
    if method == "brute" and n > BRUTE_MAX:
        raise PreconditionError(f"brute method limited to n <= {BRUTE_MAX}")
    t0 = time.perf_counter()
    table = _table_for(n, table)
    ind = _indicators(specs, table, max(n, 2))
    if method == "brute":
        value = _single_brute(ind, n)
    else:
        value = int(_all_counts_convolution(ind, max(n, 2))[n])
    ms = (time.perf_counter() - t0) * 1e3
    return RepresentationReport(n, n, method, {n: value}, ms, tuple(s.text for s in specs),
                                [] if value else [n])


def scan_odd_range(n0: int, n1: int, specs: Sequence[PrimeSubsetSpec], method: str = "convolution",
                   table: PrimeTable | None = None) -> RepresentationReport:
    """r(n) for every odd n in ``[n0, n1]``; ``failures`` lists those with r(n) = 0."""
    if n0 > n1:
        raise PreconditionError(f"empty range [{n0}, {n1}]")
    if method not in METHODS:
        raise PreconditionError(f"unknown method {method!r}")
    if method == "brute" and n1 > BRUTE_MAX:
        raise PreconditionError(f"brute method limited to n <= {BRUTE_MAX}")
    t0 = time.perf_counter()
    limit = max(n1, 2)
    table = _table_for(limit, table)
    ind = _indicators(specs, table, limit)
    allc = _all_counts_convolution(ind, limit) if method == "convolution" else _all_counts_brute(ind, limit)
    first = n0 if n0 % 2 else n0 + 1
    counts = {n: int(allc[n]) for n in range(max(first, 1), n1 + 1, 2)}
    ms = (time.perf_counter() - t0) * 1e3
    return RepresentationReport(n0, n1, method, counts, ms, tuple(s.text for s in specs),
                                [n for n, c in counts.items() if c == 0])
