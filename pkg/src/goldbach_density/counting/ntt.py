"""Exact integer convolution: schoolbook for short inputs, multi-prime NTT otherwise.

The NTT runs vectorised in numpy int64 (all primes are below 2^30, so products
fit).  Enough primes are used that their product exceeds twice the a-priori
bound on any output coefficient; residues are combined with Garner's method.
"""
from __future__ import annotations

import numpy as np

# (prime, primitive root); each prime is c * 2^k + 1 with k >= 23
NTT_PRIMES = ((998244353, 3), (167772161, 3), (469762049, 3))
SCHOOLBOOK_WORK = 1 << 24


def _bitrev(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _root_table(n: int, p: int, w: int) -> np.ndarray:
    """``w^k mod p`` for k < n/2 by repeated doubling."""
    half = max(1, n // 2)
    table = np.ones(1, dtype=np.int64)
    while len(table) < half:
        step = pow(w, len(table), p)
        table = np.concatenate([table, table * step % p])
    return table[:half]


def ntt(a: np.ndarray, p: int, g: int, inverse: bool = False) -> np.ndarray:
    n = len(a)
    if n & (n - 1):
        raise ValueError("NTT length must be a power of two")
    if (p - 1) % n:
        raise ValueError(f"length {n} too large for prime {p}")
    w = pow(g, (p - 1) // n, p)
    if inverse:
        w = pow(w, p - 2, p)
    roots = _root_table(n, p, w)
    out = np.asarray(a, dtype=np.int64)[_bitrev(n)] % p
    length = 2
    while length <= n:
        half = length // 2
        tw = roots[:: n // length][:half]
        blocks = out.reshape(-1, length)
        u = blocks[:, :half]
        v = blocks[:, half:] * tw % p
        out = np.concatenate([(u + v) % p, (u - v) % p], axis=1).reshape(-1)
        length *= 2
    if inverse:
        out = out * pow(n, p - 2, p) % p
    return out


def _convolve_mod(a: np.ndarray, b: np.ndarray, size: int, p: int, g: int) -> np.ndarray:
    fa = ntt(np.pad(a % p, (0, size - len(a))), p, g)
    fb = ntt(np.pad(b % p, (0, size - len(b))), p, g)
    return ntt(fa * fb % p, p, g, inverse=True)


def _garner(residues: list[np.ndarray], primes: list[int]) -> np.ndarray:
    """Combine residues into the unique value in ``[0, prod primes)`` (object ints if needed)."""
    if len(primes) == 1:
        return residues[0]
    p1, p2 = primes[0], primes[1]
    r1, r2 = residues[0], residues[1]
    t2 = (r2 - r1) % p2 * pow(p1, -1, p2) % p2
    if len(primes) == 2:
        return r1 + p1 * t2        # < p1 * p2 < 2^58
    p3 = primes[2]
    x12 = r1 + p1 * t2
    t3 = (residues[2] - x12 % p3) % p3 * pow(p1 * p2 % p3, -1, p3) % p3
    return x12.astype(object) + (p1 * p2) * t3.astype(object)


def exact_convolve(a, b, bound: int | None = None) -> np.ndarray:
    """Full linear convolution of nonnegative integer vectors, exactly.

    ``bound`` caps every output coefficient; by default it is
    ``min(len) * max(a) * max(b)``.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.size == 0 or b.size == 0:
        return np.zeros(0, dtype=np.int64)
    if (a < 0).any() or (b < 0).any():
        raise ValueError("exact_convolve expects nonnegative inputs")
    if bound is None:
        bound = min(len(a), len(b)) * int(a.max()) * int(b.max())
    if len(a) * len(b) <= SCHOOLBOOK_WORK and bound < 2**62:
        # np.convolve on int64 is exact while no coefficient overflows
        return np.convolve(a, b)
    size = 1
    while size < len(a) + len(b) - 1:
        size *= 2
    primes, prod = [], 1
    for p, g in NTT_PRIMES:
        primes.append((p, g))
        prod *= p
        if prod > 2 * bound:
            break
    else:
        raise ValueError(f"coefficient bound {bound} exceeds the NTT prime product")
    res = [_convolve_mod(a, b, size, p, g) for p, g in primes]
    return _garner(res, [p for p, _ in primes])[: len(a) + len(b) - 1]
