"""Exact rational helpers.

Most hot loops in this package compare quadratic forms in rationals.  Rather
than looping over ``Fraction`` objects we scale everything onto a common
denominator and work with integer numpy arrays.  When the integers could
overflow 64 bits the arrays fall back to ``dtype=object`` (Python ints), which
is slower but still exact.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

# Headroom kept below 2**63 for the sums of products we form.
_INT64_BITS = 62


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions, floats (exactly) and ``"p/q"`` strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(float(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, v.denominator)
    return d


def int_array(values: Sequence[int], max_abs_product: int) -> np.ndarray:
    """Integer array, int64 when every intermediate stays below ~2**62."""
    if max_abs_product.bit_length() <= _INT64_BITS:
        return np.asarray(values, dtype=np.int64)
    return np.asarray(list(values), dtype=object)


def to_lattice(values: Sequence[Fraction], denom: int | None = None,
               growth: int = 1) -> tuple[np.ndarray, int]:
    """Numerators of ``values`` over a common denominator.

    ``growth`` is an upper bound on how much larger (in absolute value) the
    caller's intermediate integers get compared with ``denom**2``; it decides
    whether int64 is safe.
    """
    if denom is None:
        denom = common_denominator(values)
    nums = []
    for v in values:
        q, r = divmod(v.numerator * denom, v.denominator)
        if r:
            raise ValueError(f"{v} is not a multiple of 1/{denom}")
        nums.append(q)
    big = max([abs(x) for x in nums] + [denom])
    return int_array(nums, growth * big * big), denom
