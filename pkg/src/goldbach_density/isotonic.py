"""Euclidean projection onto nonincreasing sequences in a box.

Pool-adjacent-violators gives the projection onto the monotone cone; clipping
the result to ``[lo, hi]`` afterwards yields the projection onto the cone
intersected with the box (clipping is monotone and acts blockwise).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def pav_nonincreasing(values: Sequence) -> list:
    """Least-squares nonincreasing fit by pool-adjacent-violators.

    Works for any ordered field type supporting ``+`` and ``/`` by ints
    (``Fraction`` stays exact, ``float`` stays float).
    """
    sums: list = []
    sizes: list[int] = []
    for v in values:
        sums.append(v)
        sizes.append(1)
        # pool while the previous block mean is below the current one
        while len(sums) > 1 and sums[-2] * sizes[-1] < sums[-1] * sizes[-2]:
            s, k = sums.pop(), sizes.pop()
            sums[-1] += s
            sizes[-1] += k
    out: list = []
    for s, k in zip(sums, sizes):
        mean = s / k if not isinstance(s, int) else Fraction(s, k)
        out.extend([mean] * k)
    return out


def project_monotone_box(values: Sequence, lo=0, hi=1) -> list:
    """Nearest (Euclidean) nonincreasing sequence with entries in ``[lo, hi]``."""
    return [min(max(v, lo), hi) for v in pav_nonincreasing(values)]
