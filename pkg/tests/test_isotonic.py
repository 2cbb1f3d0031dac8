import itertools
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from goldbach_density.isotonic import pav_nonincreasing, project_monotone_box

fractions = st.fractions(min_value=-2, max_value=3, max_denominator=12)


def _partition_oracle(values, lo, hi):
    """Best over every split into consecutive blocks replaced by (clipped) means.

    The box-constrained monotone projection is piecewise constant on blocks of
    consecutive indices with each block equal to its clipped mean; enumerating
    all 2^(n-1) splits and keeping feasible candidates gives the optimum.
    """
    n = len(values)
    best = None
    for cuts in itertools.product([False, True], repeat=n - 1):
        blocks, cur = [], [0]
        for i, cut in enumerate(cuts, start=1):
            if cut:
                blocks.append(cur)
                cur = [i]
            else:
                cur.append(i)
        blocks.append(cur)
        cand = []
        for b in blocks:
            mean = sum(values[i] for i in b) / len(b)
            cand.extend([min(max(mean, lo), hi)] * len(b))
        if any(cand[i] < cand[i + 1] for i in range(n - 1)):
            continue
        cost = sum((c - v) ** 2 for c, v in zip(cand, values))
        if best is None or cost < best[0]:
            best = (cost, cand)
    return best


@given(st.lists(fractions, min_size=1, max_size=6))
def test_projection_matches_partition_oracle(values):
    proj = project_monotone_box(values)
    cost = sum((p - v) ** 2 for p, v in zip(proj, values))
    assert all(proj[i] >= proj[i + 1] for i in range(len(proj) - 1))
    assert all(0 <= p <= 1 for p in proj)
    assert cost == _partition_oracle(values, 0, 1)[0]


@given(st.lists(fractions, min_size=1, max_size=20))
def test_pav_preserves_sum_and_fixes_monotone_input(values):
    fit = pav_nonincreasing(values)
    assert sum(fit) == sum(values)
    assert pav_nonincreasing(sorted(values, reverse=True)) == sorted(values, reverse=True)


def test_pav_pools_increasing_pair():
    assert pav_nonincreasing([Fraction(0), Fraction(1)]) == [Fraction(1, 2)] * 2
    assert pav_nonincreasing([0.0, 1.0, 0.5]) == [0.5, 0.5, 0.5]
