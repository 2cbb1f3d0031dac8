import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from goldbach_density.errors import PreconditionError
from goldbach_density.density_functions import (
    ThresholdParams, UnitFunction, WitnessTriple, check_margin_witness, check_sum_witness,
    decreasing_rearrangement, direct_sum_witness, h_margin, level_set, margin_witnesses,
    marginalize, mod15_witnesses, pullback, random_dense_functions, sum_witnesses)
from goldbach_density.modular_sumsets import units

PARAMS = ThresholdParams(F(3, 20), F(1, 20))
S15 = (1, 4, 7, 11, 13)


def brute_best(fs, x, score):
    """Plain triple loop: best admissible triple by ``score``, ties to the smallest (a, b, c)."""
    m = fs[0].modulus
    best = None
    for a, b in itertools.product(units(m).elements(), repeat=2):
        c = (x - a - b) % m
        if c not in fs[2].units:
            continue
        s = score(fs[0](a), fs[1](b), fs[2](c))
        if s is not None and (best is None or s > best[0]):
            best = (s, (a, b, c))
    return best


def sum_score(x, y, z):
    return x + y + z if x * y * z > 0 and x + y + z > F(3, 2) else None


def margin_score(x, y, z):
    h = h_margin(x, y, z)
    return h if h > 0 else None


fractions01 = st.fractions(0, 1, max_denominator=40)


def test_h_examples():
    assert h_margin(F(5, 8), F(5, 8), F(5, 8)) == 0
    assert h_margin(1, 1, 1) == F(9, 8)
    assert h_margin(0, 0, 0) == 0


@given(fractions01, fractions01, fractions01, st.fractions(0, F(1, 4), max_denominator=40))
def test_h_monotone_where_pairs_are_large(x, y, z, eps):
    if y + z >= F(5, 8) and x + eps <= 1:
        assert h_margin(x + eps, y, z) - h_margin(x, y, z) == eps * (y + z - F(5, 8)) >= 0


@given(fractions01, fractions01, fractions01)
def test_positive_h_forces_large_pairs(x, y, z):
    if h_margin(x, y, z) > 0:
        assert min(x + y, y + z, z + x) >= F(5, 8)
        assert x + y + z > F(3, 2) and x * y * z > 0


def test_rearrangement_and_level_sets():
    assert decreasing_rearrangement(UnitFunction.constant(7, F(1, 3))) == (F(1, 3),) * 6
    ind = UnitFunction.indicator(15, S15)
    assert decreasing_rearrangement(ind) == (1,) * 5 + (0,) * 3
    spike = UnitFunction.from_mapping(7, {u: (F(2, 3) if u == 2 else 0) for u in range(1, 7)})
    assert decreasing_rearrangement(spike) == (F(2, 3),) + (0,) * 5
    assert level_set(spike, 0) == units(7)
    assert len(level_set(spike, F(3, 2))) == 0
    assert level_set(ind, 1).elements() == S15


def test_marginalize_examples():
    assert marginalize(UnitFunction.constant(105, F(2, 7)), 7) == UnitFunction.constant(15, F(2, 7))
    f = UnitFunction.indicator(15, [u for u in units(15) if u % 3 == 1])
    g = marginalize(f, 5)
    assert (g.modulus, g(1), g(2)) == (3, 1, 0)
    with pytest.raises(PreconditionError):
        marginalize(f, 7)


def test_marginalize_preserves_means():
    rng = np.random.default_rng(5)
    for _ in range(5):
        f = UnitFunction(105, tuple(F(int(k), 17) for k in rng.integers(0, 18, 48)))
        for q in (3, 5, 7, 15, 35):
            assert marginalize(f, q).mean == f.mean
        assert marginalize(marginalize(marginalize(f, 7), 5), 3).mean == f.mean
        assert pullback(marginalize(f, 7), 105).mean == f.mean


def test_text_round_trip_and_defaults():
    f = UnitFunction.from_mapping(7, {1: F(1, 2), 3: 1})
    assert f.defaulted == (2, 4, 5, 6)
    assert UnitFunction.parse(f.to_text()) == f
    g = UnitFunction.parse("m=7\n# comment\nu 1 1/2\nu 3 1\n")
    assert g == f and g.defaulted == (2, 4, 5, 6)
    for bad in ("u 1 1/2\n", "m=7\nu 2 3/2\n", "m=7\nu 7 1\n", "m=9\n", "m=7\nu 1 1\nu 1 0\n"):
        with pytest.raises(PreconditionError):
            UnitFunction.parse(bad)


@pytest.mark.parametrize("delta,eta", [(0, F(1, 100)), (F(5, 32), F(1, 100)), (F(1, 10), F(1, 25)),
                                       (F(1, 10), 0)])
def test_threshold_validation(delta, eta):
    with pytest.raises(PreconditionError):
        ThresholdParams(delta, eta)


def test_margin_constant_example():
    fs = [UnitFunction.constant(7, F(4, 5))] + [UnitFunction.constant(7, F(3, 5))] * 2
    for mode in ("brute", "constructive"):
        w = margin_witnesses(fs, PARAMS, 0, mode=mode)[0]
        assert w.h_margin == F(7, 100) and check_margin_witness(w, fs)
    ones = [UnitFunction.constant(7, 1)] * 3
    w = margin_witnesses(ones, PARAMS, 3, mode="brute")[3]
    assert (w.a, w.b, w.c, w.h_margin) == (1, 1, 1, F(9, 8))


def test_margin_preconditions():
    ones15 = [UnitFunction.constant(15, 1)] * 3
    with pytest.raises(PreconditionError, match="30"):
        margin_witnesses(ones15, PARAMS)
    ones77 = [UnitFunction.constant(77, 1)] * 3
    with pytest.raises(PreconditionError, match="below 11"):
        margin_witnesses(ones77, PARAMS, min_prime=11)
    assert len(margin_witnesses([UnitFunction.constant(143, 1)] * 3, PARAMS, 5, min_prime=11)) == 1
    at_threshold = [UnitFunction.constant(7, F(5, 8) + PARAMS.delta)] + [UnitFunction.constant(7, 1)] * 2
    with pytest.raises(PreconditionError, match="mean"):
        margin_witnesses(at_threshold, PARAMS)


def test_mod15_examples():
    ones = [UnitFunction.constant(15, 1)] * 3
    ws = mod15_witnesses(ones)
    assert sorted(ws) == list(range(15)) and all(check_sum_witness(w, ones) for w in ws.values())
    ind = [UnitFunction.indicator(15, S15)] * 3
    with pytest.raises(PreconditionError, match="75"):
        mod15_witnesses(ind)
    mixed = [UnitFunction.constant(15, 1)] + [UnitFunction.constant(15, F(7, 8))] * 2
    for v, w in mod15_witnesses(mixed).items():
        assert w.value_sum == F(11, 4) and check_sum_witness(w, mixed)


def test_sum_witness_mod15_target_two():
    ones = [UnitFunction.constant(15, 1)] * 3
    params = ThresholdParams(F(1, 10), F(1, 100))
    for mode in ("brute", "constructive"):
        w = sum_witnesses(ones, params, 2, mode=mode)[2]
        assert (w.a + w.b + w.c) % 15 == 2 and w.product == 1 and w.value_sum == 3
    # every triple scores 3, so the scan returns the lexicographically first one
    assert sum_witnesses(ones, params, 2, mode="brute")[2].to_record()["triple"] == [1, 2, 14]


@pytest.mark.parametrize("m", [7, 77, 105])
def test_brute_mode_matches_loop_oracle(m):
    rng = np.random.default_rng(m)
    for _ in range(3):
        fs = random_dense_functions(m, PARAMS, rng)
        for x in rng.integers(0, m, 4):
            x = int(x)
            got = sum_witnesses(fs, PARAMS, x, mode="brute")[x]
            best = brute_best(fs, x, sum_score)
            assert (got.value_sum, (got.a, got.b, got.c)) == best
            if m % 15:
                got = margin_witnesses(fs, PARAMS, x, mode="brute")[x]
                assert (got.h_margin, (got.a, got.b, got.c)) == brute_best(fs, x, margin_score)


@pytest.mark.parametrize("m", [3, 5, 15, 21, 35, 33, 105])
def test_constructive_covers_every_target(m):
    rng = np.random.default_rng(100 + m)
    for _ in range(4):
        fs = random_dense_functions(m, PARAMS, rng)
        cons = sum_witnesses(fs, PARAMS, mode="constructive")
        brute = sum_witnesses(fs, PARAMS, mode="brute")
        assert sorted(cons) == sorted(brute) == list(range(m))
        assert all(check_sum_witness(w, fs) for w in cons.values())


@pytest.mark.parametrize("m", [7, 11, 77])
def test_constructive_margin_witnesses_verify(m):
    rng = np.random.default_rng(200 + m)
    for _ in range(5):
        fs = random_dense_functions(m, PARAMS, rng)
        ws = margin_witnesses(fs, PARAMS, mode="constructive")
        assert sorted(ws) == list(range(m))
        assert all(check_margin_witness(w, fs) for w in ws.values())


def test_direct_witness_even_modulus():
    fs = [UnitFunction.constant(6, F(99, 100))] * 3
    w = direct_sum_witness(fs, 1)
    assert (w.a + w.b + w.c) % 6 == 1 and w.value_sum == F(297, 100)
    assert direct_sum_witness([UnitFunction.constant(6, 0)] * 3, 1) is None


def test_witness_checkers_reject_bad_triples():
    fs = [UnitFunction.constant(7, 1)] * 3
    good = WitnessTriple(7, 3, 1, 1, 1, (F(1), F(1), F(1)))
    assert check_margin_witness(good, fs) and check_sum_witness(good, fs)
    assert not check_sum_witness(WitnessTriple(7, 4, 1, 1, 1, (F(1),) * 3), fs)
    assert not check_sum_witness(WitnessTriple(7, 3, 0, 2, 1, (F(1),) * 3), fs)
    assert not check_margin_witness(WitnessTriple(7, 3, 1, 1, 1, (F(1), F(1), F(1, 2))), fs)
