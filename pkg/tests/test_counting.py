import itertools
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldbach_density.counting import (PrimeSubsetSpec, count_representations, exact_convolve,
                                       find_congruence_witness, fourier_direct, fourier_transform,
                                       primorial_below, pseudorandomness_report, relative_density,
                                       scan_odd_range, segmented_prime_count, sieve, w_trick_weights)
from goldbach_density.errors import ModulusError, PreconditionError

ALL = PrimeSubsetSpec.all_primes()
MOD15 = PrimeSubsetSpec.residue_classes(15, [1, 4, 7, 11, 13])
TRUNC = PrimeSubsetSpec.truncation(F(7, 10))


def trial_division(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


@pytest.fixture(scope="module")
def table():
    return sieve(10**6)


def test_sieve_small():
    t = sieve(30)
    assert t.pi(30) == 10 and list(t.primes) == [p for p in range(31) if trial_division(p)]
    assert list(sieve(2).primes) == [2] and sieve(2).pi(2) == 1
    with pytest.raises(PreconditionError):
        sieve(10**6, cap=10**5)


def test_sieve_million_matches_segmented(table):
    assert table.pi(10**6) == 78498 == segmented_prime_count(10**6)
    assert all(table.pi(x) == segmented_prime_count(x) for x in (2, 3, 100, 65537, 131072))


def test_subset_parsing(tmp_path):
    assert PrimeSubsetSpec.parse("all") == ALL
    assert PrimeSubsetSpec.parse("mod:15:1,4,7,11,13") == MOD15
    assert PrimeSubsetSpec.parse("trunc:0.7").rho == F(7, 10)
    (tmp_path / "p.txt").write_text("2 3\n5, 7\n")
    spec = PrimeSubsetSpec.parse("list:@p.txt", base_dir=tmp_path)
    assert spec.members == (2, 3, 5, 7)
    assert PrimeSubsetSpec.parse("list:3,5").members == (3, 5)
    for bad in ("mod:15:3", "trunc:0", "trunc:1.5", "list:x", "primes"):
        with pytest.raises(PreconditionError):
            PrimeSubsetSpec.parse(bad)


def test_relative_density(table):
    assert relative_density(ALL, table, 10**6) == 1
    assert relative_density(PrimeSubsetSpec.explicit([]), table, 10**6) == 0
    assert abs(float(relative_density(MOD15, table, 10**6)) - 0.625) < 0.01
    # the kept fraction is exact only at the end of a dyadic block
    assert abs(float(relative_density(TRUNC, table, 2**19 - 1)) - 0.7) < 0.001


@settings(max_examples=40)
@given(st.lists(st.integers(0, 50), min_size=1, max_size=300),
       st.lists(st.integers(0, 50), min_size=1, max_size=300))
def test_exact_convolution_matches_numpy(a, b):
    ref = np.convolve(np.array(a, dtype=object), np.array(b, dtype=object))
    assert list(exact_convolve(a, b)) == list(ref)


def test_exact_convolution_ntt_paths():
    rng = np.random.default_rng(0)
    for hi in (2, 10**6, 10**10):
        a = rng.integers(0, hi, 5000)
        b = rng.integers(0, hi, 4000)
        got = exact_convolve(a, b)
        ref = np.convolve(a.astype(object), b.astype(object))
        assert len(got) == len(ref) and all(int(x) == y for x, y in zip(got, ref))


def test_small_counts():
    for method in ("convolution", "brute"):
        counts = {n: count_representations(n, [ALL] * 3, method).counts[n] for n in (5, 7, 9)}
        assert counts == {5: 0, 7: 3, 9: 4}


def test_methods_agree_on_random_specs():
    rng = np.random.default_rng(11)
    t = sieve(2000)
    pool = [p for p in t.primes.tolist()]
    specs = [ALL, MOD15, TRUNC]
    for _ in range(3):
        specs.append(PrimeSubsetSpec.explicit(sorted(rng.choice(pool, 120, replace=False).tolist())))
    for trio in itertools.islice(itertools.product(specs, repeat=3), 0, None, 7):
        conv = scan_odd_range(1, 2000, trio, "convolution", t).counts
        brute = scan_odd_range(1, 2000, trio, "brute", t).counts
        assert conv == brute


def test_brute_matches_naive_loop():
    t = sieve(200)
    P = t.primes.tolist()
    naive = {n: sum(1 for a in P for b in P if n - a - b in set(P)) for n in range(1, 200, 2)}
    assert scan_odd_range(1, 199, [ALL] * 3, "brute", t).counts == naive


def test_count_symmetry_under_permutation():
    t = sieve(3000)
    trio = (ALL, MOD15, TRUNC)
    base = scan_odd_range(1001, 3000, trio, table=t).counts
    for perm in itertools.permutations(trio):
        assert scan_odd_range(1001, 3000, perm, table=t).counts == base


def test_obstruction_and_failures():
    rep = scan_odd_range(7, 20001, [MOD15] * 3)
    assert all(c == 0 for n, c in rep.counts.items() if n % 15 == 2)
    assert set(n for n in rep.failures if n > 1000) == {n for n in range(1001, 20002, 2) if n % 15 == 2}
    empty = PrimeSubsetSpec.explicit([])
    rep = scan_odd_range(7, 999, [ALL, empty, ALL])
    assert rep.failures == sorted(rep.counts) and len(rep.failures) == 497
    assert scan_odd_range(7, 10**5, [ALL] * 3).failures == []


def test_csv_rows_shape():
    rep = scan_odd_range(7, 11, [ALL] * 3)
    assert [r[:3] for r in rep.csv_rows()] == [(7, 3, "convolution"), (9, 4, "convolution"),
                                               (11, 6, "convolution")]


def test_wtrick_small_modulus(table):
    n = 10**6 + 3
    prof = w_trick_weights(4, n, [ALL] * 3, F(1, 10), F(1, 1000), table)
    assert prof.W == 6 == primorial_below(4)
    for f in prof.weights:
        assert all(abs(float(f(b)) - 0.9875) < 0.05 for b in (1, 5))
    rep = find_congruence_witness(prof)
    assert rep.found and rep.direct.value_sum > F(3, 2)
    empty = PrimeSubsetSpec.explicit([])
    prof0 = w_trick_weights(4, n, [ALL, empty, ALL], F(1, 10), F(1, 1000), table)
    assert all(v == 0 for v in prof0.weights[1].values)
    assert prof0.mean_conditions == (True, False, True)
    with pytest.raises(PreconditionError):
        find_congruence_witness(prof0)


def test_wtrick_weights_bounded_and_monotone(table):
    n = 3 * 10**5 + 1
    small = PrimeSubsetSpec.residue_classes(7, [1, 2, 3])
    bigger = PrimeSubsetSpec.residue_classes(7, [1, 2, 3, 4])
    prof = w_trick_weights(8, n, [small, bigger, ALL], F(1, 10), F(1, 1000), table)
    totals = [sum(f.values) for f in prof.weights]
    assert totals[0] <= totals[1] <= totals[2]
    assert all(0 <= v <= 1 for f in prof.weights for v in f.values)


def test_wtrick_preconditions(table):
    with pytest.raises(PreconditionError):
        w_trick_weights(4, 10**6 + 3, [ALL] * 3, F(1, 10), F(1, 400), table)
    with pytest.raises(PreconditionError):
        w_trick_weights(4, 10**6 + 2, [ALL] * 3, F(1, 10), F(1, 1000), table)
    with pytest.raises(PreconditionError):
        w_trick_weights(4, 10**7 + 1, [ALL] * 3, F(1, 10), F(1, 1000), table)
    with pytest.raises(PreconditionError):
        w_trick_weights(18, 10**6 + 3, [ALL] * 3, F(1, 10), F(1, 1000), table)


def test_spectrum_examples():
    for N in (5, 257):
        rep = fourier_transform(np.full(N, 1.0 / N))
        assert abs(rep.values[0] - 1) < 1e-12 and np.max(np.abs(rep.values[1:])) < 1e-12
        delta = np.zeros(N)
        delta[0] = 1
        assert np.allclose(fourier_transform(delta).values, 1, atol=1e-12)
    rng = np.random.default_rng(3)
    f = rng.random(1009)
    rep = fourier_transform(f)
    assert rep.parseval_error < 1e-9 and abs(rep.values[0] - f.sum()) < 1e-9
    assert np.max(np.abs(rep.values - fourier_direct(f))) <= 1e-9 * np.max(np.abs(rep.values))
    with pytest.raises(ModulusError):
        fourier_transform(np.ones(15))
    with pytest.raises(PreconditionError):
        fourier_transform(-np.ones(7))


def test_pseudorandomness_report():
    N = 101
    mu = np.full(N, 1.0 / N)
    a = np.full(N, 0.4 / N)
    rep = pseudorandomness_report([mu] * 3, [a] * 3, 2.5, delta=0.1)
    assert rep.eta_observed < 1e-12 and rep.majorized
    assert rep.masses == pytest.approx((0.4,) * 3) and rep.mean_margin == pytest.approx(0.2)
    assert rep.mean_condition and rep.lq_norms[0] == pytest.approx(0.4)
    with pytest.raises(PreconditionError):
        pseudorandomness_report([mu], [a], 3.0)
