from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from goldbach_density.errors import PreconditionError
from goldbach_density.seq_inequality import (LEDGER_NAMES, LatticeBatch, Status, TransformedSequences,
                                             TripleSequences, admissible_triples, certificate_failures,
                                             check_average_conclusion, check_pointwise_hypothesis,
                                             compute_proof_quantities, inverse_transform,
                                             transform_to_xyz, verify_instance,
                                             verify_proof_inequalities)

F = Fraction
FIVE_8 = F(5, 8)


def const(n, a, b=None, c=None):
    return TripleSequences.constant(n, a, b, c)


@st.composite
def triples(draw, n=None, denom=40):
    n = draw(st.sampled_from([2, 4, 6, 8])) if n is None else n
    seqs = []
    for _ in range(3):
        vals = draw(st.lists(st.integers(0, denom), min_size=n, max_size=n))
        seqs.append(tuple(F(v, denom) for v in sorted(vals, reverse=True)))
    return TripleSequences(*seqs)


def _scaled_into_hypothesis(seqs):
    """Shrink a triple by the largest factor that makes the pointwise bound hold."""
    n = seqs.n
    lam = F(1)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if i + j + k < n:
                    continue
                x, y, z = seqs.a[i], seqs.b[j], seqs.c[k]
                quad = x * y + y * z + z * x
                if quad and FIVE_8 * (x + y + z) / quad < lam:
                    lam = FIVE_8 * (x + y + z) / quad
    return TripleSequences(*(tuple(v * lam for v in s) for s in (seqs.a, seqs.b, seqs.c)))


# -- construction ---------------------------------------------------------

def test_rejects_odd_length_and_increasing():
    with pytest.raises(PreconditionError):
        TripleSequences((F(1),) * 3, (F(1),) * 3, (F(1),) * 3)
    with pytest.raises(PreconditionError):
        TripleSequences((F(0), F(1)), (F(1), F(0)), (F(1), F(0)))
    with pytest.raises(PreconditionError):
        TripleSequences((F(2), F(1)), (F(1), F(0)), (F(1), F(0)))


def test_text_round_trip():
    s = TripleSequences((F(1), F(2, 3)), (F(1, 2), F(1, 2)), (F(0), F(0)))
    assert TripleSequences.from_text(s.to_text()) == s
    assert s.to_text().splitlines()[0] == "n=2"


def test_range_flag():
    assert const(6, FIVE_8).in_guaranteed_range
    assert not const(4, FIVE_8).in_guaranteed_range


# -- substitution ---------------------------------------------------------

@pytest.mark.parametrize("a,x", [(F(0), F(-1)), (F(1), F(11, 5)), (F(5, 8), F(1))])
def test_transform_endpoints(a, x):
    assert transform_to_xyz(const(2, a)).x == (x, x)


@given(triples())
def test_round_trip_and_substitution_identity(seqs):
    t = transform_to_xyz(seqs)
    assert inverse_transform(t) == seqs
    s = F(16, 5)
    for a, b, c, x, y, z in zip(seqs.a, seqs.b, seqs.c, t.x, t.y, t.z):
        lhs = x * y + y * z + z * x
        assert lhs == s * s * (a * b + b * c + c * a) - F(32, 5) * (a + b + c) + 3
        assert (a * b + b * c + c * a <= FIVE_8 * (a + b + c)) == (lhs <= 3)


def test_transformed_bounds_enforced():
    with pytest.raises(PreconditionError):
        TransformedSequences((F(3), F(0)), (F(0), F(0)), (F(0), F(0)))


# -- hypothesis and conclusion ------------------------------------------

def test_admissible_triples_match_loop():
    I, J, K = admissible_triples(6)
    brute = [(i, j, k) for i in range(6) for j in range(6) for k in range(6) if i + j + k >= 6]
    assert list(zip(I.tolist(), J.tolist(), K.tolist())) == brute


def test_hypothesis_examples():
    assert check_pointwise_hypothesis(const(6, FIVE_8)).holds
    assert check_pointwise_hypothesis(const(6, 0)).holds
    rep = check_pointwise_hypothesis(const(6, 1))
    v = rep.first_violation
    assert not rep.holds and (v.i, v.j, v.k) == (0, 1, 5)
    assert (v.lhs, v.rhs) == (3, F(15, 8))


def test_conclusion_examples():
    assert check_average_conclusion(const(6, FIVE_8)) == (True, 0)
    assert check_average_conclusion(const(6, 1)) == (False, F(-9, 8))
    holds, margin = check_average_conclusion(const(6, F(29, 40), FIVE_8))
    # 5/8 * (29/40 + 5/4) - (2 * 29/40 * 5/8 + 25/64)
    assert margin == FIVE_8 * F(79, 40) - F(83, 64) == F(-1, 16)
    assert not holds


@given(triples())
def test_hypothesis_matches_naive_scan(seqs):
    n = seqs.n
    naive = [(i, j, k) for i in range(n) for j in range(n) for k in range(n) if i + j + k >= n
             and seqs.a[i] * seqs.b[j] + seqs.b[j] * seqs.c[k] + seqs.c[k] * seqs.a[i]
             > FIVE_8 * (seqs.a[i] + seqs.b[j] + seqs.c[k])]
    rep = check_pointwise_hypothesis(seqs)
    assert rep.holds == (not naive)
    if naive:
        v = rep.first_violation
        assert (v.i, v.j, v.k) == naive[0]


def test_verdicts():
    assert verify_instance(const(6, FIVE_8)).status is Status.CONFIRMED
    assert verify_instance(const(6, 1)).status is Status.HYPOTHESIS_FAILS
    # below the guaranteed length a genuine counterexample exists
    v = verify_instance(TripleSequences((F(1), F(1, 2)), (F(1), F(1, 2)), (F(1), F(1, 2))))
    assert v.status is Status.COUNTEREXAMPLE and v.margin == F(-9, 32)
    assert "instance" in v.to_record()


@pytest.mark.parametrize("n", [6, 8, 10])
@given(data=st.data())
def test_no_counterexample_in_range(n, data):
    seqs = _scaled_into_hypothesis(data.draw(triples(n=n, denom=20)))
    assert check_pointwise_hypothesis(seqs).holds
    assert verify_instance(seqs).status is Status.CONFIRMED


# -- proof quantities and ledger -----------------------------------------

def test_quantities_constant_one():
    q = compute_proof_quantities(transform_to_xyz(const(6, FIVE_8)))
    assert (q.X0, q.X1, q.delta0, q.delta_m, q.delta_m0, q.U) == (3, 3, 3, 3, 6, 12)
    assert (q.r, q.s, q.t, q.E, q.F, q.G) == (2, 2, 2, -8, -8, -8)


def test_quantities_zero_and_minus_one():
    q0 = compute_proof_quantities(transform_to_xyz(const(6, F(5, 16))))
    assert all(getattr(q0, f) == 0 for f in ("X0", "X1", "delta0", "delta_m", "delta_m0", "U", "E"))
    q = compute_proof_quantities(transform_to_xyz(const(6, 0)))
    assert (q.X0, q.X1, q.delta0, q.delta_m, q.U, q.E, q.F, q.G) == (-3, -3, 3, 3, 12, 8, 8, 8)


def test_ledger_saturation_at_constant():
    entries = {e.name: e for e in verify_proof_inequalities(transform_to_xyz(const(6, FIVE_8)))}
    assert set(entries) == set(LEDGER_NAMES)
    assert entries["cross_sum"].applicable and entries["cross_sum"].lhs == entries["cross_sum"].rhs == 6
    sk = entries["skew_all_negative"]
    assert sk.applicable and sk.lhs == sk.rhs == 27
    assert not certificate_failures(entries.values())


def test_ledger_inapplicable_when_hypothesis_fails():
    entries = verify_proof_inequalities(transform_to_xyz(const(6, 1)))
    assert not any(e.applicable for e in entries)


@given(data=st.data())
def test_ledger_holds_on_hypothesis_instances(data):
    n = data.draw(st.sampled_from([6, 8]))
    seqs = _scaled_into_hypothesis(data.draw(triples(n=n, denom=16)))
    assert not certificate_failures(verify_proof_inequalities(transform_to_xyz(seqs)))


@given(triples(n=6))
def test_block_sum_identity(seqs):
    t = transform_to_xyz(seqs)
    n, m = t.n, t.m
    q = compute_proof_quantities(t)
    x, y, z = t.x, t.y, t.z
    block = [(i, j, k) for i in range(m) for j in range(m) for k in range(m, n) if (i + j + k) % m == 0]
    assert len(block) == m * m
    direct = sum(x[i] * y[j] + y[j] * z[k] + z[k] * x[i] for i, j, k in block)
    assert direct == q.X0 * q.Y0 + q.Y0 * q.Z1 + q.Z1 * q.X0
    assert q.X0 + q.X1 == sum(x)


@given(st.lists(triples(n=6, denom=24).map(_scaled_into_hypothesis) | triples(n=6, denom=24),
                min_size=1, max_size=6))
def test_lattice_batch_agrees_with_fraction_path(instances):
    batch = LatticeBatch.from_instances(instances)
    holds = batch.hypothesis_holds()
    slack = batch.conclusion_slack()
    cert = batch.certificate()
    for r, s in enumerate(instances):
        assert bool(holds[r]) == check_pointwise_hypothesis(s).holds
        assert np.sign(int(slack[r])) == np.sign(check_average_conclusion(s)[1])
        if not holds[r]:
            continue        # the batch ledger presumes the hypothesis
        entries = {e.name: e for e in verify_proof_inequalities(transform_to_xyz(s))}
        for name, (app, ok) in cert.items():
            assert bool(app[r]) == entries[name].applicable
            if app[r]:
                assert bool(ok[r]) == entries[name].holds
