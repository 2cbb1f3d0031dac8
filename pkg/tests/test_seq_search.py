from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from goldbach_density.errors import PreconditionError
from goldbach_density.isotonic import project_monotone_box
from goldbach_density.seq_campaign import run_campaign, sample_hypothesis_instances
from goldbach_density.seq_inequality import LEDGER_NAMES, check_pointwise_hypothesis
from goldbach_density.seq_search import (SearchConfig, pav_box_inplace, search_counterexample,
                                         violation_margin)


@given(st.lists(st.floats(-2, 3, allow_nan=False), min_size=1, max_size=12))
def test_compiled_projection_matches_reference(values):
    v = np.array(values, dtype=float)
    pav_box_inplace(v)
    ref = [float(x) for x in project_monotone_box([Fraction(x) for x in values])]
    assert np.allclose(v, ref, atol=1e-12)
    assert np.all(np.diff(v) <= 0)


@pytest.mark.parametrize("kwargs", [dict(n=5, steps=10), dict(n=6, steps=0),
                                    dict(n=6, steps=10, step_scale=0), dict(n=6, steps=10, seed=-1)])
def test_config_validation(kwargs):
    with pytest.raises(PreconditionError):
        SearchConfig(**kwargs)


def test_search_is_deterministic_and_exact():
    cfg = SearchConfig(n=6, steps=20_000, seed=3, restarts=2)
    r1, r2 = search_counterexample(cfg), search_counterexample(cfg, threads=2)
    assert r1.best == r2.best and r1.best_margin == r2.best_margin
    assert [s.seed for s in r1.shards] == [3, 4]
    assert check_pointwise_hypothesis(r1.best).holds
    assert r1.best_margin == violation_margin(r1.best) and r1.best_margin <= 0
    assert r1.counterexample is None


def test_search_finds_short_counterexample():
    # length-2 sequences lie outside the inequality's range; (1, 1/2) is a known violator
    res = search_counterexample(SearchConfig(n=2, steps=200_000, seed=0, normalized=True))
    assert res.counterexample is not None and res.best_margin > 0
    assert check_pointwise_hypothesis(res.counterexample).holds


def test_sampler_produces_hypothesis_instances():
    batch = sample_hypothesis_instances(6, 500, np.random.default_rng(1), denom=80)
    assert len(batch) == 500 and batch.hypothesis_holds().all()
    for r in range(0, 500, 97):
        assert check_pointwise_hypothesis(batch.instance(r)).holds


def test_small_campaign_exercises_ledger():
    rep = run_campaign(8, 5000, seed=7)
    assert rep.ok and rep.instances == 5000
    assert set(rep.applicable) == set(LEDGER_NAMES)
    assert rep.applicable["cross_sum"] == 5000
    assert rep.tightest_margin >= 0
