"""Randomised search for instances violating the averaged inequality.

The search runs in floating point (compiled with numba) and maximises

    (AB + BC + CA) - 5/8 (A + B + C)

over nonincreasing ``[0, 1]`` sequences that satisfy the pointwise hypothesis.
Moves perturb one coordinate, a contiguous run, or rescale a whole sequence,
then project back with pool-adjacent-violators and clipping.  Acceptance is
Metropolis with a temperature decaying to zero.  Every improvement of the
running best is recorded; afterwards the recorded states are re-verified in
exact arithmetic and only exactly feasible states count.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numba
import numpy as np

from .errors import PreconditionError
from .exact import as_fraction
from .seq_inequality import (FIVE_EIGHTHS, TripleSequences, admissible_triples,
                             check_pointwise_hypothesis, pair_form)

THREADS_ENV = "GOLDBACH_DENSITY_THREADS"
_HISTORY = 64


@dataclass(frozen=True)
class SearchConfig:
    n: int
    steps: int
    seed: int = 0
    step_scale: Fraction = Fraction(1, 4)
    restarts: int = 1
    # rank states by (AB+BC+CA)/(A+B+C) - 5/8 instead of the raw margin; same sign
    normalized: bool = False

    def __post_init__(self):
        object.__setattr__(self, "step_scale", as_fraction(self.step_scale))
        if self.n < 2 or self.n % 2:
            raise PreconditionError(f"n must be even and >= 2, got {self.n}")
        if self.steps < 1:
            raise PreconditionError("steps must be >= 1")
        if self.restarts < 1:
            raise PreconditionError("restarts must be >= 1")
        if not (0 < self.step_scale <= 1):
            raise PreconditionError("step_scale must lie in (0, 1]")
        if not (0 <= self.seed < 2**64):
            raise PreconditionError("seed must be a 64-bit unsigned integer")


@numba.njit(cache=True, nogil=True)
def pav_box_inplace(v):
    """Nonincreasing least-squares fit, then clip to [0, 1]; modifies ``v``."""
    n = v.shape[0]
    sums = np.empty(n)
    sizes = np.empty(n, np.int64)
    k = 0
    for idx in range(n):
        sums[k] = v[idx]
        sizes[k] = 1
        k += 1
        while k > 1 and sums[k - 2] * sizes[k - 1] < sums[k - 1] * sizes[k - 2]:
            sums[k - 2] += sums[k - 1]
            sizes[k - 2] += sizes[k - 1]
            k -= 1
    pos = 0
    for blk in range(k):
        mean = sums[blk] / sizes[blk]
        mean = min(max(mean, 0.0), 1.0)
        for _ in range(sizes[blk]):
            v[pos] = mean
            pos += 1
    # guard against rounding in the block means
    for idx in range(1, n):
        if v[idx] > v[idx - 1]:
            v[idx] = v[idx - 1]


@numba.njit(cache=True, nogil=True)
def _feasible(st, I, J, K):
    for t in range(I.shape[0]):
        x = st[0, I[t]]
        y = st[1, J[t]]
        z = st[2, K[t]]
        if x * y + y * z + z * x - 0.625 * (x + y + z) > 0.0:
            return False
    return True


@numba.njit(cache=True, nogil=True)
def _objective(st, normalized):
    A = st[0].mean()
    B = st[1].mean()
    C = st[2].mean()
    if normalized:
        total = A + B + C
        if total <= 0.0:
            return -0.625
        return (A * B + B * C + C * A) / total - 0.625
    return A * B + B * C + C * A - 0.625 * (A + B + C)


@numba.njit(cache=True, nogil=True)
def _anneal(n, steps, seed, scale, normalized, I, J, K, history):
    np.random.seed(seed)
    st = np.empty((3, n))
    for s in range(3):
        for i in range(n):
            st[s, i] = 0.625 * np.random.random()
        st[s] = -np.sort(-st[s])
    obj = _objective(st, normalized)
    best = obj
    hist = np.empty((history, 3, n))
    hist_obj = np.empty(history)
    hist[0] = st
    hist_obj[0] = obj
    recorded = 1
    t0 = 0.01 * scale
    old = np.empty(n)
    for step in range(steps):
        frac = 1.0 - step / steps
        temp = t0 * frac * frac
        sigma = scale * (0.01 + 0.99 * frac)
        s = np.random.randint(3)
        old[:] = st[s]
        u = np.random.random()
        if u < 0.5:
            i = np.random.randint(n)
            st[s, i] += sigma * np.random.standard_normal()
        elif u < 0.8:
            i = np.random.randint(n)
            j = np.random.randint(i, n)
            d = sigma * np.random.standard_normal()
            for q in range(i, j + 1):
                st[s, q] += d
        else:
            f = 1.0 + sigma * np.random.standard_normal()
            for q in range(n):
                st[s, q] *= f
        pav_box_inplace(st[s])
        if not _feasible(st, I, J, K):
            st[s] = old
            continue
        new = _objective(st, normalized)
        if new >= obj or (temp > 0.0 and np.random.random() < np.exp((new - obj) / temp)):
            obj = new
            if new > best:
                best = new
                slot = recorded % history
                hist[slot] = st
                hist_obj[slot] = new
                recorded += 1
        else:
            st[s] = old
    return hist, hist_obj, min(recorded, history)


def _numba_seed(seed: int) -> int:
    return int(np.random.SeedSequence(seed).generate_state(1)[0] & 0x7FFFFFFF)


def violation_margin(seqs: TripleSequences) -> Fraction:
    """``(AB+BC+CA) - 5/8 (A+B+C)``; positive means the averaged inequality fails."""
    A, B, C = seqs.averages()
    return pair_form(A, B, C) - FIVE_EIGHTHS * (A + B + C)


@dataclass
class ShardResult:
    seed: int
    steps: int
    best: TripleSequences
    best_margin: Fraction
    float_best: float
    rejected_exact: int = 0


@dataclass
class SearchResult:
    config: SearchConfig
    best: TripleSequences
    best_margin: Fraction
    counterexample: TripleSequences | None
    shards: list[ShardResult] = field(default_factory=list)
    elapsed_ms: float = 0.0


def _run_shard(n: int, steps: int, seed: int, scale: float, normalized: bool) -> ShardResult:
    I, J, K = (np.ascontiguousarray(v, dtype=np.int64) for v in admissible_triples(n))
    hist, hist_obj, count = _anneal(n, steps, _numba_seed(seed), scale, normalized, I, J, K, _HISTORY)
    order = np.argsort(-hist_obj[:count], kind="stable")
    rejected = 0
    for r in order:
        state = hist[r]
        seqs = TripleSequences(*(tuple(Fraction(float(v)) for v in state[s]) for s in range(3)))
        if check_pointwise_hypothesis(seqs).holds:
            return ShardResult(seed, steps, seqs, violation_margin(seqs), float(hist_obj[:count].max()),
                               rejected)
        rejected += 1
    # the start state is feasible in exact arithmetic (all entries <= 5/8)
    raise AssertionError("no recorded state survived exact verification")


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    return max(1, int(raw)) if raw.strip() else 1


def search_counterexample(cfg: SearchConfig, threads: int | None = None) -> SearchResult:
    """Run ``cfg.restarts`` shards with seeds ``seed + shard``; steps split evenly."""
    t0 = time.perf_counter()
    base, extra = divmod(cfg.steps, cfg.restarts)
    jobs = [(cfg.n, base + (1 if r < extra else 0), cfg.seed + r, float(cfg.step_scale), cfg.normalized)
            for r in range(cfg.restarts)]
    jobs = [j for j in jobs if j[1] > 0]
    threads = thread_count() if threads is None else threads
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            shards = list(pool.map(lambda j: _run_shard(*j), jobs))
    else:
        shards = [_run_shard(*j) for j in jobs]
    top = max(shards, key=lambda s: s.best_margin)
    counter = top.best if top.best_margin > 0 else None
    return SearchResult(cfg, top.best, top.best_margin, counter, shards,
                        (time.perf_counter() - t0) * 1e3)
