"""Seeded random campaigns over hypothesis-satisfying instances.

Candidates are drawn as floats from a few families (sorted uniforms, two-level
steps, near-constant, heavy heads), pushed towards the hypothesis boundary by
the largest safe scalar multiple, then floored onto the lattice ``k/denom``.
Only candidates passing the exact integer hypothesis check are kept, so every
counted instance genuinely satisfies the hypothesis.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .seq_inequality import (LEDGER_NAMES, LatticeBatch, TripleSequences,
                             admissible_triples)

# multiple of 8 so that 5/8 is representable; 5 * 4096
DEFAULT_DENOM = 20480


def _float_candidates(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """(size, 3, n) floats in [0, 1], nonincreasing along the last axis."""
    style = rng.integers(0, 4, size=(size, 3, 1))
    u = rng.random((size, 3, n))
    uniform = -np.sort(-u, axis=-1)

    hi = rng.random((size, 3, 1))
    lo = hi * rng.random((size, 3, 1))
    cut = rng.integers(0, n + 1, size=(size, 3, 1))
    step = np.where(np.arange(n) < cut, hi, lo)

    level = rng.uniform(0.3, 0.9, size=(size, 3, 1))
    near = -np.sort(-np.clip(level + 0.05 * rng.standard_normal((size, 3, n)), 0, 1), axis=-1)

    head = np.where(np.arange(n) < rng.integers(1, n // 2 + 1, size=(size, 3, 1)),
                    rng.uniform(0.7, 1.0, size=(size, 3, 1)), 0.0)
    heavy = -np.sort(-np.maximum(head, 0.3 * uniform), axis=-1)

    return np.select([style == 0, style == 1, style == 2], [uniform, step, near], heavy)


def _boundary_scale(vals: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    n = vals.shape[-1]
    I, J, K = admissible_triples(n)
    a, b, c = vals[:, 0][:, I], vals[:, 1][:, J], vals[:, 2][:, K]
    quad = a * b + b * c + c * a
    lin = a + b + c
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(quad > 0, 0.625 * lin / quad, np.inf)
    lam = ratio.min(axis=1)
    top = vals.reshape(len(vals), -1).max(axis=1)
    lam = np.minimum(lam, np.where(top > 0, 1.0 / np.maximum(top, 1e-300), np.inf))
    lam = np.where(np.isfinite(lam), lam, 1.0)
    slack = rng.choice([0.0, 1e-4, 1e-2], size=len(vals)) + 0.05 * rng.random(len(vals)) * (
        rng.random(len(vals)) < 0.3)
    factor = np.where(rng.random(len(vals)) < 0.75, lam * (1 - slack), np.minimum(lam, 1.0))
    return np.clip(vals * factor[:, None, None], 0.0, 1.0)


def sample_hypothesis_instances(n: int, count: int, rng: np.random.Generator,
                                denom: int = DEFAULT_DENOM, batch: int = 4096) -> LatticeBatch:
    """Exactly ``count`` random lattice instances satisfying the pointwise hypothesis."""
    parts: list[LatticeBatch] = []
    have = 0
    while have < count:
        vals = _boundary_scale(_float_candidates(n, batch, rng), rng)
        ints = np.floor(vals * denom).astype(np.int64)
        cand = LatticeBatch(ints[:, 0], ints[:, 1], ints[:, 2], denom)
        keep = cand.subset(cand.hypothesis_holds())
        parts.append(keep)
        have += len(keep)
    a = np.concatenate([p.a for p in parts])[:count]
    b = np.concatenate([p.b for p in parts])[:count]
    c = np.concatenate([p.c for p in parts])[:count]
    return LatticeBatch(a, b, c, denom)


@dataclass
class CampaignReport:
    n: int
    instances: int
    seed: int
    counterexamples: list[TripleSequences] = field(default_factory=list)
    certificate_failures: list[tuple[str, TripleSequences]] = field(default_factory=list)
    applicable: dict[str, int] = field(default_factory=dict)
    tightest_margin: Fraction | None = None
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.counterexamples and not self.certificate_failures


def run_campaign(n: int, count: int, seed: int, denom: int = DEFAULT_DENOM,
                 chunk: int = 20000) -> CampaignReport:
    """Check conclusion and proof ledger on ``count`` random instances of length ``n``."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    report = CampaignReport(n=n, instances=0, seed=seed,
                            applicable={name: 0 for name in LEDGER_NAMES})
    best = None
    while report.instances < count:
        size = min(chunk, count - report.instances)
        batch = sample_hypothesis_instances(n, size, rng, denom)
        slack = batch.conclusion_slack()
        for r in np.flatnonzero(slack < 0):
            report.counterexamples.append(batch.instance(int(r)))
        low = int(np.argmin(slack))
        if best is None or slack[low] < best:
            best = int(slack[low])
        for name, (app, holds) in batch.certificate().items():
            report.applicable[name] += int(app.sum())
            for r in np.flatnonzero(app & ~holds):
                report.certificate_failures.append((name, batch.instance(int(r))))
        report.instances += size
    report.tightest_margin = Fraction(best, 8 * n * n * denom * denom)
    report.elapsed_ms = (time.perf_counter() - t0) * 1e3
    return report
