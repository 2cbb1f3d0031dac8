"""Residue-class weights modulo a primorial W and the congruence witness search.

For a target odd ``n`` and a prime subset ``P`` the weight of a unit class
``b mod W`` is

    f(b) = clamp( 3 phi(W) / (2 n) * sum_{x in P, x = b (W), x < 2n/3} log x - delta/8, [0, 1] ).

Log sums are accumulated in double precision; every weight also carries a
rigorous rounding radius so that the mean conditions can be decided safely.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..density_functions import (ThresholdParams, UnitFunction, WitnessTriple,
                                 check_sum_witness, direct_sum_witness, sum_witnesses)
from ..errors import PreconditionError
from ..modular_sumsets import CrtCoordinates, unit_list
from .sieve import PrimeTable
from .subsets import PrimeSubsetSpec

W_BOUND = 30030
DIRECT_SEARCH_MAX = 10**4


def primorial_below(z) -> int:
    """Product of the primes ``p < z``."""
    return math.prod(p for p in range(2, math.ceil(z)) if all(p % q for q in range(2, math.isqrt(p) + 1)))


@dataclass(frozen=True)
class MeanCheck:
    total: float
    threshold: float
    radius: float          # rigorous bound on |computed total - exact total|

    @property
    def holds(self) -> bool:
        return self.total - self.radius > self.threshold

    @property
    def undecided(self) -> bool:
        return abs(self.total - self.threshold) <= self.radius


@dataclass
class WTrickProfile:
    z: float
    W: int
    n: int
    delta: Fraction
    eta: Fraction
    weights: tuple[UnitFunction, UnitFunction, UnitFunction]
    means: tuple[MeanCheck, MeanCheck, MeanCheck]
    specs: tuple[str, str, str] = ("all", "all", "all")

    @property
    def phi(self) -> int:
        return self.weights[0].phi

    @property
    def mean_conditions(self) -> tuple[bool, bool, bool]:
        return tuple(c.holds for c in self.means)

    @property
    def all_means_hold(self) -> bool:
        return all(self.mean_conditions)


def _check_params(delta: Fraction, eta: Fraction) -> None:
    if not 0 < delta < Fraction(5, 12):
        raise PreconditionError(f"delta={delta} must lie in (0, 5/12)")
    if not 0 < eta < delta / 50:
        raise PreconditionError(f"eta={eta} must lie in (0, delta/50) = (0, {delta / 50})")


def w_trick_weights(z, n: int, specs: Sequence[PrimeSubsetSpec], delta, eta, table: PrimeTable,
                    w_bound: int = W_BOUND) -> WTrickProfile:
    delta, eta = Fraction(delta), Fraction(eta)
    _check_params(delta, eta)
    if n < 3 or n % 2 == 0:
        raise PreconditionError(f"n must be an odd integer >= 3, got {n}")
    W = primorial_below(z)
    if W > w_bound:
        raise PreconditionError(f"W={W} exceeds the bound {w_bound}")
    top = -(-2 * n // 3) - 1            # largest x with x < 2n/3
    if top > table.limit:
        raise PreconditionError(f"sieve limit {table.limit} does not reach 2n/3 ~ {top}")
    units = unit_list(W)
    phi = len(units)
    scale = 3 * phi / (2 * n)
    shift = float(delta) / 8
    # each log carries relative error <= 2^-52; summation of k terms adds k more ulps
    eps = 2.0 ** -52
    weights, means = [], []
    for spec, thr in zip(specs, (Fraction(5, 8) + 3 * delta / 8,
                                 Fraction(5, 8) - (5 * eta / 4 + delta / 8),
                                 Fraction(5, 8) - (5 * eta / 4 + delta / 8))):
        mem = spec.membership(table, max(top, 2))[: top + 1]
        primes = np.flatnonzero(mem)
        logs = np.log(primes.astype(float)) if len(primes) else np.zeros(0)
        sums = np.bincount(primes % W, weights=logs, minlength=W) if len(primes) else np.zeros(W)
        counts = np.bincount(primes % W, minlength=W) if len(primes) else np.zeros(W, dtype=int)
        raw = scale * sums[units] - shift
        vals = np.clip(raw, 0.0, 1.0)
        err = (counts[units] + 4) * eps * np.abs(scale * sums[units]) + 4 * eps
        weights.append(UnitFunction(W, tuple(Fraction(float(v)) for v in vals)))
        means.append(MeanCheck(float(math.fsum(vals)), float(thr * phi), float(err.sum()) + phi * eps))
    return WTrickProfile(z, W, n, delta, eta, tuple(weights), tuple(means), tuple(s.text for s in specs))


@dataclass
class CongruenceWitnessReport:
    W: int
    n: int
    direct: WitnessTriple | None
    odd_part: WitnessTriple | None = None
    odd_part_note: str = ""
    notes: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.direct is not None


def _odd_part_functions(profile: WTrickProfile) -> list[UnitFunction]:
    half = profile.W // 2
    crt = CrtCoordinates(2, half)
    out = []
    for f in profile.weights:
        vals = f.as_dict()
        out.append(UnitFunction(half, tuple(vals[crt.join(1, b)] for b in unit_list(half))))
    return out


def find_congruence_witness(profile: WTrickProfile, n: int | None = None,
                            odd_part: bool = True) -> CongruenceWitnessReport:
    """Units ``b1 + b2 + b3 = n (mod W)`` with positive product and weight sum above 3/2.

    The direct route searches ``Z_W^*`` exhaustively (any square-free W).  For
    even W the odd-part route also runs: the mod-2 coordinate of each unit is 1,
    the weights become functions on ``Z_{W/2}^*`` with unchanged means, and the
    constructive solver runs with ``delta' = 3 delta / 8`` and
    ``eta' = 5 eta / 4 + delta / 8``.
    """
    n = profile.n if n is None else n
    W = profile.W
    if not profile.all_means_hold:
        raise PreconditionError(f"mean conditions fail: {profile.mean_conditions}")
    if W > DIRECT_SEARCH_MAX:
        raise PreconditionError(f"direct search limited to W <= {DIRECT_SEARCH_MAX}")
    direct = direct_sum_witness(profile.weights, n)
    report = CongruenceWitnessReport(W, n, direct)
    if direct is not None and not check_sum_witness(direct, profile.weights):
        report.notes.append("direct witness failed re-verification")
        report.direct = None
    if odd_part and W % 2 == 0 and n % 2 == 1:
        dp, ep = 3 * profile.delta / 8, 5 * profile.eta / 4 + profile.delta / 8
        try:
            params = ThresholdParams(dp, ep)
            g = _odd_part_functions(profile)
            half = W // 2
            w = sum_witnesses(g, params, n % half, mode="constructive")[n % half]
            crt = CrtCoordinates(2, half)
            lifted = tuple(crt.join(1, t) for t in (w.a, w.b, w.c))
            report.odd_part = WitnessTriple(W, n % W, *lifted, w.values)
            if not check_sum_witness(report.odd_part, profile.weights):
                report.odd_part_note = "odd-part witness failed re-verification"
        except PreconditionError as exc:
            report.odd_part_note = f"odd-part route not applicable: {exc}"
    return report
