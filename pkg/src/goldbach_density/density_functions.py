"""Functions on unit groups and congruence witnesses for dense weighted triples.

Three procedures, each with a brute-force scan and a constructive mode that
follows the inductive argument:

* :func:`margin_witnesses` -- for ``(m, 30) = 1`` and dense ``f1, f2, f3``, a unit
  triple ``a + b + c = x`` with ``h(f1(a), f2(b), f3(c)) > 0``.  Constructively:
  peel the largest prime ``p``, average over the ``Z_p`` fibre, recurse, then in
  the fibre over the lower witness use decreasing rearrangements, the sequence
  inequality, level sets and Cauchy-Davenport to pick the ``Z_p`` coordinates.
* :func:`mod15_witnesses` -- on ``Z_15^*`` with ``F1F2 + F2F3 + F3F1 > 5(F1+F2+F3)``
  a triple with positive product and value sum above 3/2 (exhaustive scan).
* :func:`sum_witnesses` -- any square-free odd ``m``: positive product and value
  sum above 3/2, combining the two above through ``Z_m = Z_{m/15} x Z_15``.

All arithmetic is exact.  Internally the three functions share one integer
lattice ``value = num / denom`` so scans vectorise over numpy integer arrays.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import CertificateError, PreconditionError
from .exact import as_fraction, format_fraction, to_lattice
from .modular_sumsets import (CrtCoordinates, ResidueSet, analyze_modulus,
                              cauchy_davenport_check, unit_list)
from .seq_inequality import FIVE_EIGHTHS, TripleSequences, check_pointwise_hypothesis


def h_margin(x, y, z) -> Fraction:
    """``xy + yz + zx - 5/8 (x + y + z)``."""
    x, y, z = as_fraction(x), as_fraction(y), as_fraction(z)
    return x * y + y * z + z * x - FIVE_EIGHTHS * (x + y + z)


@dataclass(frozen=True, eq=False)
class UnitFunction:
    """A map ``Z_m^* -> [0, 1]`` with exact rational values.

    ``values`` is aligned with the ascending unit list.  Even square-free moduli
    are accepted so that weights modulo a primorial fit the same type.
    ``defaulted`` lists units that a parsed file left unspecified (set to 0).
    """

    modulus: int
    values: tuple[Fraction, ...]
    defaulted: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        analyze_modulus(self.modulus, allow_even=True)
        vals = tuple(as_fraction(v) for v in self.values)
        if len(vals) != len(self.units):
            raise PreconditionError(f"expected {len(self.units)} values for m={self.modulus}, got {len(vals)}")
        for u, v in zip(self.units, vals):
            if not 0 <= v <= 1:
                raise PreconditionError(f"value at unit {u} is {v}, outside [0, 1]")
        object.__setattr__(self, "values", vals)

    @property
    def units(self) -> tuple[int, ...]:
        return _units(self.modulus)

    @property
    def phi(self) -> int:
        return len(self.values)

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    @property
    def mean(self) -> Fraction:
        return self.total / self.phi

    def __call__(self, u: int) -> Fraction:
        return self.as_dict()[u % self.modulus]

    def as_dict(self) -> dict[int, Fraction]:
        return dict(zip(self.units, self.values))

    def __eq__(self, other):
        return isinstance(other, UnitFunction) and (self.modulus, self.values) == (other.modulus, other.values)

    def __hash__(self):
        return hash((self.modulus, self.values))

    @classmethod
    def constant(cls, m: int, value) -> "UnitFunction":
        return cls(m, (as_fraction(value),) * len(_units(m)))

    @classmethod
    def indicator(cls, m: int, members: Iterable[int]) -> "UnitFunction":
        s = {x % m for x in members}
        return cls(m, tuple(Fraction(int(u in s)) for u in _units(m)))

    @classmethod
    def from_mapping(cls, m: int, mapping: Mapping[int, object]) -> "UnitFunction":
        units = _units(m)
        extra = set(mapping) - set(units)
        if extra:
            raise PreconditionError(f"non-units in domain: {sorted(extra)}")
        missing = tuple(u for u in units if u not in mapping)
        return cls(m, tuple(as_fraction(mapping.get(u, 0)) for u in units), missing)

    def to_text(self) -> str:
        lines = [f"m={self.modulus}"]
        lines += [f"u {u} {format_fraction(v)}" for u, v in zip(self.units, self.values)]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "UnitFunction":
        m, mapping = None, {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            hit = re.fullmatch(r"m\s*=\s*(\d+)", line)
            if hit:
                m = int(hit.group(1))
                continue
            parts = line.split()
            if len(parts) != 3 or parts[0] != "u":
                raise PreconditionError(f"bad line {raw!r}; expected 'u <unit> <p/q>'")
            if m is None:
                raise PreconditionError("modulus line 'm=<int>' must come first")
            u = int(parts[1])
            if u in mapping:
                raise PreconditionError(f"unit {u} given twice")
            mapping[u] = as_fraction(parts[2])
        if m is None:
            raise PreconditionError("missing 'm=<int>' line")
        return cls.from_mapping(m, mapping)


_UNIT_CACHE: dict[int, tuple[int, ...]] = {}


def _units(m: int) -> tuple[int, ...]:
    if m not in _UNIT_CACHE:
        _UNIT_CACHE[m] = tuple(unit_list(m))
    return _UNIT_CACHE[m]


@dataclass(frozen=True)
class ThresholdParams:
    """Density slack for the first function (``delta``) and the other two (``eta``)."""

    delta: Fraction
    eta: Fraction

    def __post_init__(self):
        d, e = as_fraction(self.delta), as_fraction(self.eta)
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "eta", e)
        if not 0 < d < Fraction(5, 32):
            raise PreconditionError(f"delta={d} must lie in (0, 5/32)")
        if not 0 < e < 2 * d / 5:
            raise PreconditionError(f"eta={e} must lie in (0, 2*delta/5) = (0, {2 * d / 5})")

    def thresholds(self) -> tuple[Fraction, Fraction, Fraction]:
        return FIVE_EIGHTHS + self.delta, FIVE_EIGHTHS - self.eta, FIVE_EIGHTHS - self.eta


@dataclass(frozen=True)
class WitnessTriple:
    modulus: int
    target: int
    a: int
    b: int
    c: int
    values: tuple[Fraction, Fraction, Fraction]

    @property
    def h_margin(self) -> Fraction:
        return h_margin(*self.values)

    @property
    def product(self) -> Fraction:
        x, y, z = self.values
        return x * y * z

    @property
    def value_sum(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def to_record(self) -> dict:
        return {"m": self.modulus, "target": self.target, "triple": [self.a, self.b, self.c],
                "values": [format_fraction(v) for v in self.values],
                "h_margin": format_fraction(self.h_margin),
                "value_sum": format_fraction(self.value_sum)}


def witness_congruent(w: WitnessTriple) -> bool:
    m = w.modulus
    return (all(math.gcd(t, m) == 1 for t in (w.a, w.b, w.c))
            and (w.a + w.b + w.c - w.target) % m == 0)


def check_margin_witness(w: WitnessTriple, fs: Sequence[UnitFunction]) -> bool:
    """Congruence, values matching ``fs``, and ``h > 0``."""
    return (witness_congruent(w) and w.values == tuple(f(t) for f, t in zip(fs, (w.a, w.b, w.c)))
            and w.h_margin > 0)


def check_sum_witness(w: WitnessTriple, fs: Sequence[UnitFunction]) -> bool:
    """Congruence, values matching ``fs``, positive product and value sum above 3/2."""
    return (witness_congruent(w) and w.values == tuple(f(t) for f, t in zip(fs, (w.a, w.b, w.c)))
            and w.product > 0 and w.value_sum > Fraction(3, 2))


# ---------------------------------------------------------------------------
# elementary operations


def decreasing_rearrangement(f: UnitFunction) -> tuple[Fraction, ...]:
    """Values sorted nonincreasing; ties keep ascending unit order."""
    order = sorted(range(f.phi), key=lambda i: (-f.values[i], f.units[i]))
    return tuple(f.values[i] for i in order)


def level_set(f: UnitFunction, threshold) -> ResidueSet:
    t = as_fraction(threshold)
    return ResidueSet.from_elements(f.modulus, [u for u, v in zip(f.units, f.values) if v >= t])


def _check_unitary(m: int, q: int) -> int:
    if q < 1 or m % q or math.gcd(q, m // q) != 1:
        raise PreconditionError(f"{q} is not a unitary divisor of {m}")
    return m // q


def marginalize(f: UnitFunction, q: int) -> UnitFunction:
    """Average over the ``Z_q^*`` coordinate: a function on ``Z_{m/q}^*``."""
    rest = _check_unitary(f.modulus, q)
    crt = CrtCoordinates(rest, q)
    vals = f.as_dict()
    uq = _units(q)
    return UnitFunction(rest, tuple(sum((vals[crt.join(x, y)] for y in uq), Fraction(0)) / len(uq)
                                    for x in _units(rest)))


def pullback(f: UnitFunction, big: int) -> UnitFunction:
    """``F(y) = f(y mod m)`` on ``Z_big^*`` for ``m | big``; means are preserved."""
    m = f.modulus
    if big % m:
        raise PreconditionError(f"{m} does not divide {big}")
    vals = f.as_dict()
    return UnitFunction(big, tuple(vals[y % m] for y in _units(big)))


def check_density(fs: Sequence[UnitFunction], params: ThresholdParams) -> None:
    """Raise unless the means strictly exceed ``5/8 + delta, 5/8 - eta, 5/8 - eta``."""
    if len(fs) != 3:
        raise PreconditionError("need exactly three functions")
    mods = {f.modulus for f in fs}
    if len(mods) != 1:
        raise PreconditionError(f"functions live on different moduli {sorted(mods)}")
    problems = [f"mean(f{i + 1})={f.mean} is not > {t}"
                for i, (f, t) in enumerate(zip(fs, params.thresholds())) if not f.mean > t]
    if problems:
        raise PreconditionError("; ".join(problems))


# ---------------------------------------------------------------------------
# integer lattice shared by the three functions


@dataclass
class _Level:
    """Three functions on Z_m as integer arrays indexed by residue (0 off the units)."""

    m: int
    vals: tuple[np.ndarray, np.ndarray, np.ndarray]
    denom: int

    @classmethod
    def from_functions(cls, fs: Sequence[UnitFunction]) -> "_Level":
        m = fs[0].modulus
        flat = [v for f in fs for v in f.values]
        # marginal sums multiply the denominator by at most phi(m)
        nums, d = to_lattice(flat, growth=64 * max(1, len(fs[0].values)) ** 2)
        phi = len(fs[0].values)
        units = np.array(_units(m), dtype=np.int64)
        arrays = []
        for i in range(3):
            arr = np.zeros(m, dtype=nums.dtype)
            arr[units] = nums[i * phi:(i + 1) * phi]
            arrays.append(arr)
        return cls(m, tuple(arrays), d)

    def value(self, i: int, r: int) -> Fraction:
        return Fraction(int(self.vals[i][r]), self.denom)

    def h_scaled(self, x, y, z):
        """``8 D^2 h`` evaluated on lattice numerators (same sign as h)."""
        return 8 * (x * y + y * z + z * x) - 5 * self.denom * (x + y + z)

    def marginal(self, q: int) -> "_Level":
        rest = _check_unitary(self.m, q)
        table = CrtCoordinates(rest, q).inverse()[:, list(_units(q))]
        ur = list(_units(rest))
        out = []
        for arr in self.vals:
            sums = np.zeros(rest, dtype=arr.dtype)
            sums[ur] = arr[table[ur]].sum(axis=1)
            out.append(sums)
        return _Level(rest, tuple(out), self.denom * len(_units(q)))


def _to_witness(level_fs: Sequence[UnitFunction], m: int, target: int, triple) -> WitnessTriple:
    a, b, c = triple
    return WitnessTriple(m, target, a, b, c, tuple(f(t) for f, t in zip(level_fs, (a, b, c))))


# ---------------------------------------------------------------------------
# brute force: scan (target, a, b); c is determined


def _brute_scan(level: _Level, score_fn, targets: Sequence[int] | None = None
                ) -> dict[int, tuple[int, int, int]]:
    """For each target (default: all of Z_m), the valid unit triple maximising the score.

    Ties go to the lexicographically smallest ``(a, b, c)``: ``c`` is fixed by
    ``(target, a, b)`` and argmax returns the first maximum in ``(a, b)`` order.
    """
    m = level.m
    U = np.array(_units(m), dtype=np.int64)
    is_unit = np.zeros(m, dtype=bool)
    is_unit[U] = True
    tg = np.arange(m) if targets is None else np.array(sorted({t % m for t in targets}), dtype=np.int64)
    x = tg[:, None, None]
    c = (x - U[None, :, None] - U[None, None, :]) % m
    f1, f2, f3 = level.vals
    score, valid = score_fn(f1[U][None, :, None], f2[U][None, None, :], f3[c])
    valid = valid & is_unit[c]
    phi = len(U)
    rows = len(tg)
    flat_valid = valid.reshape(rows, phi * phi)
    flat = np.where(flat_valid, np.broadcast_to(score, valid.shape).reshape(rows, phi * phi), 0)
    if flat.dtype == object:
        floor = min(int(v) for v in flat.reshape(-1)) - 1
    else:
        floor = flat.min() - 1
    flat = np.where(flat_valid, flat, floor)
    best = np.argmax(flat, axis=1)
    out = {}
    for row, t in enumerate(tg.tolist()):
        idx = int(best[row])
        if flat_valid[row, idx]:
            i, j = divmod(idx, phi)
            out[t] = (int(U[i]), int(U[j]), int(c[row, i, j]))
    return out


def _margin_score(level: _Level):
    def fn(x, y, z):
        s = level.h_scaled(x, y, z)
        return s, np.asarray(s > 0, dtype=bool)
    return fn


def _sum_score(level: _Level):
    def fn(x, y, z):
        s = x + y + z
        ok = np.asarray((x > 0) & (y > 0) & (z > 0) & (2 * s > 3 * level.denom), dtype=bool)
        return s, ok
    return fn


# ---------------------------------------------------------------------------
# constructive: sequences, level sets and Cauchy-Davenport in each prime fibre


def _fibre_choices(level: _Level, p: int, lower_triple, table, mp: int) -> dict[int, tuple[int, int, int]]:
    """For one lower witness, pick ``(u, v, w)`` in ``Z_p^*`` for every ``y`` in ``Z_p``."""
    up = list(_units(p))
    fibres = [level.vals[i][table[lower_triple[i], up]] for i in range(3)]
    seqs = []
    for fib in fibres:
        order = sorted(range(p - 1), key=lambda t: (-int(fib[t]), up[t]))
        seqs.append(tuple(Fraction(int(fib[t]), level.denom) for t in order))
    report = check_pointwise_hypothesis(TripleSequences(*seqs))
    if report.holds:
        raise CertificateError(
            f"fibre over {lower_triple} mod {mp}: sequences satisfy the pointwise bound although "
            f"their averages {[str(sum(s) / len(s)) for s in seqs]} have positive margin")
    v = report.first_violation
    cuts = (seqs[0][v.i], seqs[1][v.j], seqs[2][v.k])
    level_sets = []
    for fib, cut in zip(fibres, cuts):
        level_sets.append([y for y, val in zip(up, fib) if Fraction(int(val), level.denom) >= cut])
    sizes = [len(s) for s in level_sets]
    if sum(sizes) < p + 2:
        raise CertificateError(f"level sets {level_sets} mod {p} have total size {sum(sizes)} < {p + 2}")
    cd = cauchy_davenport_check(p, *(ResidueSet.from_elements(p, s) for s in level_sets))
    if cd.actual != p:
        raise CertificateError(f"level sets {level_sets} mod {p} do not cover Z_{p}: {cd}")

    I, J, K = (np.array(s, dtype=np.int64) for s in level_sets)
    val_of = [dict(zip(up, fib)) for fib in fibres]
    vi = np.array([val_of[0][u] for u in I.tolist()], dtype=fibres[0].dtype)
    vj = np.array([val_of[1][u] for u in J.tolist()], dtype=fibres[0].dtype)
    vk = np.array([val_of[2][u] for u in K.tolist()], dtype=fibres[0].dtype)
    score = level.h_scaled(vi[:, None, None], vj[None, :, None], vk[None, None, :])
    total = ((I[:, None, None] + J[None, :, None] + K[None, None, :]) % p).reshape(-1)
    score = score.reshape(-1)
    shape = (len(I), len(J), len(K))
    choices = {}
    for y in range(p):
        # flat order is lexicographic in (u, v, w); argmax keeps the first maximum
        idx = np.flatnonzero(total == y)
        best = int(idx[np.argmax(score[idx])])
        if not score[best] > 0:
            raise CertificateError(f"fibre choice for {y} mod {p} has non-positive margin")
        ii, jj, kk = np.unravel_index(best, shape)
        choices[y] = (int(I[ii]), int(J[jj]), int(K[kk]))
    return choices


def _margin_constructive(level: _Level) -> dict[int, tuple[int, int, int]]:
    m = level.m
    if m == 1:
        x, y, z = (arr[0] for arr in level.vals)
        if not level.h_scaled(x, y, z) > 0:
            raise CertificateError(
                f"averages {[str(level.value(i, 0)) for i in range(3)]} have non-positive margin")
        return {0: (0, 0, 0)}
    p = analyze_modulus(m).largest_prime
    rest = m // p
    lower = _margin_constructive(level.marginal(p))
    crt = CrtCoordinates(rest, p)
    table = crt.inverse()
    per_lower: dict[tuple[int, int, int], dict] = {}
    out = {}
    for x in range(m):
        xr, xp = crt.split(x)
        trip = lower[xr]
        if trip not in per_lower:
            per_lower[trip] = _fibre_choices(level, p, trip, table, m)
        u, v, w = per_lower[trip][xp]
        out[x] = (int(table[trip[0], u]), int(table[trip[1], v]), int(table[trip[2], w]))
    return out


def _mod15_choices(level: _Level, lower_triple, table) -> dict[int, tuple[int, int, int]]:
    """The Z_15 step: fibres over ``lower_triple``, F-hypothesis, exhaustive scan."""
    u15 = list(_units(15))
    fib = [level.vals[i][table[lower_triple[i], u15]] for i in range(3)]
    sub = _Level(15, tuple(_spread(15, u15, f) for f in fib), level.denom)
    return _mod15_scan(sub, context=f" over {lower_triple}")


def _spread(m: int, units: Sequence[int], vals) -> np.ndarray:
    arr = np.zeros(m, dtype=np.asarray(vals).dtype)
    arr[list(units)] = vals
    return arr


def _mod15_scan(level: _Level, context: str = "") -> dict[int, tuple[int, int, int]]:
    F = [int(arr.sum()) for arr in level.vals]
    lhs = F[0] * F[1] + F[1] * F[2] + F[2] * F[0]
    rhs = 5 * level.denom * sum(F)
    if not lhs > rhs:
        raise PreconditionError(
            f"sums F = {[str(Fraction(v, level.denom)) for v in F]}{context} fail "
            f"F1F2+F2F3+F3F1 > 5(F1+F2+F3): {Fraction(lhs, level.denom ** 2)} <= "
            f"{Fraction(rhs, level.denom ** 2)}")
    found = _brute_scan(level, _sum_score(level))
    missing = [v for v in range(15) if v not in found]
    if missing:
        raise CertificateError(f"no mod-15 witness{context} for targets {missing}")
    return found


def _sum_constructive(level: _Level) -> dict[int, tuple[int, int, int]]:
    m = level.m
    if m % 15:
        return _margin_constructive(level)
    rest = m // 15
    lower = _margin_constructive(level.marginal(15))
    crt = CrtCoordinates(rest, 15)
    table = crt.inverse()
    per_lower: dict = {}
    out = {}
    for x in range(m):
        xr, x15 = crt.split(x)
        trip = lower[xr]
        if trip not in per_lower:
            try:
                per_lower[trip] = _mod15_choices(level, trip, table)
            except PreconditionError as exc:
                raise CertificateError(f"fibre hypothesis failed: {exc}") from exc
        b1, b2, b3 = per_lower[trip][x15]
        out[x] = (int(table[trip[0], b1]), int(table[trip[1], b2]), int(table[trip[2], b3]))
    return out


# ---------------------------------------------------------------------------
# public entry points


MODES = ("brute", "constructive")


def _targets(m: int, x: int | None) -> list[int]:
    return list(range(m)) if x is None else [x % m]


def margin_witnesses(fs: Sequence[UnitFunction], params: ThresholdParams, x: int | None = None,
                     mode: str = "constructive", min_prime: int = 7) -> dict[int, WitnessTriple]:
    """Witnesses with ``h > 0`` and ``a + b + c = x``; every target when ``x`` is None.

    Requires ``(m, 30) = 1``; ``min_prime=11`` restricts to moduli whose prime
    factors are all at least 11 for comparison with the older base case.
    """
    check_density(fs, params)
    mod = analyze_modulus(fs[0].modulus)
    if not mod.is_coprime_to_30:
        raise PreconditionError(f"m={mod.m} shares a factor with 30")
    small = [p for p in mod.prime_factors if p < min_prime]
    if small:
        raise PreconditionError(f"prime factors {small} are below {min_prime}")
    level = _Level.from_functions(fs)
    if mode == "brute":
        found = _brute_scan(level, _margin_score(level), None if x is None else [x])
    elif mode == "constructive":
        found = _margin_constructive(level)
    else:
        raise PreconditionError(f"unknown mode {mode!r}")
    out = {t: _to_witness(fs, mod.m, t, found[t]) for t in _targets(mod.m, x) if t in found}
    if mode == "constructive":
        for w in out.values():
            if not check_margin_witness(w, fs):
                raise CertificateError(f"constructive witness fails re-verification: {w}")
    return out


def mod15_witnesses(fs: Sequence[UnitFunction], v: int | None = None) -> dict[int, WitnessTriple]:
    """On ``Z_15^*``: positive product and value sum above 3/2 for every (or one) target."""
    if any(f.modulus != 15 for f in fs) or len(fs) != 3:
        raise PreconditionError("need three functions on Z_15^*")
    found = _mod15_scan(_Level.from_functions(fs))
    return {t: _to_witness(fs, 15, t, found[t]) for t in _targets(15, v)}


def sum_witnesses(fs: Sequence[UnitFunction], params: ThresholdParams, x: int | None = None,
                  mode: str = "constructive") -> dict[int, WitnessTriple]:
    """Witnesses with ``f1(a) f2(b) f3(c) > 0`` and ``f1(a) + f2(b) + f3(c) > 3/2``.

    Constructive routes: ``15 | m`` splits off ``Z_15``; ``(m, 30) = 1`` uses the
    margin witness directly (``h > 0`` already forces both conclusions); otherwise
    the functions are pulled back to ``lcm(m, 15)`` and the witness reduced mod m.
    """
    check_density(fs, params)
    mod = analyze_modulus(fs[0].modulus)
    m = mod.m
    if mode == "brute":
        level = _Level.from_functions(fs)
        found = _brute_scan(level, _sum_score(level), None if x is None else [x])
    elif mode == "constructive":
        if m % 15 == 0 or mod.is_coprime_to_30:
            found = _sum_constructive(_Level.from_functions(fs))
        else:
            big = m * 15 // math.gcd(m, 15)
            lifted = _sum_constructive(_Level.from_functions([pullback(f, big) for f in fs]))
            found = {t: tuple(r % m for r in lifted[t]) for t in range(m)}
    else:
        raise PreconditionError(f"unknown mode {mode!r}")
    out = {t: _to_witness(fs, m, t, found[t]) for t in _targets(m, x) if t in found}
    if mode == "constructive":
        for w in out.values():
            if not check_sum_witness(w, fs):
                raise CertificateError(f"constructive witness fails re-verification: {w}")
    return out


def direct_sum_witness(fs: Sequence[UnitFunction], x: int) -> WitnessTriple | None:
    """Exhaustive search for one target on any square-free modulus, even ones included.

    No density precondition: the caller decides what a missing witness means.
    """
    m = fs[0].modulus
    if any(f.modulus != m for f in fs) or len(fs) != 3:
        raise PreconditionError("need three functions on the same modulus")
    level = _Level.from_functions(fs)
    found = _brute_scan(level, _sum_score(level), [x])
    t = x % m
    return _to_witness(fs, m, t, found[t]) if t in found else None


# ---------------------------------------------------------------------------
# random admissible inputs


def random_dense_functions(m: int, params: ThresholdParams, rng: np.random.Generator,
                           grid: int = 24, zero_rate: float | None = None) -> list[UnitFunction]:
    """Three random ``k/grid``-valued functions whose means clear the thresholds.

    Values start as a mix of zeros and uniform grid points; randomly chosen
    entries are then raised one grid step at a time until the mean is strictly
    above its threshold.
    """
    units = _units(m)
    phi = len(units)
    out = []
    for thr in params.thresholds():
        rate = rng.uniform(0.0, 0.4) if zero_rate is None else zero_rate
        nums = np.where(rng.random(phi) < rate, 0, rng.integers(0, grid + 1, size=phi))
        need = math.floor(thr * phi * grid) + 1       # smallest integer sum strictly above
        while nums.sum() < need:
            room = np.flatnonzero(nums < grid)
            nums[rng.choice(room)] += 1
        out.append(UnitFunction(m, tuple(Fraction(int(k), grid) for k in nums)))
    return out
