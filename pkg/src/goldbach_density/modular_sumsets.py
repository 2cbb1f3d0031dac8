"""Residue sets modulo square-free odd m: units, CRT, triple sumsets, covering checks."""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import CertificateError, ModulusError, PreconditionError

FIVE_EIGHTHS = Fraction(5, 8)


def factorize(m: int) -> list[tuple[int, int]]:
    """Trial division; ``[(p, e), ...]`` ascending."""
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def is_prime(p: int) -> bool:
    return p >= 2 and factorize(p) == [(p, 1)]


@dataclass(frozen=True)
class SquarefreeOddModulus:
    m: int
    prime_factors: tuple[int, ...]
    phi: int

    @property
    def is_squarefree_odd(self) -> bool:
        return self.m % 2 == 1

    @property
    def is_coprime_to_30(self) -> bool:
        return math.gcd(self.m, 30) == 1

    @property
    def largest_prime(self) -> int | None:
        return self.prime_factors[-1] if self.prime_factors else None


def analyze_modulus(m: int, allow_even: bool = False) -> SquarefreeOddModulus:
    """Factor ``m`` and insist it is square-free (and odd unless ``allow_even``)."""
    if m < 1:
        raise ModulusError(f"modulus must be positive, got {m}")
    if m % 2 == 0 and not allow_even:
        raise ModulusError(f"modulus {m} is even")
    primes = []
    for p, e in factorize(m):
        if e > 1:
            raise ModulusError(f"modulus {m} is divisible by {p}^2")
        primes.append(p)
    return SquarefreeOddModulus(m, tuple(primes), math.prod(p - 1 for p in primes))


def _as_modulus(mod) -> SquarefreeOddModulus:
    return mod if isinstance(mod, SquarefreeOddModulus) else analyze_modulus(int(mod))


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ResidueSet:
    """A subset of Z_m stored as a read-only boolean membership vector."""

    modulus: int
    members: np.ndarray = field(repr=False)

    def __post_init__(self):
        mem = np.array(self.members, dtype=bool).reshape(-1)
        if mem.shape != (self.modulus,):
            raise PreconditionError(f"membership vector must have length {self.modulus}")
        mem.setflags(write=False)
        object.__setattr__(self, "members", mem)

    @classmethod
    def from_elements(cls, m: int, elements: Iterable[int]) -> "ResidueSet":
        mem = np.zeros(m, dtype=bool)
        for x in elements:
            mem[int(x) % m] = True
        return cls(m, mem)

    @classmethod
    def full(cls, m: int) -> "ResidueSet":
        return cls(m, np.ones(m, dtype=bool))

    @property
    def cardinality(self) -> int:
        return int(self.members.sum())

    def __len__(self) -> int:
        return self.cardinality

    def elements(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.members))

    def __contains__(self, x: int) -> bool:
        return bool(self.members[int(x) % self.modulus])

    def __iter__(self):
        return iter(self.elements())

    def __eq__(self, other) -> bool:
        return (isinstance(other, ResidueSet) and other.modulus == self.modulus
                and bool(np.array_equal(other.members, self.members)))

    def __hash__(self):
        return hash((self.modulus, self.members.tobytes()))

    def __repr__(self) -> str:
        return f"ResidueSet({self.to_text()})"

    def shift(self, t: int) -> "ResidueSet":
        return ResidueSet(self.modulus, np.roll(self.members, t % self.modulus))

    def complement(self) -> "ResidueSet":
        return ResidueSet(self.modulus, ~self.members)

    def issubset(self, other: "ResidueSet") -> bool:
        _same_modulus(self, other)
        return bool(np.all(other.members[self.members]))

    def is_full(self) -> bool:
        return bool(self.members.all())

    def to_text(self) -> str:
        return f"m={self.modulus}; {{{','.join(map(str, self.elements()))}}}"

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> "ResidueSet":
        """Read ``m=15; {1,4,7}`` or a bare ``1,4,7`` when ``m`` is supplied."""
        text = text.strip()
        hit = re.fullmatch(r"m\s*=\s*(\d+)\s*;\s*\{([^}]*)\}", text)
        if hit:
            mod = int(hit.group(1))
            if m is not None and m != mod:
                raise PreconditionError(f"set is mod {mod}, expected mod {m}")
            body = hit.group(2)
        else:
            if m is None:
                raise PreconditionError(f"cannot parse residue set {text!r} without a modulus")
            mod, body = m, text.strip("{} ")
        elems = [int(tok) for tok in re.split(r"[,\s]+", body) if tok]
        if any(not 0 <= e < mod for e in elems):
            raise PreconditionError(f"residues must lie in [0, {mod})")
        return cls.from_elements(mod, elems)


def _same_modulus(*sets: ResidueSet) -> int:
    mods = {s.modulus for s in sets}
    if len(mods) != 1:
        raise PreconditionError(f"modulus mismatch: {sorted(mods)}")
    return mods.pop()


def units(mod) -> ResidueSet:
    """Residues coprime to m.  For m = 1 this is {0}, the whole trivial ring."""
    m = mod.m if isinstance(mod, SquarefreeOddModulus) else int(mod)
    return ResidueSet(m, np.array([math.gcd(x, m) == 1 for x in range(m)], dtype=bool))


def unit_list(m: int) -> list[int]:
    return [x for x in range(m) if math.gcd(x, m) == 1]


def _cyclic_sum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    m = len(a)
    conv = np.convolve(a.astype(np.int64), b.astype(np.int64))
    folded = conv[:m].copy()
    folded[: m - 1] += conv[m:]
    return folded > 0


def sumset(A: ResidueSet, B: ResidueSet) -> ResidueSet:
    m = _same_modulus(A, B)
    return ResidueSet(m, _cyclic_sum(A.members, B.members))


def sumset3(A: ResidueSet, B: ResidueSet, C: ResidueSet) -> ResidueSet:
    """``{a + b + c mod m}`` via two cyclic boolean convolutions."""
    m = _same_modulus(A, B, C)
    return ResidueSet(m, _cyclic_sum(_cyclic_sum(A.members, B.members), C.members))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrtCoordinates:
    """The isomorphism Z_m -> Z_m1 x Z_m2 for coprime m1, m2."""

    m1: int
    m2: int

    def __post_init__(self):
        if self.m1 < 1 or self.m2 < 1 or math.gcd(self.m1, self.m2) != 1:
            raise PreconditionError(f"CRT split needs coprime factors, got {self.m1}, {self.m2}")

    @property
    def m(self) -> int:
        return self.m1 * self.m2

    def split(self, x: int) -> tuple[int, int]:
        return x % self.m1, x % self.m2

    def join(self, u: int, v: int) -> int:
        m1, m2 = self.m1, self.m2
        # x = u + m1 * t with t = (v - u) / m1 mod m2
        t = ((v - u) * pow(m1, -1, m2)) % m2 if m2 > 1 else 0
        return (u + m1 * t) % self.m

    def forward(self) -> np.ndarray:
        x = np.arange(self.m)
        return np.stack([x % self.m1, x % self.m2], axis=1)

    def inverse(self) -> np.ndarray:
        """``table[u, v]`` is the residue mod m with coordinates (u, v)."""
        table = np.empty((self.m1, self.m2), dtype=np.int64)
        for x in range(self.m):
            table[x % self.m1, x % self.m2] = x
        return table


def crt_split(S: ResidueSet, m1: int, m2: int) -> np.ndarray:
    """Membership of S as an ``(m1, m2)`` boolean grid."""
    crt = CrtCoordinates(m1, m2)
    if S.modulus != crt.m:
        raise PreconditionError(f"set modulus {S.modulus} != {m1}*{m2}")
    grid = np.zeros((m1, m2), dtype=bool)
    x = np.flatnonzero(S.members)
    grid[x % m1, x % m2] = True
    return grid


def crt_join(grid: np.ndarray) -> ResidueSet:
    m1, m2 = grid.shape
    crt = CrtCoordinates(m1, m2)
    table = crt.inverse()
    mem = np.zeros(crt.m, dtype=bool)
    mem[table[grid]] = True
    return ResidueSet(crt.m, mem)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CauchyDavenportCheck:
    bound: int
    actual: int
    holds: bool


def cauchy_davenport_check(p: int, A: ResidueSet, B: ResidueSet, C: ResidueSet) -> CauchyDavenportCheck:
    """Compare ``|A+B+C|`` with ``min(|A|+|B|+|C|-2, p)`` in Z_p.

    Composite moduli are refused: the bound is only a theorem for primes.
    """
    if not is_prime(p):
        raise ModulusError(f"{p} is not prime")
    if _same_modulus(A, B, C) != p:
        raise PreconditionError(f"sets must live in Z_{p}")
    if min(len(A), len(B), len(C)) == 0:
        raise PreconditionError("sets must be nonempty")
    bound = min(len(A) + len(B) + len(C) - 2, p)
    actual = len(sumset3(A, B, C))
    return CauchyDavenportCheck(bound, actual, actual >= bound)


def _rotations(masks: np.ndarray, m: int) -> np.ndarray:
    """``out[t] = masks`` rotated by t inside an m-bit word (i.e. shifted by +t mod m)."""
    full = (1 << m) - 1
    out = np.empty((m, len(masks)), dtype=np.int64)
    for t in range(m):
        out[t] = ((masks << t) | (masks >> (m - t))) & full if t else masks
    return out


def _popcount(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    count = np.zeros(x.shape, dtype=np.int64)
    while np.any(x):
        count += (x & np.uint64(1)).astype(np.int64)
        x = x >> np.uint64(1)
    return count


def _mask_of(elements: Iterable[int]) -> int:
    return sum(1 << e for e in elements)


def _triple_sumset_masks(first: np.ndarray, second: np.ndarray, third: Sequence[int], m: int):
    """Yield ``(index into third, masks of first[i]+second[j]+third)`` over all (i, j).

    Pair sumsets are built by OR-ing rotations; then each third set ORs rotations
    of the pair masks.  Everything is bit arithmetic on int64 words (m <= 62).
    """
    rot_second = _rotations(second, m)                  # (m, |second|)
    pair = np.zeros((len(first), len(second)), dtype=np.int64)
    for i, a in enumerate(first):
        for t in range(m):
            if (int(a) >> t) & 1:
                pair[i] |= rot_second[t]
    pair = pair.reshape(-1)
    rot_pair = _rotations(pair, m)
    for k, c in enumerate(third):
        acc = np.zeros_like(pair)
        for t in range(m):
            if (int(c) >> t) & 1:
                acc |= rot_pair[t]
        yield k, acc


@dataclass
class ExhaustiveCDReport:
    p: int
    triples: int
    failures: int
    first_failure: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]] | None


def cauchy_davenport_exhaustive(p: int) -> ExhaustiveCDReport:
    """Check the bound for every triple of nonempty subsets of Z_p."""
    if not is_prime(p):
        raise ModulusError(f"{p} is not prime")
    if p > 13:
        raise PreconditionError("exhaustive Cauchy-Davenport limited to p <= 13")
    masks = np.arange(1, 1 << p, dtype=np.int64)
    sizes = _popcount(masks)
    failures, first = 0, None
    pair_sizes = (sizes[:, None] + sizes[None, :]).reshape(-1)
    for k, acc in _triple_sumset_masks(masks, masks, masks.tolist(), p):
        bound = np.minimum(pair_sizes + sizes[k] - 2, p)
        bad = _popcount(acc) < bound
        if bad.any():
            failures += int(bad.sum())
            if first is None:
                idx = int(np.argmax(bad))
                i, j = divmod(idx, len(masks))
                first = tuple(tuple(e for e in range(p) if (int(mk) >> e) & 1)
                              for mk in (masks[i], masks[j], masks[k]))
    n = len(masks)
    return ExhaustiveCDReport(p, n ** 3, failures, first)


# ---------------------------------------------------------------------------
# covering by three dense unit subsets


def density_threshold_ok(size: int, phi: int, strict: bool) -> bool:
    """``size > 5/8 phi`` (strict) or ``size >= 5/8 phi``, compared as integers."""
    return 8 * size > 5 * phi if strict else 8 * size >= 5 * phi


def _min_size(phi: int, strict: bool) -> int:
    k = 0
    while not density_threshold_ok(k, phi, strict):
        k += 1
    return k


@dataclass
class CoveringReport:
    mode: str
    modulus: int
    checked: int = 0
    failures: int = 0
    precondition_ok: bool = True
    covers: bool | None = None
    missing: tuple[int, ...] = ()
    witness: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]] | None = None
    worst_coverage: int | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.precondition_ok


def _check_cardinalities(phi: int, sizes: Sequence[int]) -> list[str]:
    problems = []
    if not density_threshold_ok(sizes[0], phi, strict=True):
        problems.append(f"|A1|={sizes[0]} is not > 5/8*phi={Fraction(5 * phi, 8)}")
    for i in (1, 2):
        if not density_threshold_ok(sizes[i], phi, strict=False):
            problems.append(f"|A{i + 1}|={sizes[i]} is not >= 5/8*phi={Fraction(5 * phi, 8)}")
    return problems


def _single(mod: SquarefreeOddModulus, sets: Sequence[ResidueSet], diagnostic: bool) -> CoveringReport:
    U = units(mod)
    for i, S in enumerate(sets):
        if S.modulus != mod.m or not S.issubset(U):
            raise PreconditionError(f"A{i + 1} is not a subset of the units mod {mod.m}")
    problems = _check_cardinalities(mod.phi, [len(S) for S in sets])
    if problems and not diagnostic:
        raise PreconditionError("; ".join(problems))
    total = sumset3(*sets)
    missing = total.complement().elements()
    rep = CoveringReport("single", mod.m, checked=1, precondition_ok=not problems,
                         covers=not missing, missing=missing,
                         witness=tuple(S.elements() for S in sets), worst_coverage=len(total))
    if missing and not problems:
        rep.failures = 1
    return rep


def _subsets_at_least(unit_elems: Sequence[int], k: int) -> list[int]:
    return [_mask_of(c) for r in range(k, len(unit_elems) + 1)
            for c in itertools.combinations(unit_elems, r)]


EXHAUSTIVE_PHI_CAP = 10


def _exhaustive(mod: SquarefreeOddModulus) -> CoveringReport:
    if mod.phi > EXHAUSTIVE_PHI_CAP:
        raise PreconditionError(f"exhaustive mode needs phi(m) <= {EXHAUSTIVE_PHI_CAP}, got {mod.phi}")
    m, phi = mod.m, mod.phi
    U = unit_list(m)
    firsts = np.array(_subsets_at_least(U, _min_size(phi, True)), dtype=np.int64)
    others = np.array(_subsets_at_least(U, _min_size(phi, False)), dtype=np.int64)
    full = (1 << m) - 1
    rep = CoveringReport("exhaustive", m, worst_coverage=m)
    for k, acc in _triple_sumset_masks(firsts, others, others.tolist(), m):
        rep.checked += len(acc)
        bad = acc != full
        if bad.any():
            rep.failures += int(bad.sum())
            if rep.witness is None:
                idx = int(np.argmax(bad))
                i, j = divmod(idx, len(others))
                rep.witness = tuple(tuple(e for e in range(m) if (int(mk) >> e) & 1)
                                    for mk in (firsts[i], others[j], others[k]))
                rep.missing = tuple(e for e in range(m) if not (int(acc[idx]) >> e) & 1)
            rep.worst_coverage = min(rep.worst_coverage, int(_popcount(acc).min()))
    rep.covers = rep.failures == 0
    return rep


def _random_admissible(U: list[int], m: int, phi: int, rng: np.random.Generator) -> list[ResidueSet]:
    sets = []
    for i in range(3):
        k = int(rng.integers(_min_size(phi, i == 0), phi + 1))
        chosen = rng.choice(U, size=k, replace=False)
        sets.append(ResidueSet.from_elements(m, chosen.tolist()))
    return sets


def _random(mod: SquarefreeOddModulus, seed: int, trials: int) -> CoveringReport:
    rng = np.random.default_rng(seed)
    U = unit_list(mod.m)
    rep = CoveringReport("random", mod.m, worst_coverage=mod.m)
    for _ in range(trials):
        sets = _random_admissible(U, mod.m, mod.phi, rng)
        total = sumset3(*sets)
        rep.checked += 1
        rep.worst_coverage = min(rep.worst_coverage, len(total))
        if not total.is_full():
            rep.failures += 1
            if rep.witness is None:
                rep.witness = tuple(S.elements() for S in sets)
                rep.missing = total.complement().elements()
    rep.covers = rep.failures == 0
    return rep


def _adversarial(mod: SquarefreeOddModulus, seed: int, budget: int) -> CoveringReport:
    """Swap-move local search minimising |A1+A2+A3| at the smallest admissible sizes."""
    rng = np.random.default_rng(seed)
    m, phi = mod.m, mod.phi
    U = unit_list(m)
    sizes = [_min_size(phi, True), _min_size(phi, False), _min_size(phi, False)]
    state = [set(rng.choice(U, size=k, replace=False).tolist()) for k in sizes]

    def coverage(st):
        return len(sumset3(*(ResidueSet.from_elements(m, s) for s in st)))

    cur = coverage(state)
    worst, worst_state = cur, [set(s) for s in state]
    rep = CoveringReport("adversarial", m)
    for step in range(budget):
        i = int(rng.integers(3))
        outside = [u for u in U if u not in state[i]]
        if not outside:
            continue
        drop = int(rng.choice(sorted(state[i])))
        add = int(rng.choice(outside))
        cand = [set(s) for s in state]
        cand[i].discard(drop)
        cand[i].add(add)
        val = coverage(cand)
        rep.checked += 1
        temp = 0.5 * (1 - step / budget)
        if val <= cur or (temp > 0 and rng.random() < np.exp((cur - val) / temp)):
            state, cur = cand, val
            if val < worst:
                worst, worst_state = val, [set(s) for s in cand]
    rep.worst_coverage = worst
    rep.witness = tuple(tuple(sorted(s)) for s in worst_state)
    total = sumset3(*(ResidueSet.from_elements(m, s) for s in worst_state))
    rep.missing = total.complement().elements()
    rep.covers = worst == m
    rep.failures = 0 if rep.covers else 1
    return rep


def verify_covering(mod, sets: Sequence[ResidueSet] | None = None, mode: str = "single", *,
                    seed: int = 0, trials: int = 1000, budget: int = 1000,
                    diagnostic: bool = False) -> CoveringReport:
    """Check that three dense unit subsets cover Z_m.

    Modes: ``single`` (the given sets), ``exhaustive`` (every admissible triple,
    phi(m) <= 10), ``random`` (``trials`` samples) and ``adversarial`` (local
    search for the worst triple within ``budget`` moves).
    """
    mod = _as_modulus(mod)
    if mode == "single":
        if sets is None or len(sets) != 3:
            raise PreconditionError("single mode needs three sets")
        return _single(mod, sets, diagnostic)
    if mode == "exhaustive":
        return _exhaustive(mod)
    if mode == "random":
        return _random(mod, seed, trials)
    if mode == "adversarial":
        return _adversarial(mod, seed, budget)
    raise PreconditionError(f"unknown mode {mode!r}")


MOD15_CLASSES = (1, 4, 7, 11, 13)


@dataclass(frozen=True)
class Mod15Counterexample:
    S: ResidueSet
    missing: ResidueSet
    density: Fraction


def counterexample_mod15() -> Mod15Counterexample:
    """Five of the eight units mod 15 whose triple sumset misses 2."""
    S = ResidueSet.from_elements(15, MOD15_CLASSES)
    missing = sumset3(S, S, S).complement()
    density = Fraction(len(S), len(units(15)))
    if 2 not in missing or density != FIVE_EIGHTHS:
        raise CertificateError(f"mod-15 construction broken: missing={missing}, density={density}")
    return Mod15Counterexample(S, missing, density)
