"""The three-sequence inequality, executed in exact arithmetic.

For three nonincreasing sequences ``a, b, c`` of length ``n`` (even) with
entries in ``[0, 1]`` the pointwise hypothesis is

    a_i b_j + b_j c_k + c_k a_i <= 5/8 (a_i + b_j + c_k)   whenever i+j+k >= n,

and the conclusion is the same inequality for the averages ``A, B, C``.  The
proof works in the shifted variables ``x = 16/5 a - 1`` where the hypothesis
reads ``x_i y_j + y_j z_k + z_k x_i <= 3``; :func:`verify_proof_inequalities`
re-evaluates every intermediate inequality of that argument on a concrete
instance, each gated by the case condition under which it is claimed.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import PreconditionError
from .exact import as_fraction, format_fraction, to_lattice

FIVE_EIGHTHS = Fraction(5, 8)
SCALE = Fraction(16, 5)
X_MIN, X_MAX = Fraction(-1), Fraction(11, 5)


def _check_monotone(name: str, seq: Sequence[Fraction]) -> None:
    for i in range(len(seq) - 1):
        if seq[i] < seq[i + 1]:
            raise PreconditionError(
                f"sequence {name} increases at index {i}: {seq[i]} < {seq[i + 1]}")


@dataclass(frozen=True)
class TripleSequences:
    """Three nonincreasing rational sequences in [0, 1] of common even length."""

    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, tuple(as_fraction(v) for v in getattr(self, name)))
        n = len(self.a)
        if len(self.b) != n or len(self.c) != n:
            raise PreconditionError("sequences must share one length")
        if n < 2 or n % 2:
            raise PreconditionError(f"length must be even and >= 2, got {n}")
        for name in "abc":
            seq = getattr(self, name)
            if any(v < 0 or v > 1 for v in seq):
                raise PreconditionError(f"sequence {name} leaves [0, 1]")
            _check_monotone(name, seq)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def in_guaranteed_range(self) -> bool:
        return self.n >= 6

    def averages(self) -> tuple[Fraction, Fraction, Fraction]:
        n = self.n
        return sum(self.a, Fraction(0)) / n, sum(self.b, Fraction(0)) / n, sum(self.c, Fraction(0)) / n

    @classmethod
    def constant(cls, n: int, a, b=None, c=None) -> "TripleSequences":
        b = a if b is None else b
        c = b if c is None else c
        return cls((a,) * n, (b,) * n, (c,) * n)

    def to_text(self) -> str:
        lines = [f"n={self.n}"]
        for name in "abc":
            lines.append(f"{name}: " + " ".join(format_fraction(v) for v in getattr(self, name)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TripleSequences":
        n = None
        rows: dict[str, list[Fraction]] = {}
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("n="):
                n = int(line[2:])
                continue
            key, sep, rest = line.partition(":")
            key = key.strip()
            if not sep or key not in ("a", "b", "c"):
                raise PreconditionError(f"unrecognised instance line: {raw!r}")
            rows[key] = [Fraction(tok) for tok in rest.split()]
        if n is None or set(rows) != {"a", "b", "c"}:
            raise PreconditionError("instance needs an n= header and a:, b:, c: rows")
        seqs = cls(rows["a"], rows["b"], rows["c"])
        if seqs.n != n:
            raise PreconditionError(f"header says n={n} but rows have length {seqs.n}")
        return seqs


@dataclass(frozen=True)
class TransformedSequences:
    """Image of :class:`TripleSequences` under ``v -> 16/5 v - 1``."""

    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    z: tuple[Fraction, ...]

    def __post_init__(self):
        for name in "xyz":
            object.__setattr__(self, name, tuple(as_fraction(v) for v in getattr(self, name)))
        n = len(self.x)
        if len(self.y) != n or len(self.z) != n or n < 2 or n % 2:
            raise PreconditionError("transformed sequences need a common even length")
        for name in "xyz":
            seq = getattr(self, name)
            if any(v < X_MIN or v > X_MAX for v in seq):
                raise PreconditionError(f"sequence {name} leaves [-1, 11/5]")
            _check_monotone(name, seq)

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def m(self) -> int:
        return self.n // 2


def transform_to_xyz(seqs: TripleSequences) -> TransformedSequences:
    return TransformedSequences(*(tuple(SCALE * v - 1 for v in getattr(seqs, k)) for k in "abc"))


def inverse_transform(t: TransformedSequences) -> TripleSequences:
    return TripleSequences(*(tuple((v + 1) / SCALE for v in getattr(t, k)) for k in "xyz"))


# ---------------------------------------------------------------------------
# hypothesis / conclusion


@lru_cache(maxsize=64)
def admissible_triples(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index triples with ``i + j + k >= n``, in lexicographic order."""
    i, j, k = np.indices((n, n, n)).reshape(3, -1)
    keep = i + j + k >= n
    out = tuple(np.ascontiguousarray(v[keep]) for v in (i, j, k))
    for v in out:
        v.setflags(write=False)
    return out


def pair_form(x, y, z):
    return x * y + y * z + z * x


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    k: int
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class HypothesisReport:
    holds: bool
    first_violation: Violation | None
    scanned: int


def check_pointwise_hypothesis(seqs: TripleSequences) -> HypothesisReport:
    """Scan every triple with ``i+j+k >= n``; report the lexicographically first failure."""
    n = seqs.n
    nums, d = to_lattice(seqs.a + seqs.b + seqs.c, growth=64)
    A, B, C = nums[:n], nums[n:2 * n], nums[2 * n:]
    I, J, K = admissible_triples(n)
    ai, bj, ck = A[I], B[J], C[K]
    bad = 8 * (ai * bj + bj * ck + ck * ai) > 5 * d * (ai + bj + ck)
    bad = np.asarray(bad, dtype=bool)
    if not bad.any():
        return HypothesisReport(True, None, len(I))
    t = int(np.argmax(bad))
    i, j, k = int(I[t]), int(J[t]), int(K[t])
    x, y, z = seqs.a[i], seqs.b[j], seqs.c[k]
    return HypothesisReport(False, Violation(i, j, k, pair_form(x, y, z), FIVE_EIGHTHS * (x + y + z)),
                            len(I))


def check_average_conclusion(seqs: TripleSequences) -> tuple[bool, Fraction]:
    """Return ``(margin >= 0, margin)`` with ``margin = 5/8 (A+B+C) - (AB+BC+CA)``."""
    A, B, C = seqs.averages()
    margin = FIVE_EIGHTHS * (A + B + C) - pair_form(A, B, C)
    return margin >= 0, margin


class Status(str, enum.Enum):
    HYPOTHESIS_FAILS = "HYPOTHESIS_FAILS"
    CONFIRMED = "CONFIRMED"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"


@dataclass(frozen=True)
class Verdict:
    status: Status
    hypothesis: HypothesisReport
    margin: Fraction
    instance: TripleSequences

    def to_record(self) -> dict:
        rec = {
            "status": self.status.value,
            "margin": format_fraction(self.margin),
            "scanned": self.hypothesis.scanned,
            "in_guaranteed_range": self.instance.in_guaranteed_range,
        }
        v = self.hypothesis.first_violation
        if v is not None:
            rec["witness"] = {"triple": [v.i, v.j, v.k], "lhs": format_fraction(v.lhs),
                              "rhs": format_fraction(v.rhs)}
        if self.status is Status.COUNTEREXAMPLE:
            rec["instance"] = self.instance.to_text()
        return rec


def verify_instance(seqs: TripleSequences) -> Verdict:
    """Classify one instance: hypothesis fails, conclusion confirmed, or counterexample."""
    report = check_pointwise_hypothesis(seqs)
    _, margin = check_average_conclusion(seqs)
    if not report.holds:
        status = Status.HYPOTHESIS_FAILS
    elif margin >= 0:
        status = Status.CONFIRMED
    else:
        status = Status.COUNTEREXAMPLE
    return Verdict(status, report, margin, seqs)


# ---------------------------------------------------------------------------
# proof quantities and the gated ledger


@dataclass(frozen=True)
class ProofQuantities:
    """Half-block sums and the small quadratic forms built from ``x_0, x_m`` etc.

    ``X0``/``X1`` are the sums of the first/second half of ``x`` (likewise for
    ``y``, ``z``); ``delta0``, ``delta_m`` are the pair forms at indices 0 and
    m, ``delta_m0`` the six mixed products, ``U = rs + st + tr`` with
    ``r = x_0 + x_m`` etc., and ``E = x_0 + y_0 - 5 (x_m + y_m)`` etc.
    """

    m: int
    x0: Fraction
    y0: Fraction
    z0: Fraction
    xm: Fraction
    ym: Fraction
    zm: Fraction
    X0: Fraction
    X1: Fraction
    Y0: Fraction
    Y1: Fraction
    Z0: Fraction
    Z1: Fraction
    delta0: Fraction
    delta_m: Fraction
    delta_m0: Fraction
    U: Fraction
    r: Fraction
    s: Fraction
    t: Fraction
    E: Fraction
    F: Fraction
    G: Fraction


def _quantities(x0, y0, z0, xm, ym, zm, X0, X1, Y0, Y1, Z0, Z1) -> dict:
    r, s, t = x0 + xm, y0 + ym, z0 + zm
    return dict(
        x0=x0, y0=y0, z0=z0, xm=xm, ym=ym, zm=zm,
        X0=X0, X1=X1, Y0=Y0, Y1=Y1, Z0=Z0, Z1=Z1,
        delta0=pair_form(x0, y0, z0),
        delta_m=pair_form(xm, ym, zm),
        delta_m0=xm * z0 + ym * z0 + ym * x0 + zm * x0 + xm * y0 + zm * y0,
        U=pair_form(r, s, t),
        r=r, s=s, t=t,
        E=x0 + y0 - 5 * (xm + ym),
        F=y0 + z0 - 5 * (ym + zm),
        G=z0 + x0 - 5 * (zm + xm),
    )


def compute_proof_quantities(t: TransformedSequences) -> ProofQuantities:
    m = t.m
    zero = Fraction(0)
    return ProofQuantities(m=m, **_quantities(
        t.x[0], t.y[0], t.z[0], t.x[m], t.y[m], t.z[m],
        sum(t.x[:m], zero), sum(t.x[m:], zero),
        sum(t.y[:m], zero), sum(t.y[m:], zero),
        sum(t.z[:m], zero), sum(t.z[m:], zero)))


# Names of ledger entries, in evaluation order.
LEDGER_NAMES = (
    "block_split",          # n^2 (XY+YZ+ZX) <= 9(m^2-1) + three index-0/m brackets + tail form
    "block_split_compact",  # same bound written with U - delta_m
    "cross_sum",            # delta_m0 <= 9 - delta_m
    "head_tail",            # n^2 (XY+YZ+ZX) <= 9 m^2 + delta0 - delta_m + tail form
    "tail_block",           # tail form - delta_m <= 3(m^2-1)
    "negative_pair",        # U <= (r-2)(s-2) - 4 for a pair with negative sum
    "negative_pair_cap",    # (r-2)(s-2) - 4 <= 12 for that pair
    "tail_monotone",        # tail form <= m^2 delta_m when all tail pair sums >= 0
    "skew_all_negative",    # delta0 + 8 delta_m <= 27 when E, F, G < 0
    "skew_two_negative",    # delta0 + 30 delta_m <= 45 when exactly two of E, F, G < 0
    "skew_one_negative",    # same bound when exactly one of E, F, G < 0
)


def _select(cond, a, b):
    if isinstance(cond, np.ndarray):
        return np.where(cond, a, b)
    return a if cond else b


def _count(*conds):
    if isinstance(conds[0], np.ndarray):
        return sum(c.astype(np.int64) for c in conds)
    return sum(int(c) for c in conds)


def _ledger_terms(q: dict, m: int, unit) -> list[tuple[str, object, object, object]]:
    """``(name, applicable, lhs, rhs)`` for each ledger inequality ``lhs <= rhs``.

    Works elementwise on Fractions (``unit = 1``) or on integer arrays holding
    numerators over ``unit`` (so that quadratic terms carry ``unit**2``).
    """
    x0, y0, z0, xm, ym, zm = (q[k] for k in ("x0", "y0", "z0", "xm", "ym", "zm"))
    X0, X1, Y0, Y1, Z0, Z1 = (q[k] for k in ("X0", "X1", "Y0", "Y1", "Z0", "Z1"))
    d0, dm, dm0, U = q["delta0"], q["delta_m"], q["delta_m0"], q["U"]
    r, s, t = q["r"], q["s"], q["t"]
    E, F, G = q["E"], q["F"], q["G"]
    u2 = unit * unit
    always = (r == r)

    total = pair_form(X0 + X1, Y0 + Y1, Z0 + Z1)
    tail = pair_form(X1, Y1, Z1)
    brackets = ((x0 * y0 + y0 * zm + zm * x0) + (x0 * ym + ym * z0 + z0 * x0)
                + (xm * y0 + y0 * z0 + z0 * xm))

    neg_rs, neg_st, neg_tr = (r + s) < 0, (s + t) < 0, (t + r) < 0
    any_neg = neg_rs | neg_st | neg_tr
    p1 = _select(neg_rs, r, _select(neg_st, s, t))
    p2 = _select(neg_rs, s, _select(neg_st, t, r))
    pair_bound = (p1 - 2 * unit) * (p2 - 2 * unit) - 4 * u2

    case4 = ((X1 + Y1) >= 0) & ((Y1 + Z1) >= 0) & ((Z1 + X1) >= 0)
    n_neg = _count(E < 0, F < 0, G < 0)

    return [
        ("block_split", always, total, 9 * (m * m - 1) * u2 + brackets + tail),
        ("block_split_compact", always, total, 9 * (m * m - 1) * u2 + U - dm + tail),
        ("cross_sum", always, dm0, 9 * u2 - dm),
        ("head_tail", always, total, 9 * m * m * u2 + d0 - dm + tail),
        ("tail_block", always, tail - dm, 3 * (m * m - 1) * u2),
        ("negative_pair", any_neg, U, pair_bound),
        ("negative_pair_cap", any_neg, pair_bound, 12 * u2),
        ("tail_monotone", case4, tail, m * m * dm),
        ("skew_all_negative", case4 & (n_neg == 3), d0 + 8 * dm, 27 * u2),
        ("skew_two_negative", case4 & (n_neg == 2), d0 + 30 * dm, 45 * u2),
        ("skew_one_negative", case4 & (n_neg == 1), d0 + 30 * dm, 45 * u2),
    ]


@dataclass(frozen=True)
class LedgerEntry:
    name: str
    applicable: bool
    holds: bool
    lhs: Fraction
    rhs: Fraction


def verify_proof_inequalities(t: TransformedSequences) -> list[LedgerEntry]:
    """Evaluate every intermediate inequality of the proof on one instance.

    If the pointwise hypothesis fails, every entry is reported not applicable.
    An applicable entry with ``holds=False`` is a certificate failure.
    """
    hyp = check_pointwise_hypothesis(inverse_transform(t))
    q = compute_proof_quantities(t)
    terms = _ledger_terms(q.__dict__, q.m, 1)
    return [LedgerEntry(name, bool(app) and hyp.holds, lhs <= rhs, lhs, rhs)
            for name, app, lhs, rhs in terms]


def certificate_failures(entries: Iterable[LedgerEntry]) -> list[LedgerEntry]:
    return [e for e in entries if e.applicable and not e.holds]


# ---------------------------------------------------------------------------
# batched integer-lattice evaluation


@dataclass
class LatticeBatch:
    """Many instances at once: rows of integer numerators over one denominator.

    ``a[r] / denom`` is the ``a`` sequence of instance ``r``.  All decisions
    are exact integer comparisons.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    denom: int
    chunk: int = field(default=1024, repr=False)

    def __post_init__(self):
        k, n = self.a.shape
        if self.b.shape != (k, n) or self.c.shape != (k, n) or n % 2 or n < 2:
            raise PreconditionError("batch arrays must share an (instances, even n) shape")
        # the largest intermediate: 9 m^2 (5D)^2 and products of half sums of 16 D
        bound = 64 * (n * 16 * self.denom) ** 2
        dtype = np.int64 if bound.bit_length() <= 62 else object
        for name in "abc":
            setattr(self, name, np.asarray(getattr(self, name)).astype(dtype))

    @property
    def n(self) -> int:
        return self.a.shape[1]

    def __len__(self) -> int:
        return self.a.shape[0]

    def subset(self, mask) -> "LatticeBatch":
        return LatticeBatch(self.a[mask], self.b[mask], self.c[mask], self.denom, self.chunk)

    def instance(self, r: int) -> TripleSequences:
        d = self.denom
        return TripleSequences(*(tuple(Fraction(int(v), d) for v in getattr(self, k)[r]) for k in "abc"))

    def hypothesis_holds(self) -> np.ndarray:
        I, J, K = admissible_triples(self.n)
        d = self.denom
        out = np.empty(len(self), dtype=bool)
        step = max(1, self.chunk * 256 // max(1, len(I)))
        for lo in range(0, len(self), step):
            sl = slice(lo, lo + step)
            ai, bj, ck = self.a[sl][:, I], self.b[sl][:, J], self.c[sl][:, K]
            bad = 8 * (ai * bj + bj * ck + ck * ai) > 5 * d * (ai + bj + ck)
            out[sl] = ~np.asarray(bad, dtype=bool).any(axis=1)
        return out

    def conclusion_slack(self) -> np.ndarray:
        """``8 n^2 D^2`` times the conclusion margin; negative means counterexample."""
        sa, sb, sc = (getattr(self, k).sum(axis=1) for k in "abc")
        return 5 * self.n * self.denom * (sa + sb + sc) - 8 * pair_form(sa, sb, sc)

    def certificate(self) -> dict[str, tuple[np.ndarray, np.ndarray]]:
        """name -> (applicable, holds) arrays.  The hypothesis is not re-checked here."""
        n, m, d = self.n, self.n // 2, self.denom
        unit = 5 * d
        x, y, z = (16 * getattr(self, k) - 5 * d for k in "abc")
        q = _quantities(x[:, 0], y[:, 0], z[:, 0], x[:, m], y[:, m], z[:, m],
                        x[:, :m].sum(axis=1), x[:, m:].sum(axis=1),
                        y[:, :m].sum(axis=1), y[:, m:].sum(axis=1),
                        z[:, :m].sum(axis=1), z[:, m:].sum(axis=1))
        out = {}
        for name, app, lhs, rhs in _ledger_terms(q, m, unit):
            app = np.broadcast_to(np.asarray(app, dtype=bool), (len(self),))
            out[name] = (app, np.asarray(lhs <= rhs, dtype=bool))
        return out

    @classmethod
    def from_instances(cls, instances: Sequence[TripleSequences]) -> "LatticeBatch":
        vals = [v for s in instances for k in "abc" for v in getattr(s, k)]
        nums, d = to_lattice(vals)
        n = instances[0].n
        arr = np.asarray(nums).reshape(len(instances), 3, n)
        return cls(arr[:, 0], arr[:, 1], arr[:, 2], d)
