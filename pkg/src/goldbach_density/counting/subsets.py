"""Prime subsets by residue class, explicit list, or dyadic truncation.

Compact grammar: ``all``, ``mod:15:1,4,7,11,13``, ``list:2,3,5`` or
``list:@primes.txt``, ``trunc:0.7``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..errors import PreconditionError
from ..exact import as_fraction
from .sieve import PrimeTable, sieve

KINDS = ("all", "mod", "list", "trunc")


@dataclass(frozen=True)
class PrimeSubsetSpec:
    kind: str
    modulus: int = 0
    classes: tuple[int, ...] = ()
    members: tuple[int, ...] = ()
    rho: Fraction = Fraction(1)
    text: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown subset kind {self.kind!r}")
        if self.kind == "mod":
            if self.modulus < 1:
                raise PreconditionError("residue-class modulus must be positive")
            bad = [c for c in self.classes if math.gcd(c, self.modulus) != 1]
            if bad:
                raise PreconditionError(f"classes {bad} are not units mod {self.modulus}")
        if self.kind == "trunc" and not 0 < self.rho <= 1:
            raise PreconditionError(f"truncation fraction {self.rho} must lie in (0, 1]")

    @classmethod
    def all_primes(cls) -> "PrimeSubsetSpec":
        return cls("all", text="all")

    @classmethod
    def residue_classes(cls, m: int, classes) -> "PrimeSubsetSpec":
        cl = tuple(sorted({int(c) % m for c in classes}))
        return cls("mod", modulus=m, classes=cl, text=f"mod:{m}:{','.join(map(str, cl))}")

    @classmethod
    def explicit(cls, members) -> "PrimeSubsetSpec":
        mem = tuple(sorted({int(x) for x in members}))
        return cls("list", members=mem, text="list:" + ",".join(map(str, mem)))

    @classmethod
    def truncation(cls, rho) -> "PrimeSubsetSpec":
        r = as_fraction(rho)
        return cls("trunc", rho=r, text=f"trunc:{rho}")

    @classmethod
    def parse(cls, text: str, base_dir: Path | None = None) -> "PrimeSubsetSpec":
        text = text.strip()
        if text == "all":
            return cls.all_primes()
        hit = re.fullmatch(r"mod:(\d+):([\d,\s]*)", text)
        if hit:
            return cls.residue_classes(int(hit.group(1)), _ints(hit.group(2)))
        if text.startswith("list:"):
            body = text[5:]
            if body.startswith("@"):
                path = Path(body[1:])
                if base_dir is not None and not path.is_absolute():
                    path = base_dir / path
                try:
                    body = path.read_text()
                except OSError as exc:
                    raise PreconditionError(f"cannot read prime list {path}: {exc}") from exc
            spec = cls.explicit(_ints(body))
            return cls("list", members=spec.members, text=text)
        if text.startswith("trunc:"):
            try:
                return cls("trunc", rho=as_fraction(text[6:]), text=text)
            except (ValueError, ZeroDivisionError) as exc:
                raise PreconditionError(f"bad truncation fraction in {text!r}") from exc
        raise PreconditionError(f"cannot parse subset spec {text!r}")

    def membership(self, table: PrimeTable, limit: int | None = None) -> np.ndarray:
        """Boolean vector over ``0..limit``: prime and in the subset."""
        limit = table.limit if limit is None else limit
        if limit > table.limit:
            raise PreconditionError(f"limit {limit} beyond sieve limit {table.limit}")
        prime = table.is_prime[:limit + 1]
        if self.kind == "all":
            return prime.copy()
        if self.kind == "mod":
            keep = np.zeros(self.modulus, dtype=bool)
            keep[list(self.classes)] = True
            return prime & keep[np.arange(limit + 1) % self.modulus]
        if self.kind == "list":
            out = np.zeros(limit + 1, dtype=bool)
            mem = np.array([x for x in self.members if 0 <= x <= limit], dtype=np.int64)
            out[mem] = True
            return out & prime
        return _truncated(self.rho, table, limit)


def _ints(body: str) -> list[int]:
    try:
        return [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
    except ValueError as exc:
        raise PreconditionError(f"expected integers: {exc}") from exc


def _truncated(rho: Fraction, table: PrimeTable, limit: int) -> np.ndarray:
    """Keep the first ceil(rho k) of the k primes in each block [2^j, 2^(j+1)).

    Block sizes are always taken from the complete block, so membership of a
    prime never depends on ``limit``.
    """
    top = (1 << max(1, limit.bit_length())) - 1
    full = table if table.limit >= top else sieve(top, cap=max(top, table.limit))
    primes = full.primes
    out = np.zeros(limit + 1, dtype=bool)
    j = 1
    while (1 << j) <= limit:
        lo, hi = 1 << j, 1 << (j + 1)
        block = primes[(primes >= lo) & (primes < hi)]
        k = len(block)
        keep = -((-rho.numerator * k) // rho.denominator)   # ceil(rho * k)
        chosen = block[:keep]
        out[chosen[chosen <= limit]] = True
        j += 1
    return out


def relative_density(spec: PrimeSubsetSpec, table: PrimeTable, N: int) -> Fraction:
    """``|P cap [1, N]| / pi(N)`` exactly."""
    total = table.pi(N)
    if total == 0:
        raise PreconditionError(f"no primes up to {N}")
    return Fraction(int(spec.membership(table, N).sum()), total)
