"""Fourier diagnostics on Z_N with the kernel exp(+2 pi i r x / N)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import ModulusError, PreconditionError
from ..modular_sumsets import is_prime

DIRECT_MAX = 4096


def fourier(f) -> np.ndarray:
    """``F(r) = sum_x f(x) exp(2 pi i r x / N)``, i.e. ``N * ifft(f)``."""
    f = np.asarray(f, dtype=float)
    return len(f) * np.fft.ifft(f)


def fourier_direct(f) -> np.ndarray:
    """Same transform by the O(N^2) definition (oracle)."""
    f = np.asarray(f, dtype=float)
    N = len(f)
    if N > DIRECT_MAX:
        raise PreconditionError(f"direct transform limited to N <= {DIRECT_MAX}")
    x = np.arange(N)
    # reduce r*x mod N before scaling to keep the phase accurate
    phase = (np.outer(x, x) % N) * (2 * np.pi / N)
    return np.exp(1j * phase) @ f


@dataclass
class SpectrumReport:
    N: int
    values: np.ndarray
    energy: float            # sum_x |f(x)|^2
    spectral_energy: float   # sum_r |F(r)|^2

    @property
    def parseval_error(self) -> float:
        """Relative gap in ``sum |F|^2 = N sum |f|^2``."""
        ref = self.N * self.energy
        return abs(self.spectral_energy - ref) / ref if ref else abs(self.spectral_energy)

    def lq_norm(self, q: float) -> float:
        return float(np.sum(np.abs(self.values) ** q) ** (1.0 / q))


def _check_vector(f, name: str = "f") -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.ndim != 1 or len(f) < 2:
        raise PreconditionError(f"{name} must be a vector of length >= 2")
    if not is_prime(len(f)):
        raise ModulusError(f"length {len(f)} of {name} is not prime")
    if (f < 0).any():
        raise PreconditionError(f"{name} has negative entries")
    return f


def fourier_transform(f, direct: bool = False) -> SpectrumReport:
    f = _check_vector(f)
    vals = fourier_direct(f) if direct else fourier(f)
    return SpectrumReport(len(f), vals, float(np.sum(f * f)), float(np.sum(np.abs(vals) ** 2)))


@dataclass
class PseudorandomnessReport:
    N: int
    q: float
    eta_observed: float
    lq_norms: tuple[float, ...]
    masses: tuple[float, ...]
    majorized: bool
    mean_margin: float          # min(d1, d2, d3, d1 + d2 + d3 - 1)
    delta: float | None = None

    @property
    def mean_condition(self) -> bool | None:
        return None if self.delta is None else self.mean_margin >= self.delta


def pseudorandomness_report(mu: Sequence, a: Sequence, q: float, delta: float | None = None
                            ) -> PseudorandomnessReport:
    """Measure the transference hypotheses for majorants ``mu`` and minorants ``a``.

    ``mu`` and ``a`` are lists of equal-length vectors (one or three of each).
    ``eta_observed = max_i max_r |mu_i^(r) - [r = 0]|``.
    """
    if not 2 < q < 3:
        raise PreconditionError(f"q={q} must lie in (2, 3)")
    mus = [_check_vector(m, "mu") for m in mu]
    As = [_check_vector(x, "a") for x in a]
    if len(mus) != len(As) or not mus:
        raise PreconditionError("need matching, nonempty lists of majorants and minorants")
    N = len(mus[0])
    if any(len(v) != N for v in mus + As):
        raise PreconditionError("all vectors must share one length")
    kron = np.zeros(N)
    kron[0] = 1.0
    eta = max(float(np.max(np.abs(fourier(m) - kron))) for m in mus)
    norms = tuple(float(np.sum(np.abs(fourier(x)) ** q) ** (1 / q)) for x in As)
    masses = tuple(float(x.sum()) for x in As)
    major = all(bool(np.all(x <= m)) for x, m in zip(As, mus))
    margin = min(*masses, sum(masses) - 1) if len(masses) == 3 else min(masses)
    return PseudorandomnessReport(N, q, eta, norms, masses, major, float(margin), delta)
