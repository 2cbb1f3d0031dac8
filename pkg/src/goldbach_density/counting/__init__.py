"""Prime tables, restricted representation counts, residue weights and spectra."""
from .ntt import exact_convolve
from .representations import RepresentationReport, count_representations, scan_odd_range
from .sieve import PrimeTable, segmented_prime_count, sieve
from .spectrum import (PseudorandomnessReport, SpectrumReport, fourier_direct,
                       fourier_transform, pseudorandomness_report)
from .subsets import PrimeSubsetSpec, relative_density
from .wtrick import WTrickProfile, find_congruence_witness, primorial_below, w_trick_weights

__all__ = [
    "PrimeSubsetSpec", "PrimeTable", "PseudorandomnessReport", "RepresentationReport",
    "SpectrumReport", "WTrickProfile", "count_representations", "exact_convolve",
    "find_congruence_witness", "fourier_direct", "fourier_transform", "primorial_below",
    "pseudorandomness_report", "relative_density", "scan_odd_range", "segmented_prime_count", "sieve", "w_trick_weights",
]
