"""Exact checks and experiments around dense-prime ternary Goldbach statements.

Submodules:

* ``seq_inequality`` / ``seq_campaign`` / ``seq_search`` -- the averaged
  three-sequence inequality, its proof ledger, random campaigns and an
  annealing counterexample search.
* ``modular_sumsets`` -- unit groups, CRT, triple sumsets, covering checks.
* ``density_functions`` -- congruence witnesses for dense functions on unit groups.
* ``counting`` -- sieve, restricted representation counts, residue weights, spectra.
"""

__version__ = "0.1.0"
