"""Constructive h > 0 witnesses on prime moduli, comparing p = 7 with p >= 11.

For each prime, random admissible function triples are drawn at several
thresholds and the constructive solver is asked for every target; any
certificate error or missing target is counted.
"""
import argparse
from fractions import Fraction

import numpy as np

from goldbach_density.density_functions import (ThresholdParams, check_margin_witness,
                                                margin_witnesses, random_dense_functions)
from goldbach_density.errors import CertificateError


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[7, 11, 13])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    for p in args.primes:
        bad = 0
        for t in range(args.trials):
            delta = Fraction(int(rng.integers(1, 31)), 200)
            params = ThresholdParams(delta, delta * Fraction(int(rng.integers(1, 40)), 100))
            fs = random_dense_functions(p, params, rng, grid=int(rng.choice([4, 8, 24, 60])))
            try:
                ws = margin_witnesses(fs, params, mode="constructive")
                bad += sum(1 for x in range(p) if x not in ws or not check_margin_witness(ws[x], fs))
            except CertificateError:
                bad += 1
        print(f"p={p}: {args.trials} triples, {bad} failures", flush=True)


if __name__ == "__main__":
    main()
