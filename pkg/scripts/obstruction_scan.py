"""Which odd n have no representation with all primes in the density-5/8 classes mod 15?"""
import argparse
import collections

from goldbach_density.counting import PrimeSubsetSpec, scan_odd_range


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--start", type=int, default=7)
    ap.add_argument("--stop", type=int, default=10**5)
    args = ap.parse_args()
    spec = PrimeSubsetSpec.parse("mod:15:1,4,7,11,13")
    rep = scan_odd_range(args.start, args.stop, [spec] * 3)
    by_class = collections.Counter(n % 15 for n in rep.failures)
    print(f"{len(rep.failures)} failures in [{args.start}, {args.stop}] ({rep.elapsed_ms:.0f} ms)")
    print("failures by residue mod 15:", dict(sorted(by_class.items())))
    stray = [n for n in rep.failures if n % 15 != 2]
    print("failures off the class 2 mod 15:", stray[:20], "..." if len(stray) > 20 else "")


if __name__ == "__main__":
    main()
