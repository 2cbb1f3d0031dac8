"""Random hypothesis-satisfying sequence triples: conclusion and proof-ledger tallies."""
import argparse
import json

from goldbach_density.seq_campaign import run_campaign


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lengths", type=int, nargs="+", default=[6, 8, 10, 12, 14])
    ap.add_argument("--count", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for n in args.lengths:
        rep = run_campaign(n, args.count, seed=args.seed + n)
        print(json.dumps({"n": n, "instances": rep.instances, "ok": rep.ok,
                          "counterexamples": len(rep.counterexamples),
                          "ledger_failures": [name for name, _ in rep.certificate_failures],
                          "applicable": rep.applicable, "tightest_margin": str(rep.tightest_margin),
                          "seconds": round(rep.elapsed_ms / 1e3, 2)}), flush=True)


if __name__ == "__main__":
    main()
