"""Run the annealing search over several lengths and seeds; one JSON line per run."""
import argparse
import json

from goldbach_density.seq_search import SearchConfig, search_counterexample


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lengths", type=int, nargs="+", default=[2, 4, 6, 8])
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--steps", type=int, default=200_000)
    ap.add_argument("--normalized", action="store_true")
    args = ap.parse_args()
    for n in args.lengths:
        for seed in range(args.seeds):
            res = search_counterexample(SearchConfig(n, args.steps, seed, normalized=args.normalized))
            print(json.dumps({"n": n, "seed": seed, "steps": args.steps,
                              "best_margin": str(res.best_margin),
                              "best_margin_float": float(res.best_margin),
                              "counterexample": res.counterexample.to_text() if res.counterexample else None}),
                  flush=True)


if __name__ == "__main__":
    main()
