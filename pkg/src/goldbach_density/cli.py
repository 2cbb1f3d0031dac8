"""Command line entry point: ``goldbach-density <subcommand> ...``.

Exit codes: 0 when every checked assertion held, 1 when the mathematics said
no (a counterexample, a certificate failure, a missing guaranteed witness),
2 for usage and precondition errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import density_functions as dfn
from . import modular_sumsets as ms
from . import seq_inequality as seq
from .errors import CertificateError, PreconditionError
from .exact import as_fraction, format_fraction

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


@dataclass
class Record:
    op: str
    params: dict
    status: str
    witness: object = None
    margin: str | None = None
    scanned: int | None = None
    seed: int = 0
    elapsed_ms: float = 0.0
    extra: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)     # (n, count, method, ms) for range reports
    failed: bool = False

    def to_json(self) -> dict:
        out = {"op": self.op, "params": self.params, "status": self.status, "witness": self.witness,
               "margin": self.margin, "scanned": self.scanned, "seed": self.seed,
               "elapsed_ms": round(self.elapsed_ms, 3)}
        out.update(self.extra)
        return out


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _frac(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _fmt(q) -> str | None:
    return None if q is None else format_fraction(Fraction(q))


def _load_functions(args) -> list[dfn.UnitFunction]:
    fs = [dfn.UnitFunction.parse(_read(p)) for p in (args.f1, args.f2, args.f3)]
    return fs


def _defaulted_note(fs) -> dict:
    notes = {f"f{i + 1}": list(f.defaulted) for i, f in enumerate(fs) if f.defaulted}
    return {"defaulted_units": notes} if notes else {}


# ---------------------------------------------------------------------------
# sequence inequality


def cmd_seq_check(args) -> Record:
    seqs = seq.TripleSequences.from_text(_read(args.file))
    v = seq.verify_instance(seqs)
    rec = v.to_record()
    wit = rec.get("instance") or rec.get("witness")
    return Record("seq-check", {"file": args.file, "n": seqs.n}, v.status.value, witness=wit,
                  margin=_fmt(v.margin), scanned=rec["scanned"],
                  # below the inequality's range a violation is data, matching seq-search
                  failed=v.status is seq.Status.COUNTEREXAMPLE and seqs.in_guaranteed_range)


def cmd_seq_search(args) -> Record:
    from .seq_search import SearchConfig, search_counterexample
    cfg = SearchConfig(n=args.n, steps=args.steps, seed=args.seed, step_scale=args.step_scale,
                       restarts=args.restarts, normalized=args.normalized)
    res = search_counterexample(cfg)
    if res.counterexample is None:
        status, failed = "NO_COUNTEREXAMPLE", False
    elif res.best.in_guaranteed_range:
        status, failed = "COUNTEREXAMPLE", True
    else:
        # short sequences are outside the inequality's range; a hit is data, not a contradiction
        status, failed = "COUNTEREXAMPLE_BELOW_RANGE", False
    return Record("seq-search", {"n": cfg.n, "steps": cfg.steps, "restarts": cfg.restarts,
                                 "step_scale": _fmt(cfg.step_scale), "normalized": cfg.normalized},
                  status, witness=res.best.to_text(), margin=_fmt(res.best_margin), scanned=cfg.steps,
                  seed=args.seed, failed=failed,
                  extra={"best_margin_float": float(res.best_margin),
                         "shards": [{"seed": s.seed, "best_margin": _fmt(s.best_margin)} for s in res.shards]})


def cmd_seq_certificate(args) -> Record:
    seqs = seq.TripleSequences.from_text(_read(args.file))
    t = seq.transform_to_xyz(seqs)
    entries = seq.verify_proof_inequalities(t)
    bad = seq.certificate_failures(entries)
    hyp = seq.check_pointwise_hypothesis(seqs)
    ledger = [{"name": e.name, "applicable": e.applicable, "holds": e.holds,
               "lhs": _fmt(e.lhs), "rhs": _fmt(e.rhs)} for e in entries]
    status = "HYPOTHESIS_FAILS" if not hyp.holds else ("CERTIFICATE_FAILS" if bad else "CERTIFIED")
    return Record("seq-certificate", {"file": args.file, "n": seqs.n}, status,
                  witness=[e.name for e in bad] or None, scanned=len(entries), failed=bool(bad),
                  extra={"ledger": ledger})


def cmd_seq_campaign(args) -> Record:
    from .seq_campaign import run_campaign
    rep = run_campaign(args.n, args.trials, args.seed)
    failed = not rep.ok
    wit = None
    if rep.counterexamples:
        wit = rep.counterexamples[0].to_text()
    elif rep.certificate_failures:
        wit = {"entry": rep.certificate_failures[0][0], "instance": rep.certificate_failures[0][1].to_text()}
    return Record("seq-campaign", {"n": args.n, "trials": args.trials},
                  "FAILURES" if failed else "CONFIRMED", witness=wit, margin=_fmt(rep.tightest_margin),
                  scanned=rep.instances, seed=args.seed, failed=failed,
                  extra={"applicable": rep.applicable, "counterexamples": len(rep.counterexamples),
                         "certificate_failures": len(rep.certificate_failures)})


# ---------------------------------------------------------------------------
# sumsets


def _parse_set(text: str, m: int) -> ms.ResidueSet:
    return ms.ResidueSet.parse(text, m)


def cmd_sumset(args) -> Record:
    ms.analyze_modulus(args.m)
    A, B, C = (_parse_set(s, args.m) for s in args.sets)
    S = ms.sumset3(A, B, C)
    extra = {"sumset": S.to_text(), "covers": S.is_full()}
    if ms.is_prime(args.m) and min(len(A), len(B), len(C)) > 0:
        cd = ms.cauchy_davenport_check(args.m, A, B, C)
        extra["cauchy_davenport"] = {"bound": cd.bound, "actual": cd.actual, "holds": cd.holds}
        failed = not cd.holds
    else:
        failed = False
    return Record("sumset", {"m": args.m, "sets": [s.to_text() for s in (A, B, C)]},
                  "CD_FAILS" if failed else "OK", witness=S.complement().to_text(),
                  scanned=len(A) * len(B) * len(C), failed=failed, extra=extra)


def cmd_covering(args) -> Record:
    mod = ms.analyze_modulus(args.m)
    sets = None
    if args.mode == "single":
        if not args.sets or len(args.sets) != 3:
            raise UsageError("single mode needs --sets A B C")
        sets = [_parse_set(s, args.m) for s in args.sets]
    if args.mode == "random" and args.trials is None:
        raise UsageError("random mode needs an explicit --trials budget")
    if args.mode == "adversarial" and args.budget is None:
        raise UsageError("adversarial mode needs an explicit --budget")
    rep = ms.verify_covering(mod, sets, args.mode, seed=args.seed, trials=args.trials or 0,
                             budget=args.budget or 0, diagnostic=args.diagnostic)
    if args.mode == "single" and not rep.precondition_ok:
        status = "PRECONDITION_FAILS_DIAGNOSTIC"
    elif args.mode == "adversarial":
        status = "COVERS" if rep.covers else "NOT_COVERED"
    else:
        status = "COVERS" if rep.failures == 0 else "NOT_COVERED"
    return Record("corollary14", {"m": args.m, "mode": args.mode, "trials": args.trials,
                                  "budget": args.budget},
                  status, witness={"sets": rep.witness, "missing": list(rep.missing)} if rep.witness else None,
                  scanned=rep.checked, seed=args.seed, failed=rep.failures > 0 and rep.precondition_ok,
                  extra={"failures": rep.failures, "worst_coverage": rep.worst_coverage})


def cmd_counterexample15(args) -> Record:
    c = ms.counterexample_mod15()
    return Record("counterexample15", {}, "OK",
                  witness={"S": c.S.to_text(), "missing": c.missing.to_text()},
                  margin=None, scanned=len(c.S) ** 3,
                  extra={"S": list(c.S.elements()), "density": format_fraction(c.density),
                         "missing": list(c.missing.elements())})


# ---------------------------------------------------------------------------
# unit-group witnesses


def _witness_record(op, args, fs, found, mode, check) -> Record:
    bad = [t for t, w in found.items() if not check(w, fs)]
    targets = list(range(fs[0].modulus)) if args.x is None else [args.x % fs[0].modulus]
    missing = [t for t in targets if t not in found]
    failed = bool(bad or missing)
    wit = [found[t].to_record() for t in targets if t in found]
    margin = min((found[t].h_margin for t in targets if t in found), default=None)
    return Record(op, {"m": fs[0].modulus, "x": args.x, "mode": mode,
                       "delta": _fmt(getattr(args, "delta", None)), "eta": _fmt(getattr(args, "eta", None)),
                       "files": [args.f1, args.f2, args.f3]},
                  "NO_WITNESS" if missing else ("INVALID_WITNESS" if bad else "WITNESS"),
                  witness=wit if len(wit) != 1 else wit[0], margin=_fmt(margin), scanned=len(targets),
                  failed=failed, extra={"missing_targets": missing, **_defaulted_note(fs)})


def cmd_margin_witness(args) -> Record:
    fs = _load_functions(args)
    params = dfn.ThresholdParams(args.delta, args.eta)
    found = dfn.margin_witnesses(fs, params, args.x, args.mode, args.min_prime)
    return _witness_record("lemma31", args, fs, found, args.mode, dfn.check_margin_witness)


def cmd_mod15_witness(args) -> Record:
    fs = _load_functions(args)
    found = dfn.mod15_witnesses(fs, args.x)
    return _witness_record("lemma32", args, fs, found, "brute", dfn.check_sum_witness)


def cmd_sum_witness(args) -> Record:
    fs = _load_functions(args)
    params = dfn.ThresholdParams(args.delta, args.eta)
    found = dfn.sum_witnesses(fs, params, args.x, args.mode)
    return _witness_record("theorem13", args, fs, found, args.mode, dfn.check_sum_witness)


# ---------------------------------------------------------------------------
# counting


def _specs(args):
    from .counting import PrimeSubsetSpec
    base = Path(args.config).parent if getattr(args, "config", None) else None
    return [PrimeSubsetSpec.parse(s, base) for s in (args.p1, args.p2, args.p3)]


def cmd_goldbach_count(args) -> Record:
    from .counting import count_representations, scan_odd_range
    specs = _specs(args)
    if (args.n is None) == (args.range is None):
        raise UsageError("give exactly one of --n or --range")
    all_primes = all(s.kind == "all" for s in specs)
    if args.n is not None:
        rep = count_representations(args.n, specs, args.method)
        value = rep.counts[args.n]
        # every odd n >= 7 is a sum of three primes
        failed = all_primes and args.n % 2 == 1 and args.n >= 7 and value == 0
        return Record("goldbach-count", {"n": args.n, "specs": list(rep.specs), "method": args.method},
                      "REPRESENTED" if value else "NOT_REPRESENTED", witness=value, scanned=1,
                      elapsed_ms=rep.elapsed_ms, rows=rep.csv_rows(), failed=failed,
                      extra={"count": value})
    n0, n1 = args.range
    rep = scan_odd_range(n0, n1, specs, args.method)
    failed = all_primes and any(n >= 7 for n in rep.failures)
    return Record("goldbach-count", {"range": [n0, n1], "specs": list(rep.specs), "method": args.method},
                  "FAILURES" if rep.failures else "ALL_REPRESENTED", witness=rep.failures[:50] or None,
                  scanned=len(rep.counts), elapsed_ms=rep.elapsed_ms, rows=rep.csv_rows(), failed=failed,
                  extra={"failure_count": len(rep.failures),
                         "failures_by_residue_mod_15": _residue_histogram(rep.failures, 15)})


def _residue_histogram(values, m: int) -> dict:
    out: dict[str, int] = {}
    for v in values:
        out[str(v % m)] = out.get(str(v % m), 0) + 1
    return out


def cmd_wtrick(args) -> Record:
    from .counting import find_congruence_witness, sieve, w_trick_weights
    specs = _specs(args)
    table = sieve(max(2, -(-2 * args.n // 3)))
    prof = w_trick_weights(args.z, args.n, specs, args.delta, args.eta, table)
    means = [{"total": c.total, "threshold": c.threshold, "radius": c.radius, "holds": c.holds}
             for c in prof.means]
    params = {"z": args.z, "W": prof.W, "n": args.n, "delta": _fmt(args.delta), "eta": _fmt(args.eta),
              "specs": list(prof.specs)}
    if not prof.all_means_hold:
        return Record("wtrick", params, "MEANS_FAIL", scanned=prof.phi, extra={"means": means})
    rep = find_congruence_witness(prof)
    wit = rep.direct.to_record() if rep.direct else None
    extra = {"means": means, "odd_part_witness": rep.odd_part.to_record() if rep.odd_part else None,
             "odd_part_note": rep.odd_part_note, "notes": rep.notes}
    return Record("wtrick", params, "WITNESS" if rep.found else "NO_WITNESS", witness=wit,
                  margin=wit["value_sum"] if wit else None, scanned=prof.phi ** 2,
                  failed=not rep.found, extra=extra)


def _read_vector(path: str):
    import numpy as np
    try:
        return np.array([float(tok) for tok in _read(path).replace(",", " ").split()])
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def cmd_spectrum(args) -> Record:
    from .counting import fourier_transform, pseudorandomness_report
    f = _read_vector(args.file)
    rep = fourier_transform(f)
    mu = _read_vector(args.majorant) if args.majorant else f
    pr = pseudorandomness_report([mu], [f], args.q, args.delta)
    extra = {"N": rep.N, "parseval_rel_error": rep.parseval_error, "eta_observed": pr.eta_observed,
             "lq_norm": pr.lq_norms[0], "mass": pr.masses[0], "majorized": pr.majorized,
             "mean_condition": pr.mean_condition}
    failed = rep.parseval_error > 1e-9
    return Record("spectrum", {"file": args.file, "q": args.q, "majorant": args.majorant},
                  "PARSEVAL_FAILS" if failed else "OK", scanned=rep.N, failed=failed, extra=extra)


# ---------------------------------------------------------------------------
# parser, config and output


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_seed, default=0, help="64-bit seed (default 0)")
    p.add_argument("--output", help="append the report to this file")
    p.add_argument("--format", choices=("jsonl", "csv", "human"), default="human")
    p.add_argument("--config", help="key=value file mirroring the flags; flags win")


def _function_args(p, with_params=True, with_mode=True) -> None:
    for name in ("f1", "f2", "f3"):
        p.add_argument(f"--{name}", required=True, help="unit-function file")
    if with_params:
        p.add_argument("--delta", type=_frac, required=True)
        p.add_argument("--eta", type=_frac, required=True)
    p.add_argument("--x", type=int, default=None, help="target residue (default: every residue)")
    if with_mode:
        p.add_argument("--mode", choices=dfn.MODES, default="constructive")


def _spec_args(p) -> None:
    for name in ("p1", "p2", "p3"):
        p.add_argument(f"--{name}", default="all", help="all | mod:M:r1,r2 | list:@file | trunc:RHO")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="goldbach-density", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq-check", help="verdict for one sequence triple")
    p.add_argument("file")
    p.set_defaults(func=cmd_seq_check)

    p = sub.add_parser("seq-search", help="annealing search for a violating triple")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--step-scale", type=_frac, default=Fraction(1, 4))
    p.add_argument("--normalized", action="store_true",
                   help="rank by (AB+BC+CA)/(A+B+C) - 5/8 instead of the raw margin")
    p.set_defaults(func=cmd_seq_search)

    p = sub.add_parser("seq-certificate", help="gated proof-inequality ledger for one triple")
    p.add_argument("file")
    p.set_defaults(func=cmd_seq_certificate)

    p = sub.add_parser("seq-campaign", help="random hypothesis-satisfying instances")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.set_defaults(func=cmd_seq_campaign)

    p = sub.add_parser("sumset", help="A+B+C in Z_m")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sets", nargs=3, required=True, metavar=("A", "B", "C"))
    p.set_defaults(func=cmd_sumset)

    p = sub.add_parser("corollary14", help="covering of Z_m by three dense unit subsets")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mode", choices=("single", "exhaustive", "random", "adversarial"), default="exhaustive")
    p.add_argument("--sets", nargs=3, metavar=("A1", "A2", "A3"))
    p.add_argument("--trials", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--diagnostic", action="store_true", help="single mode: run even if sizes are too small")
    p.set_defaults(func=cmd_covering)

    p = sub.add_parser("counterexample15", help="the density-5/8 obstruction mod 15")
    p.set_defaults(func=cmd_counterexample15)

    p = sub.add_parser("lemma31", help="h > 0 witnesses for (m, 30) = 1")
    _function_args(p)
    p.add_argument("--min-prime", type=int, choices=(7, 11), default=7)
    p.set_defaults(func=cmd_margin_witness)

    p = sub.add_parser("lemma32", help="witnesses on Z_15^* under the F-hypothesis")
    _function_args(p, with_params=False, with_mode=False)
    p.set_defaults(func=cmd_mod15_witness)

    p = sub.add_parser("theorem13", help="positive-product, sum > 3/2 witnesses")
    _function_args(p)
    p.set_defaults(func=cmd_sum_witness)

    p = sub.add_parser("goldbach-count", help="ordered three-prime representation counts")
    p.add_argument("--n", type=int)
    p.add_argument("--range", type=int, nargs=2, metavar=("N0", "N1"))
    _spec_args(p)
    p.add_argument("--method", choices=("convolution", "brute"), default="convolution")
    p.set_defaults(func=cmd_goldbach_count)

    p = sub.add_parser("wtrick", help="residue weights modulo W and a congruence witness")
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    _spec_args(p)
    p.add_argument("--delta", type=_frac, required=True)
    p.add_argument("--eta", type=_frac, required=True)
    p.set_defaults(func=cmd_wtrick)

    p = sub.add_parser("spectrum", help="Fourier diagnostics of a vector of prime length")
    p.add_argument("file")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--majorant", help="vector file used as the majorant (default: the input)")
    p.add_argument("--delta", type=float, help="threshold for the mean condition")
    p.set_defaults(func=cmd_spectrum)

    for sp in sub.choices.values():
        _common(sp)
    return parser


def _subparser(parser: argparse.ArgumentParser, command: str) -> argparse.ArgumentParser:
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            return action.choices[command]
    raise KeyError(command)


def _read_config(path: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(_read(path).splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (t.strip() for t in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _apply_config(sp: argparse.ArgumentParser, config: dict[str, str]) -> None:
    actions = {a.dest: a for a in sp._actions if a.dest not in ("help", "config")}
    defaults = {}
    for key, raw in config.items():
        if key not in actions:
            raise UsageError(f"unknown config key {key!r}")
        act = actions[key]
        if isinstance(act, argparse._StoreTrueAction):
            value = raw.lower() in ("1", "true", "yes", "on")
        elif act.nargs in (2, 3, "+", "*"):
            parts = raw.split(";") if act.dest == "sets" else raw.split()
            value = [act.type(t) if act.type else t for t in parts]
        else:
            value = act.type(raw) if act.type else raw
            if act.choices and value not in act.choices:
                raise UsageError(f"config {key}={raw} not in {list(act.choices)}")
        defaults[key] = value
        act.required = False
    sp.set_defaults(**defaults)


def _render(rec: Record, fmt: str, header: dict) -> str:
    if fmt == "jsonl":
        return json.dumps(header, sort_keys=True) + "\n" + json.dumps(rec.to_json(), sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if rec.rows:
            w.writerow(["n", "count", "method", "ms"])
            w.writerows(rec.rows)
        else:
            w.writerow(["op", "status", "margin", "scanned", "seed", "elapsed_ms"])
            w.writerow([rec.op, rec.status, rec.margin, rec.scanned, rec.seed, round(rec.elapsed_ms, 3)])
        return buf.getvalue()
    lines = [f"{rec.op}: {rec.status}"]
    if rec.op == "goldbach-count" and "count" in rec.extra:
        lines = [str(rec.extra["count"]), f"{rec.op}: {rec.status}"]
    for key in ("margin", "scanned"):
        val = getattr(rec, key)
        if val is not None:
            lines.append(f"  {key}: {val}")
    for key, val in rec.extra.items():
        if key not in ("ledger", "shards"):
            lines.append(f"  {key}: {val}")
    if rec.witness is not None:
        wit = rec.witness if isinstance(rec.witness, str) else json.dumps(rec.witness, default=str)
        lines.append("  witness: " + wit.replace("\n", "\n    "))
    return "\n".join(lines) + "\n"


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _peek(argv: list[str]) -> tuple[str | None, str | None]:
    """Subcommand and ``--config`` path, read before full parsing."""
    command = next((a for a in argv if not a.startswith("-")), None)
    config = None
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            config = argv[i + 1]
        elif a.startswith("--config="):
            config = a.split("=", 1)[1]
    return command, config


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    command, config = _peek(argv)
    try:
        if config and command:
            try:
                sp = _subparser(parser, command)
            except KeyError:
                sp = None
            if sp is not None:
                _apply_config(sp, _read_config(config))
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return EXIT_USAGE if exc.code else EXIT_OK
        header = {"op": "config", "command": args.command,
                  "config": {k: _jsonable(v) for k, v in sorted(vars(args).items()) if k != "func"}}
        t0 = time.perf_counter()
        try:
            rec = args.func(args)
        except CertificateError as exc:
            print(f"certificate failure: {exc}", file=sys.stderr)
            rec = Record(args.command, {}, "CERTIFICATE_ERROR", witness=str(exc), failed=True)
        if not rec.elapsed_ms:
            rec.elapsed_ms = (time.perf_counter() - t0) * 1e3
        rec.seed = args.seed
    except (UsageError, PreconditionError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = _render(rec, args.format, header)
    if args.output:
        with open(args.output, "a") as fh:
            fh.write(text)
        if args.format != "human":
            sys.stdout.write(_render(rec, "human", header))
    else:
        sys.stdout.write(text)
    return EXIT_MATH if rec.failed else EXIT_OK


def main() -> None:
    try:
        code = run()
    except BrokenPipeError:
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
