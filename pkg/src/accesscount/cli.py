"""Command-line front end.

Exit codes: 0 success, 2 usage or validation error, 3 resource guard hit.
Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from . import guards
from .daa import build_reduced_daa, dump_daa
from .matchers import Algorithm, Alphabet, Pattern, run_matcher
from .oracle import brute_distribution, monte_carlo
from .paa import Distribution, distribution, distribution_to_csv, distribution_to_document, induce_paa, rate_estimate
from .textmodel import ModelError, TextModel, parse_model_spec

EXIT_USAGE = 2
EXIT_GUARD = 3


class UsageError(Exception):
    pass


def _model(args, required: bool) -> TextModel | None:
    if args.model is None:
        if required:
            raise UsageError("--model is required for this command")
        return None
    try:
        return parse_model_spec(args.model)
    except FileNotFoundError:
        raise UsageError(f"model document {args.model!r} not found") from None
    except ModelError as exc:
        raise UsageError(f"invalid model: {exc}") from None


def _alphabet(args, model: TextModel | None, *texts: str) -> Alphabet:
    if model is not None:
        if args.alphabet and tuple(args.alphabet) != model.alphabet.symbols:
            raise UsageError("--alphabet disagrees with the model alphabet")
        return model.alphabet
    if args.alphabet:
        return Alphabet(args.alphabet)
    return Alphabet(sorted(set("".join(texts))))


def _pattern(args, alphabet: Alphabet) -> Pattern:
    if not args.pattern:
        raise UsageError("pattern must be nonempty")
    missing = sorted(set(args.pattern) - set(alphabet.symbols))
    if missing:
        raise UsageError(f"pattern symbols {missing} not in alphabet {''.join(alphabet.symbols)!r}")
    return Pattern.from_string(args.pattern, alphabet)


def _check_n(n: int) -> int:
    if n < 0:
        raise UsageError("--n must be nonnegative")
    return n


def _emit_distribution(args, dist: Distribution, out) -> None:
    if args.format == "csv":
        out.write(distribution_to_csv(dist))
    else:
        out.write(json.dumps(distribution_to_document(dist), indent=2) + "\n")


def cmd_analyze(args, out) -> None:
    model = _model(args, required=True)
    pattern = _pattern(args, model.alphabet)
    n = _check_n(args.n)
    t0 = time.perf_counter()
    daa = build_reduced_daa(pattern, args.algo)
    paa = induce_paa(daa, model)
    dist = distribution(paa, n)
    elapsed = time.perf_counter() - t0
    dist.meta.update(reps=len(daa.reps), wall_time_s=round(elapsed, 6))
    print(
        f"reps={len(daa.reps)} daa_states={daa.n_states} paa_states={paa.n_states} wall_time_s={elapsed:.3f}",
        file=sys.stderr,
    )
    _emit_distribution(args, dist, out)


def cmd_brute(args, out) -> None:
    model = _model(args, required=True)
    pattern = _pattern(args, model.alphabet)
    dist = brute_distribution(pattern, args.algo, model, _check_n(args.n))
    _emit_distribution(args, dist, out)


def cmd_simulate(args, out) -> None:
    model = _model(args, required=True)
    pattern = _pattern(args, model.alphabet)
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    emp = monte_carlo(pattern, args.algo, model, _check_n(args.n), args.samples, args.seed)
    _emit_distribution(args, emp.to_distribution(args.n), out)


def cmd_trace(args, out) -> None:
    model = _model(args, required=False)
    alphabet = _alphabet(args, model, args.pattern, args.text)
    pattern = _pattern(args, alphabet)
    try:
        text = alphabet.encode(args.text)
    except ValueError as exc:
        raise UsageError(f"text: {exc}") from None
    trace = run_matcher(args.algo, pattern, text)
    m = pattern.m
    if args.format == "structured":
        doc = {
            "algorithm": Algorithm.parse(args.algo).value,
            "pattern": args.pattern,
            "text": args.text,
            "windows": [
                {
                    "start": e.start,
                    "window": args.text[e.start:e.start + m],
                    "cost": e.verdict.cost,
                    "shift": e.verdict.shift,
                    "match": e.is_match,
                }
                for e in trace.entries
            ],
            "total_cost": trace.total_cost,
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    out.write("start\twindow\tcost\tshift\tmatch\n")
    for e in trace.entries:
        window = args.text[e.start:e.start + m]
        out.write(f"{e.start}\t{window}\t{e.verdict.cost}\t{e.verdict.shift}\t{int(e.is_match)}\n")
    out.write(f"total\t{trace.total_cost}\n")


def cmd_states(args, out) -> None:
    model = _model(args, required=False)
    alphabet = _alphabet(args, model, args.pattern)
    pattern = _pattern(args, alphabet)
    daa = build_reduced_daa(pattern, args.algo)
    m, sigma = pattern.m, pattern.sigma
    report = {
        "pattern": args.pattern,
        "algorithm": daa.algorithm.value,
        "m": m,
        "sigma": sigma,
        "closure": daa.reps.kind,
        "reps": len(daa.reps),
        "refined_reps": len(daa.reps.refinement),
        "daa_states_total": daa.nominal_states,
        "daa_states_reachable": daa.n_states,
        "cubic_bound": (m * (m + 1) // 2 + 1) * (m + 1),
        "naive_bound": sigma**m * (m + 1),
    }
    if model is not None:
        report["contexts"] = model.n_contexts
        report["paa_states"] = induce_paa(daa, model).n_states
    out.write(json.dumps(report, indent=2) + "\n")


def cmd_rate(args, out) -> None:
    model = _model(args, required=True)
    pattern = _pattern(args, model.alphabet)
    if args.horizon < 2 * pattern.m:
        raise UsageError(f"--horizon must be at least 2m = {2 * pattern.m}")
    est = rate_estimate(induce_paa(build_reduced_daa(pattern, args.algo), model), args.horizon)
    report = {
        "pattern": args.pattern,
        "algorithm": Algorithm.parse(args.algo).value,
        "model": model.name,
        "rate": est.rate,
        "horizon": est.horizon,
        "expectation_n": est.expectation_n,
        "expectation_2n": est.expectation_2n,
        "next_rate": est.next_rate,
        "converged": est.converged,
        "heuristic": True,
    }
    out.write(json.dumps(report, indent=2) + "\n")


def cmd_dump(args, out) -> None:
    model = _model(args, required=False)
    alphabet = _alphabet(args, model, args.pattern)
    out.write(dump_daa(build_reduced_daa(_pattern(args, alphabet), args.algo)))


def _algorithm(text: str) -> str:
    try:
        return Algorithm.parse(text).value
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="accesscount",
        description="Exact character-access count distributions of window-based string matchers.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, model=True, n=True, fmt=("structured", "csv")):
        p.add_argument("--pattern", required=True)
        p.add_argument("--algo", type=_algorithm, default="bmh", help="bm, bmh, bndm or bom")
        if model:
            p.add_argument("--model", help="iid:a=0.5,b=0.5 | markov:INIT;HIST>SYM=P,... | path to a model document")
        p.add_argument("--alphabet", help="alphabet symbols when no model is given, e.g. acgt")
        if n:
            p.add_argument("--n", type=int, required=True, help="text length")
        p.add_argument("--format", choices=fmt, default=fmt[0])

    p = sub.add_parser("analyze", help="exact distribution via the reduced automaton")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("brute", help="exact distribution by enumerating all texts")
    common(p)
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("simulate", help="Monte Carlo estimate")
    common(p)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("trace", help="windows visited on an explicit text")
    common(p, n=False, fmt=("text", "structured"))
    p.add_argument("--text", required=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("states", help="state-space sizes")
    common(p, n=False, fmt=("structured",))
    p.set_defaults(func=cmd_states)

    p = sub.add_parser("rate", help="heuristic long-run accesses per character")
    common(p, n=False, fmt=("structured",))
    p.add_argument("--horizon", type=int, default=1000)
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("dump", help="line-oriented listing of the reduced automaton")
    common(p, n=False, fmt=("text",))
    p.set_defaults(func=cmd_dump)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except guards.GuardExceeded as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ModelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
