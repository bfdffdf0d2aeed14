"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line
that the terminal summary prints at the end of the run."""
import io
import json
import random
import time
from itertools import product

import numpy as np

from accesscount.cli import main
from accesscount.daa import build_naive_daa, build_reduced_daa
from accesscount.matchers import Algorithm, Alphabet, Pattern, bmh_verdict, run_matcher
from accesscount.oracle import brute_distribution, monte_carlo, tv_distance
from accesscount.paa import distribution, distribution_from_document, induce_paa
from accesscount.representatives import closure_for, oracle_closure
from accesscount.textmodel import load_model, uniform_model

from conftest import ACCEPTANCE_RESULTS, AB, DATA, all_patterns, enc, pat
from test_daa import AA_BMH_EDGES, labelled_edges
from test_indexes import check_factor_oracle, check_suffix_automaton
from test_paa import AA_BMH_TWO_CONTEXT_EDGES

# m = 1, 2, 3 over {a, b}: 2 + 4 + 8 = 14 patterns
GRID_PATTERNS = list(all_patterns(2, (1, 2, 3)))


def record(k, ok, detail, elapsed=None, limit=None):
    if limit is not None:
        detail = f"{detail}; {elapsed:.2f}s (limit {limit}s)"
        ok = ok and elapsed < limit
    ACCEPTANCE_RESULTS[k] = (ok, detail)
    assert ok, detail


def test_criterion_01_bmh_verdicts_and_trace():
    t0 = time.perf_counter()
    pattern = pat("aa")
    got = {window: (bmh_verdict(pattern, enc(window)).cost, bmh_verdict(pattern, enc(window)).shift) for window in ("aa", "ab", "ba", "bb")}
    want = {"aa": (2, 1), "ba": (2, 1), "ab": (1, 2), "bb": (1, 2)}
    trace = run_matcher("bmh", pattern, enc("abbaa"))
    ok = got == want and trace.starts == [0, 2, 3] and trace.total_cost == 5
    record(1, ok, f"verdicts {got}, starts {trace.starts}, total {trace.total_cost}", time.perf_counter() - t0, 1)


def test_criterion_02_reduced_bmh_automaton():
    t0 = time.perf_counter()
    repset = closure_for(pat("aa"), "bmh")
    daa = build_reduced_daa(pat("aa"), "bmh", repset)
    edges = labelled_edges(repset)
    ok = daa.nominal_states == 9 and daa.n_states == 7 and edges == AA_BMH_EDGES
    record(2, ok, f"{daa.nominal_states} states, {daa.n_states} reachable, {len(edges)}/18 edges match",
           time.perf_counter() - t0, 1)


def test_criterion_03_two_context_product():
    t0 = time.perf_counter()
    model = load_model(DATA / "two_context.json")
    paa = induce_paa(build_reduced_daa(pat("aa"), "bmh"), model)
    edges = {(paa.state_label(s), paa.state_label(d)): p for (s, d), p in paa.transitions().items()}
    ok = (paa.n_states == 7 and edges.keys() == AA_BMH_TWO_CONTEXT_EDGES.keys()
          and all(abs(edges[k] - p) <= 1e-15 for k, p in AA_BMH_TWO_CONTEXT_EDGES.items()))
    record(3, ok, f"{paa.n_states} product states, {len(edges)} edges", time.perf_counter() - t0, 1)


def test_criterion_04_exact_equals_enumeration():
    t0 = time.perf_counter()
    models = [uniform_model(AB), load_model(DATA / "two_context.json")]
    worst, cases = 0.0, 0
    for pattern in GRID_PATTERNS:
        for algo in Algorithm:
            for model in models:
                paa = induce_paa(build_reduced_daa(pattern, algo), model)
                for n in range(9):
                    worst = max(worst, tv_distance(distribution(paa, n), brute_distribution(pattern, algo, model, n)))
                    cases += 1
    record(4, worst <= 1e-10, f"{len(GRID_PATTERNS)} patterns, {cases} cases, worst TV {worst:.2e}",
           time.perf_counter() - t0, 120)


def test_criterion_05_triple_equality():
    t0 = time.perf_counter()
    rng = random.Random(2024)
    checked = bad = 0
    for pattern in GRID_PATTERNS:
        for algo in Algorithm:
            naive, reduced = build_naive_daa(pattern, algo), build_reduced_daa(pattern, algo)
            for _ in range(200):
                text = tuple(rng.randrange(2) for _ in range(rng.randint(0, 12)))
                a, b, c = naive.value(text), reduced.value(text), run_matcher(algo, pattern, text).total_cost
                bad += not (a == b == c)
                checked += 1
    record(5, bad == 0, f"{checked} texts, {bad} disagreements", time.perf_counter() - t0, 30)


def test_criterion_06_concrete_pmf():
    paa = induce_paa(build_reduced_daa(pat("aa"), "bmh"), uniform_model(AB))
    d = distribution(paa, 3)
    want = {1: 0.5, 3: 0.25, 4: 0.25}
    ok = d.pmf.keys() == want.keys() and all(abs(d.pmf[v] - p) <= 1e-10 for v, p in want.items())
    ok = ok and abs(d.mean() - 2.25) <= 1e-10
    record(6, ok, f"pmf {d.pmf}, mean {d.mean()}")


def test_criterion_07_state_space_bound():
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    worst, fo_sizes, ok = 0.0, [], True
    for sigma in (2, 4):
        A = Alphabet("abcd"[:sigma])
        for m in range(2, 13):
            for _ in range(5):
                pattern = Pattern(A, tuple(int(x) for x in rng.integers(0, sigma, m)))
                bound = (m * (m + 1) // 2 + 1) * (m + 1)
                for algo in (Algorithm.BM, Algorithm.BMH, Algorithm.BNDM):
                    states = build_reduced_daa(pattern, algo).n_states
                    ok &= states <= bound
                    worst = max(worst, states / bound)
                fo = len(oracle_closure(pattern))
                fo_sizes.append(fo)
                ok &= build_reduced_daa(pattern, "bom").n_states <= fo * (m + 1)
    record(7, ok, f"worst reachable/bound {worst:.3f}; oracle closure sizes {min(fo_sizes)} to {max(fo_sizes)}",
           time.perf_counter() - t0, 30)


def test_criterion_08_index_correctness():
    t0 = time.perf_counter()
    count, failure = 0, None
    for sigma in (1, 2, 3):
        for m in range(1, 9):
            for x in product(range(sigma), repeat=m):
                try:
                    check_suffix_automaton(x, sigma)
                    check_factor_oracle(x, sigma)
                except AssertionError:
                    failure = failure or x
                count += 1
    detail = f"{count} strings checked" + (f", first failure {failure}" if failure else "")
    record(8, failure is None, detail, time.perf_counter() - t0, 60)


def test_criterion_09_monte_carlo():
    t0 = time.perf_counter()
    model = uniform_model(AB)
    exact = distribution(induce_paa(build_reduced_daa(pat("aa"), "bmh"), model), 3)
    emp = monte_carlo(pat("aa"), "bmh", model, 3, 100_000, seed=0)
    tv = tv_distance(exact, emp)
    record(9, tv <= 0.02, f"TV {tv:.4f}", time.perf_counter() - t0, 10)


def test_criterion_10_desk_scale_analyze():
    rng = np.random.default_rng(10)
    pattern = "".join(rng.choice(["a", "b"], 10))
    rows = rng.dirichlet(np.ones(2), 2)
    spec = "markov:a=0.5,b=0.5;" + ",".join(
        f"{h}>{s}={float(rows[i][j])!r}" for i, h in enumerate("ab") for j, s in enumerate("ab")
    )
    out = io.StringIO()
    t0 = time.perf_counter()
    code = main(["analyze", "--pattern", pattern, "--algo", "bmh", "--model", spec, "--n", "200"], out=out)
    elapsed = time.perf_counter() - t0
    total = distribution_from_document(json.loads(out.getvalue())).total() if code == 0 else float("nan")
    record(10, code == 0 and abs(total - 1.0) <= 1e-9, f"pattern {pattern}, mass {total!r}", elapsed, 60)
