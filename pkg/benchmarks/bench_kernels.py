"""Compare the numba and numpy DP kernels on a few desk-scale products.

    python3 benchmarks/bench_kernels.py [--repeat 3]

The first numba call includes compilation (or a cache load); it is timed
separately as "warmup".
"""
import argparse
import time

import numpy as np

from accesscount import _kernels
from accesscount.daa import build_reduced_daa
from accesscount.matchers import Alphabet, Pattern
from accesscount.paa import distribution, induce_paa
from accesscount.textmodel import markov_model, uniform_model


def cases():
    rng = np.random.default_rng(0)
    ab, dna = Alphabet("ab"), Alphabet("acgt")
    m1 = markov_model(ab, 1, [0.5, 0.5], {(0,): [0.7, 0.3], (1,): [0.4, 0.6]})
    m2 = markov_model(dna, 1, [0.25] * 4, {(h,): rng.dirichlet(np.ones(4)) for h in range(4)})
    yield "bmh m=10 ab markov1 n=200", Pattern(ab, tuple(rng.integers(0, 2, 10))), "bmh", m1, 200
    yield "bm  m=8  acgt markov1 n=150", Pattern(dna, tuple(rng.integers(0, 4, 8))), "bm", m2, 150
    yield "bom m=10 acgt uniform n=200", Pattern(dna, tuple(rng.integers(0, 4, 10))), "bom", uniform_model(dna), 200


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _kernels.numba is None:
        print("numba not installed; only the numpy path is available")
    print(f"{'case':32s} {'states':>7s} {'numpy s':>9s} {'numba s':>9s} {'warmup s':>9s} {'speedup':>8s} {'max|diff|':>10s}")
    for label, pattern, algo, model, n in cases():
        paa = induce_paa(build_reduced_daa(pattern, algo), model)
        t_np, d_np = best_of(lambda: distribution(paa, n, use_numba=False), args.repeat)
        if _kernels.numba is None:
            print(f"{label:32s} {paa.n_states:7d} {t_np:9.3f}")
            continue
        t0 = time.perf_counter()
        distribution(paa, n, use_numba=True)
        warm = time.perf_counter() - t0
        t_nb, d_nb = best_of(lambda: distribution(paa, n, use_numba=True), args.repeat)
        diff = max(abs(d_np.pmf.get(v, 0.0) - d_nb.pmf.get(v, 0.0)) for v in d_np.pmf.keys() | d_nb.pmf.keys())
        print(f"{label:32s} {paa.n_states:7d} {t_np:9.3f} {t_nb:9.3f} {warm:9.3f} {t_np / t_nb:8.1f} {diff:10.1e}")


if __name__ == "__main__":
    main()
