"""Ground truth independent of the automata: exhaustive enumeration of all
texts of length n, and seeded Monte Carlo simulation.  Both replay the
reference matcher on concrete texts.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from . import guards
from .matchers import Algorithm, Pattern, run_matcher
from .paa import Distribution
from .textmodel import TextModel, sample_texts


def brute_distribution(
    pattern: Pattern, algorithm: Algorithm | str, model: TextModel, n: int, budget: int | None = None
) -> Distribution:
    algorithm = Algorithm.parse(algorithm)
    if pattern.alphabet != model.alphabet:
        raise ValueError("pattern and model alphabets differ")
    if n < 0:
        raise ValueError("text length must be nonnegative")
    sigma = pattern.sigma
    guards.check(guards.BRUTE_TEXTS, sigma**n, "texts to enumerate", budget)
    kernel = model.kernel
    acc: dict[int, float] = {}

    # depth-first in lexicographic order, carrying forward vectors per prefix
    alpha0 = np.zeros(model.n_contexts)
    alpha0[model.start] = 1.0
    stack = [((), alpha0)]
    while stack:
        prefix, alpha = stack.pop()
        if len(prefix) == n:
            p = float(alpha.sum())
            if p > 0.0:
                cost = run_matcher(algorithm, pattern, prefix).total_cost
                acc[cost] = acc.get(cost, 0.0) + p
            continue
        for c in range(sigma - 1, -1, -1):
            stack.append((prefix + (c,), alpha @ kernel[:, c, :]))
    meta = {"algorithm": algorithm.value, "pattern": str(pattern), "model": model.name, "oracle": True}
    return Distribution(dict(sorted(acc.items())), n, meta)


@dataclass
class EmpiricalDistribution:
    counts: dict[int, int]
    samples: int
    meta: dict = field(default_factory=dict)

    @property
    def pmf(self) -> dict[int, float]:
        return {v: c / self.samples for v, c in sorted(self.counts.items())}

    def to_distribution(self, n: int) -> Distribution:
        return Distribution(self.pmf, n, dict(self.meta))


def monte_carlo(
    pattern: Pattern,
    algorithm: Algorithm | str,
    model: TextModel,
    n: int,
    samples: int,
    seed: int | None = None,
) -> EmpiricalDistribution:
    algorithm = Algorithm.parse(algorithm)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if pattern.alphabet != model.alphabet:
        raise ValueError("pattern and model alphabets differ")
    texts = sample_texts(model, n, samples, seed)
    counts: Counter[int] = Counter()
    if n == 0:
        counts[0] = samples
    else:
        uniq, mult = np.unique(texts, axis=0, return_counts=True)
        for row, k in zip(uniq, mult):
            counts[run_matcher(algorithm, pattern, tuple(int(c) for c in row)).total_cost] += int(k)
    meta = {
        "algorithm": algorithm.value,
        "pattern": str(pattern),
        "model": model.name,
        "empirical": True,
        "samples": samples,
        "seed": seed,
    }
    return EmpiricalDistribution(dict(sorted(counts.items())), samples, meta)


def _as_pmf(d) -> Mapping[int, float]:
    if isinstance(d, Mapping):
        return d
    return d.pmf


def tv_distance(d1, d2) -> float:
    p, q = _as_pmf(d1), _as_pmf(d2)
    return 0.5 * math.fsum(abs(p.get(v, 0.0) - q.get(v, 0.0)) for v in set(p) | set(q))
