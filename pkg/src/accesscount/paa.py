"""Product of a cost-counting DAA with a text model, and the exact
distribution of the total number of character accesses.
"""
from __future__ import annotations

import io
import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from . import _kernels, guards
from .daa import DAA
from .textmodel import TextModel

NORMALIZATION_TOL = 1e-9
RATE_TOL = 1e-3


@dataclass(eq=False)
class PAA:
    daa: DAA
    model: TextModel
    states: list[tuple[int, int]]
    src: np.ndarray
    dst: np.ndarray
    prob: np.ndarray
    emission: np.ndarray
    start: int = 0

    @property
    def n_states(self) -> int:
        return len(self.states)

    def transitions(self) -> dict[tuple[int, int], float]:
        return {(int(s), int(d)): float(p) for s, d, p in zip(self.src, self.dst, self.prob)}

    def state_label(self, i: int) -> str:
        q, c = self.states[i]
        return f"({self.daa.state_label(q)},{self.model.context_names[c]})"

    def find(self, q: int, c: int) -> int:
        return self.states.index((q, c))


def induce_paa(daa: DAA, model: TextModel) -> PAA:
    if daa.pattern.alphabet != model.alphabet:
        raise ValueError(
            f"alphabet mismatch: DAA over {''.join(daa.pattern.alphabet.symbols)!r}, "
            f"model over {''.join(model.alphabet.symbols)!r}"
        )
    kernel = model.kernel
    start = (daa.start, model.start)
    ids = {start: 0}
    order = [start]
    edges: dict[tuple[int, int], float] = {}
    queue = deque([start])
    while queue:
        q, c = queue.popleft()
        here = ids[(q, c)]
        for s, c2 in zip(*np.nonzero(kernel[c])):
            nxt = (int(daa.delta[q, s]), int(c2))
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            key = (here, ids[nxt])
            edges[key] = edges.get(key, 0.0) + float(kernel[c, s, c2])
    items = sorted(edges.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    src = np.array([k[0] for k, _ in items], dtype=np.int64)
    dst = np.array([k[1] for k, _ in items], dtype=np.int64)
    prob = np.array([p for _, p in items], dtype=np.float64)
    emission = np.array([daa.emission[q] for q, _ in order], dtype=np.int64)
    return PAA(daa, model, order, src, dst, prob, emission)


@dataclass
class Distribution:
    pmf: dict[int, float]
    n: int
    meta: dict[str, Any] = field(default_factory=dict)

    def total(self) -> float:
        return math.fsum(self.pmf.values())

    def mean(self) -> float:
        return moments(self)[0]

    def variance(self) -> float:
        return moments(self)[1]

    def to_csv(self) -> str:
        return distribution_to_csv(self)

    def to_document(self) -> dict:
        return distribution_to_document(self)


def value_bound(n: int, m: int) -> int:
    """Largest possible total cost: every window costs at most m."""
    return (n - m + 1) * m if n >= m else 0


def distribution(paa: PAA, n: int, use_numba: bool | None = None) -> Distribution:
    if n < 0:
        raise ValueError("text length must be nonnegative")
    m = paa.daa.pattern.m
    vmax = value_bound(n, m)
    max_em = int(paa.emission.max()) if paa.n_states else 0
    guards.check(guards.DP_CELLS, paa.n_states * (vmax + max_em + 1), "DP table cells")
    probs = _kernels.value_distribution(
        paa.n_states, paa.src, paa.dst, paa.prob, paa.emission, paa.start, n, vmax, max_em, use_numba=use_numba
    )
    pmf = {int(v): float(p) for v, p in enumerate(probs) if p > 0.0}
    meta = {
        "algorithm": paa.daa.algorithm.value,
        "pattern": str(paa.daa.pattern),
        "model": paa.model.name,
        "daa_states": paa.daa.n_states,
        "paa_states": paa.n_states,
    }
    return Distribution(pmf, n, meta)


def moments(dist: Distribution | Mapping[int, float]) -> tuple[float, float]:
    pmf = dist.pmf if isinstance(dist, Distribution) else dist
    mean = math.fsum(v * p for v, p in pmf.items())
    second = math.fsum(v * v * p for v, p in pmf.items())
    var = second - mean * mean
    if var < 0:
        if var < -1e-9 * max(1.0, second):
            raise ValueError(f"negative variance {var!r}; distribution is not normalized")
        var = 0.0
    return mean, var


@dataclass(frozen=True)
class RateEstimate:
    """Finite-horizon estimate of the long-run accesses per text character.

    ``rate = (E[X_2N] - E[X_N]) / N``; ``next_rate`` repeats the estimate at
    horizon 2N and ``converged`` says whether the two agree within 1e-3.
    """

    rate: float
    horizon: int
    expectation_n: float
    expectation_2n: float
    next_rate: float
    converged: bool
    heuristic: bool = True


def rate_estimate(paa: PAA, horizon: int, use_numba: bool | None = None) -> RateEstimate:
    m = paa.daa.pattern.m
    if horizon < 2 * m:
        raise ValueError(f"horizon must be at least 2m = {2 * m}")
    acc = _kernels.expected_values(
        paa.n_states, paa.src, paa.dst, paa.prob, paa.emission, paa.start, 4 * horizon, use_numba=use_numba
    )
    e1, e2, e4 = float(acc[horizon]), float(acc[2 * horizon]), float(acc[4 * horizon])
    rate = (e2 - e1) / horizon
    nxt = (e4 - e2) / (2 * horizon)
    return RateEstimate(rate, horizon, e1, e2, nxt, abs(rate - nxt) <= RATE_TOL)


def mean_rate(paa: PAA, horizon: int) -> float:
    return rate_estimate(paa, horizon).rate


# -- serialization ----------------------------------------------------------

DISTRIBUTION_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["n", "pmf", "mean", "variance"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "algorithm": {"enum": ["bm", "bmh", "bndm", "bom"]},
        "pattern": {"type": "string", "minLength": 1},
        "model": {"type": "string"},
        "mean": {"type": "number"},
        "variance": {"type": "number", "minimum": 0},
        "oracle": {"type": "boolean"},
        "empirical": {"type": "boolean"},
        "samples": {"type": "integer", "minimum": 1},
        "seed": {"type": ["integer", "null"]},
        "pmf": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "integer", "minimum": 0}, {"type": "number", "minimum": 0, "maximum": 1}],
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
}


def distribution_to_csv(dist: Distribution) -> str:
    buf = io.StringIO()
    buf.write("value,probability\n")
    for v in sorted(dist.pmf):
        buf.write(f"{v},{dist.pmf[v]!r}\n")
    return buf.getvalue()


def distribution_to_document(dist: Distribution) -> dict:
    mean, var = moments(dist)
    doc = dict(dist.meta)
    doc.update(n=dist.n, mean=mean, variance=var, pmf=[[v, dist.pmf[v]] for v in sorted(dist.pmf)])
    return doc


def distribution_from_document(doc: Mapping) -> Distribution:
    meta = {k: v for k, v in doc.items() if k not in ("n", "pmf", "mean", "variance")}
    return Distribution({int(v): float(p) for v, p in doc["pmf"]}, int(doc["n"]), meta)


def distribution_from_csv(text: str, n: int) -> Distribution:
    lines = [ln for ln in text.strip().splitlines() if ln]
    if not lines or lines[0] != "value,probability":
        raise ValueError("missing value,probability header")
    pmf = {}
    for ln in lines[1:]:
        v, p = ln.split(",")
        pmf[int(v)] = float(p)
    return Distribution(pmf, n)


def dumps_document(dist: Distribution) -> str:
    return json.dumps(distribution_to_document(dist), indent=2, sort_keys=True) + "\n"
