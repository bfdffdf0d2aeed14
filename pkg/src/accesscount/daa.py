"""Deterministic arithmetic automata that add up per-window costs.

A state is a pair ``(key, k)``: ``key`` identifies the last ``m`` characters
read (a full window for the naive encoding, a representative index for the
reduced one) and ``k`` counts characters left until the current window ends.
Entering a state with ``k == 0`` emits the cost of the window just completed;
every other state emits 0.  Only states reachable from the start are stored.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Callable, Hashable, Iterator, Sequence

import numpy as np

from . import guards
from .matchers import Algorithm, Pattern, window_verdict
from .representatives import RepSet, closure_for


@dataclass(eq=False)
class DAA:
    pattern: Pattern
    algorithm: Algorithm
    states: list[tuple[Hashable, int]]
    delta: np.ndarray
    emission: np.ndarray
    nominal_states: int
    reps: RepSet | None = None
    start: int = 0

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def sigma(self) -> int:
        return self.pattern.sigma

    @property
    def counter(self) -> np.ndarray:
        return np.array([k for _, k in self.states], dtype=np.int64)

    def state_label(self, q: int) -> str:
        key, k = self.states[q]
        if self.reps is not None:
            text = self.reps.label(key)
        else:
            text = self.pattern.alphabet.decode(key)
        return f"({text or 'ε'},{k})"

    def find(self, key: Hashable, k: int) -> int:
        return self.states.index((key, k))

    def value(self, text: Sequence[int]) -> int:
        return daa_value(self, text)

    def dump(self) -> str:
        return dump_daa(self)


def _explore(start, sigma: int, step: Callable, emit: Callable):
    ids = {start: 0}
    order = [start]
    rows: list[list[int]] = []
    queue = deque([start])
    while queue:
        key = queue.popleft()
        row = []
        for c in range(sigma):
            nxt = step(key, c)
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            row.append(ids[nxt])
        rows.append(row)
    delta = np.array(rows, dtype=np.int64).reshape(len(order), sigma)
    emission = np.array([emit(key) for key in order], dtype=np.int64)
    return order, delta, emission


def build_naive_daa(pattern: Pattern, algorithm: Algorithm | str, budget: int | None = None) -> DAA:
    """Encoding over all windows of length m (test oracle; guarded)."""
    algorithm = Algorithm.parse(algorithm)
    m, sigma = pattern.m, pattern.sigma
    nominal = sigma**m * (m + 1)
    guards.check(guards.NAIVE_STATES, nominal, "naive DAA states", budget)

    def step(state, c):
        window, k = state
        nxt = window[1:] + (c,)
        if k > 0:
            return nxt, k - 1
        return nxt, window_verdict(algorithm, pattern, window).shift - 1

    def emit(state):
        window, k = state
        return window_verdict(algorithm, pattern, window).cost if k == 0 else 0

    order, delta, emission = _explore((pattern.symbols, m), sigma, step, emit)
    return DAA(pattern, algorithm, order, delta, emission, nominal)


class MissingAnnotation(KeyError):
    pass


def reduced_step(repset: RepSet, r: int, k: int, c: int) -> tuple[int, int]:
    nxt = int(repset.delta[r, c])
    if k > 0:
        return nxt, k - 1
    if r not in repset.annotations:
        raise MissingAnnotation(f"no annotation for reachable state ({repset.label(r) or 'ε'},0)")
    return nxt, repset.annotations[r].shift - 1


def build_reduced_daa(pattern: Pattern, algorithm: Algorithm | str, repset: RepSet | None = None) -> DAA:
    algorithm = Algorithm.parse(algorithm)
    if repset is None:
        repset = closure_for(pattern, algorithm)
    if repset.algorithm is not algorithm or repset.pattern != pattern:
        raise ValueError("representative set is not annotated for this pattern and algorithm")
    m = pattern.m
    start = (repset.index[pattern.symbols], m)

    def step(state, c):
        return reduced_step(repset, state[0], state[1], c)

    def emit(state):
        r, k = state
        return repset.verdict(r).cost if k == 0 else 0

    order, delta, emission = _explore(start, pattern.sigma, step, emit)
    return DAA(pattern, algorithm, order, delta, emission, len(repset) * (m + 1), reps=repset)


def product_edges(repset: RepSet) -> Iterator[tuple[tuple[int, int], int, tuple[int, int]]]:
    """All edges of the full product R x {0..m}, reachable or not.

    States ``(r, 0)`` whose representative never ends a window have no
    defined shift and are skipped.
    """
    m = repset.pattern.m
    for r, k in product(range(len(repset)), range(m + 1)):
        if k == 0 and r not in repset.annotations:
            continue
        for c in range(repset.pattern.sigma):
            yield (r, k), c, reduced_step(repset, r, k, c)


def daa_value(daa: DAA, text: Sequence[int]) -> int:
    q = daa.start
    v = 0
    for c in text:
        if not 0 <= c < daa.sigma:
            raise ValueError(f"symbol index {c} outside alphabet of size {daa.sigma}")
        q = int(daa.delta[q, c])
        v += int(daa.emission[q])
    return v


def dump_daa(daa: DAA) -> str:
    """Line-oriented listing: id, key, k, successor per symbol, emission."""
    symbols = daa.pattern.alphabet.symbols
    lines = ["# id key k " + " ".join(f"on_{s}" for s in symbols) + " emission"]
    for q, (key, k) in enumerate(daa.states):
        text = daa.reps.label(key) if daa.reps is not None else daa.pattern.alphabet.decode(key)
        succ = " ".join(str(int(x)) for x in daa.delta[q])
        lines.append(f"{q} {text or 'ε'} {k} {succ} {int(daa.emission[q])}")
    return "\n".join(lines) + "\n"
