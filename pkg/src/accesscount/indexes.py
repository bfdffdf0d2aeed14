"""Deterministic string indexes over the reversed pattern.

Both indexes store transitions as a dense ``(states, sigma)`` integer table
with ``-1`` standing for the FAIL state.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

FAIL = -1


@dataclass(frozen=True, eq=False)
class SuffixAutomaton:
    source: tuple[int, ...]
    sigma: int
    transitions: np.ndarray
    accepting: np.ndarray
    suffix_links: np.ndarray
    initial: int = 0

    @property
    def n_states(self) -> int:
        return self.transitions.shape[0]

    @property
    def n_transitions(self) -> int:
        return int((self.transitions >= 0).sum())

    def next(self, state: int, symbol: int) -> int:
        return int(self.transitions[state, symbol])

    def run(self, seq: Sequence[int]) -> int:
        """Final state after reading ``seq``, or FAIL."""
        state = self.initial
        for c in seq:
            state = int(self.transitions[state, c])
            if state < 0:
                return FAIL
        return state

    def accepts(self, seq: Sequence[int]) -> bool:
        state = self.run(seq)
        return state >= 0 and bool(self.accepting[state])


@dataclass(frozen=True, eq=False)
class FactorOracle:
    source: tuple[int, ...]
    sigma: int
    transitions: np.ndarray
    supply: np.ndarray
    initial: int = 0

    @property
    def n_states(self) -> int:
        return self.transitions.shape[0]

    def next(self, state: int, symbol: int) -> int:
        return int(self.transitions[state, symbol])

    def run(self, seq: Sequence[int]) -> int:
        state = self.initial
        for c in seq:
            state = int(self.transitions[state, c])
            if state < 0:
                return FAIL
        return state

    def accepts(self, seq: Sequence[int]) -> bool:
        # every non-FAIL state of an oracle is terminal
        return self.run(seq) >= 0


def _sigma_of(x: Sequence[int], sigma: int | None) -> int:
    if sigma is None:
        return max(x) + 1
    if min(x) < 0 or max(x) >= sigma:
        raise ValueError(f"symbol outside alphabet of size {sigma}")
    return sigma


def build_suffix_automaton(x: Sequence[int], sigma: int | None = None) -> SuffixAutomaton:
    """Online construction with suffix links (minimal DAWG of ``x``)."""
    x = tuple(int(c) for c in x)
    if not x:
        raise ValueError("cannot build a suffix automaton of the empty string")
    sigma = _sigma_of(x, sigma)
    cap = 2 * len(x) + 1
    trans = np.full((cap, sigma), FAIL, dtype=np.int64)
    link = np.full(cap, FAIL, dtype=np.int64)
    length = np.zeros(cap, dtype=np.int64)
    size = 1
    last = 0
    for c in x:
        cur = size
        size += 1
        length[cur] = length[last] + 1
        p = last
        while p != FAIL and trans[p, c] == FAIL:
            trans[p, c] = cur
            p = link[p]
        if p == FAIL:
            link[cur] = 0
        else:
            q = trans[p, c]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = size
                size += 1
                length[clone] = length[p] + 1
                trans[clone] = trans[q]
                link[clone] = link[q]
                while p != FAIL and trans[p, c] == q:
                    trans[p, c] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur
    accepting = np.zeros(size, dtype=bool)
    p = last
    while p != FAIL:
        accepting[p] = True
        p = link[p]
    return SuffixAutomaton(
        source=x,
        sigma=sigma,
        transitions=trans[:size].copy(),
        accepting=accepting,
        suffix_links=link[:size].copy(),
    )


def build_factor_oracle(x: Sequence[int], sigma: int | None = None) -> FactorOracle:
    """Online factor-oracle construction with supply links."""
    x = tuple(int(c) for c in x)
    if not x:
        raise ValueError("cannot build a factor oracle of the empty string")
    sigma = _sigma_of(x, sigma)
    m = len(x)
    trans = np.full((m + 1, sigma), FAIL, dtype=np.int64)
    supply = np.full(m + 1, FAIL, dtype=np.int64)
    for i in range(1, m + 1):
        c = x[i - 1]
        trans[i - 1, c] = i
        k = supply[i - 1]
        while k != FAIL and trans[k, c] == FAIL:
            trans[k, c] = i
            k = supply[k]
        supply[i] = 0 if k == FAIL else trans[k, c]
    return FactorOracle(source=x, sigma=sigma, transitions=trans, supply=supply)


def count_transitions_before_fail(index, seq: Sequence[int]) -> int:
    state = index.initial
    count = 0
    for c in seq:
        state = int(index.transitions[state, c])
        if state < 0:
            break
        count += 1
    return count


@lru_cache(maxsize=256)
def suffix_automaton_for(pattern) -> SuffixAutomaton:
    """Suffix automaton of the reversed pattern (cached per pattern)."""
    return build_suffix_automaton(pattern.symbols[::-1], pattern.sigma)


@lru_cache(maxsize=256)
def factor_oracle_for(pattern) -> FactorOracle:
    """Factor oracle of the reversed pattern (cached per pattern)."""
    return build_factor_oracle(pattern.symbols[::-1], pattern.sigma)
