"""Window representatives: the substring closure of the pattern for BM, BMH
and B(N)DM, and the factor-oracle closure for BOM.

A window is represented by its longest suffix that belongs to the closure.
Both closures are factor-closed, so the representative of a shifted window
is the longest suffix of ``r + (symbol,)`` that is itself a representative.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .indexes import factor_oracle_for
from .matchers import Algorithm, Pattern, WindowVerdict, window_verdict

log = logging.getLogger(__name__)

SUBSTRING = "substring"
ORACLE = "oracle"

_COMPATIBLE = {
    Algorithm.BM: SUBSTRING,
    Algorithm.BMH: SUBSTRING,
    Algorithm.BNDM: SUBSTRING,
    Algorithm.BOM: ORACLE,
}


class IncompatibleRepresentatives(ValueError):
    """Two windows with the same representative disagree on cost or shift."""


@dataclass(eq=False)
class RepSet:
    pattern: Pattern
    kind: str
    reps: tuple[tuple[int, ...], ...]
    index: dict[tuple[int, ...], int]
    delta: np.ndarray
    annotations: dict[int, WindowVerdict] = field(default_factory=dict)
    algorithm: Algorithm | None = None
    # representatives added because a substring class mixed different BM shifts
    refinement: tuple[tuple[int, ...], ...] = ()

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def empty(self) -> int:
        return self.index[()]

    def label(self, r: int) -> str:
        return self.pattern.alphabet.decode(self.reps[r])

    def lookup(self, s: str) -> int:
        return self.index[self.pattern.alphabet.encode(s)]

    def verdict(self, r: int) -> WindowVerdict:
        try:
            return self.annotations[r]
        except KeyError:
            raise KeyError(f"representative {self.label(r)!r} has no annotation") from None


def rep_of(repset: RepSet, a: Sequence[int]) -> int:
    """Index of the longest suffix of ``a`` contained in ``repset``."""
    a = tuple(a)
    longest = min(len(a), repset.pattern.m)
    for length in range(longest, 0, -1):
        idx = repset.index.get(a[len(a) - length:])
        if idx is not None:
            return idx
    return repset.index[()]


def _build(pattern: Pattern, kind: str, members: Iterable[tuple[int, ...]], refinement=()) -> RepSet:
    reps = tuple(sorted(set(members) | {()}, key=lambda r: (len(r), r)))
    index = {r: i for i, r in enumerate(reps)}
    repset = RepSet(pattern, kind, reps, index, np.empty((0, 0), dtype=np.int64), refinement=tuple(refinement))
    m = pattern.m
    delta = np.empty((len(reps), pattern.sigma), dtype=np.int64)
    for i, r in enumerate(reps):
        for c in range(pattern.sigma):
            delta[i, c] = rep_of(repset, (r + (c,))[-m:])
    repset.delta = delta
    return repset


def substrings(pattern: Pattern) -> set[tuple[int, ...]]:
    s = pattern.symbols
    return {s[i:j] for i in range(pattern.m) for j in range(i + 1, pattern.m + 1)}


def substring_closure(pattern: Pattern) -> RepSet:
    return _build(pattern, SUBSTRING, substrings(pattern))


def oracle_closure(pattern: Pattern) -> RepSet:
    fo = factor_oracle_for(pattern)
    found: set[tuple[int, ...]] = set()
    # each oracle path spells the reversal of one representative
    stack: list[tuple[int, tuple[int, ...]]] = [(fo.initial, ())]
    while stack:
        state, read = stack.pop()
        found.add(read[::-1])
        for c in range(pattern.sigma):
            nxt = fo.next(state, c)
            if nxt >= 0:
                stack.append((nxt, read + (c,)))
    return _build(pattern, ORACLE, found)


def blocking_symbols(repset: RepSet, r: int) -> list[int]:
    """Symbols ``x`` such that ``x + rep`` leaves the closure."""
    rep = repset.reps[r]
    return [x for x in range(repset.pattern.sigma) if (x,) + rep not in repset.index]


def witness_windows(repset: RepSet, r: int, pad: int = 0) -> list[tuple[int, ...]]:
    """One length-m window per blocking symbol whose representative is ``r``.

    Empty when ``r`` is never the representative of a full window.
    """
    pattern = repset.pattern
    rep = repset.reps[r]
    if rep == pattern.symbols:
        return [rep]
    if len(rep) >= pattern.m:
        return []
    fill = (pad,) * (pattern.m - len(rep) - 1)
    return [fill + (x,) + rep for x in blocking_symbols(repset, r)]


def _ambiguous(repset: RepSet, algorithm: Algorithm):
    annotations: dict[int, WindowVerdict] = {}
    conflicts: dict[int, list[int]] = {}
    for r in range(len(repset)):
        witnesses = witness_windows(repset, r)
        if not witnesses:
            continue
        verdicts = [window_verdict(algorithm, repset.pattern, window) for window in witnesses]
        annotations[r] = verdicts[0]
        if any(v != verdicts[0] for v in verdicts[1:]):
            conflicts[r] = blocking_symbols(repset, r)
    return annotations, conflicts


def _refine(repset: RepSet, conflicts: dict[int, list[int]]) -> RepSet:
    # Extending a conflicting class by its blocking symbol (and closing under
    # prefixes) keeps the set factor-closed and pulls the mismatch character
    # inside the representative.
    extra = set()
    for r, xs in conflicts.items():
        rep = repset.reps[r]
        for x in xs:
            for j in range(len(rep) + 1):
                extra.add((x,) + rep[:j])
    extra -= set(repset.reps)
    return _build(repset.pattern, repset.kind, set(repset.reps) | extra, repset.refinement + tuple(sorted(extra)))


def annotate(repset: RepSet, algorithm: Algorithm | str) -> RepSet:
    """Attach the (cost, shift) of every realizable representative."""
    algorithm = Algorithm.parse(algorithm)
    if _COMPATIBLE[algorithm] != repset.kind:
        raise ValueError(f"{algorithm.value} requires the {_COMPATIBLE[algorithm]} closure, got {repset.kind}")
    annotations, conflicts = _ambiguous(repset, algorithm)
    while conflicts:
        if algorithm is not Algorithm.BM:
            labels = ", ".join(repr(repset.label(r)) for r in conflicts)
            raise IncompatibleRepresentatives(f"{algorithm.value}: classes {labels} are not compatible")
        log.warning(
            "pattern %s: BM shift differs within substring classes %s; refining",
            repset.pattern, ", ".join(repr(repset.label(r)) for r in conflicts),
        )
        repset = _refine(repset, conflicts)
        annotations, conflicts = _ambiguous(repset, algorithm)
    return replace(repset, annotations=annotations, algorithm=algorithm)


def closure_for(pattern: Pattern, algorithm: Algorithm | str) -> RepSet:
    """Annotated representative set appropriate for ``algorithm``."""
    algorithm = Algorithm.parse(algorithm)
    repset = oracle_closure(pattern) if algorithm is Algorithm.BOM else substring_closure(pattern)
    return annotate(repset, algorithm)
