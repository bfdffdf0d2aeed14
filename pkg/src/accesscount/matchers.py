"""Per-window cost and shift of BM, BMH, B(N)DM and BOM, plus a reference
sliding-window executor that counts text-character accesses directly.

Windows and patterns are tuples of symbol indices.  ``i`` is always the
1-based mismatch count from the right end of the window, so the mismatching
character sits at position ``m - i``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence


class Algorithm(str, enum.Enum):
    BM = "bm"
    BMH = "bmh"
    BNDM = "bndm"
    BOM = "bom"

    @classmethod
    def parse(cls, name: str | Algorithm) -> Algorithm:
        if isinstance(name, cls):
            return name
        key = str(name).lower()
        if key == "bdm":
            key = "bndm"
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown algorithm {name!r}; expected one of bm, bmh, bndm, bom") from None


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __init__(self, symbols: Sequence[str] | str):
        symbols = tuple(symbols)
        if not symbols:
            raise ValueError("alphabet must contain at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols!r}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} not in alphabet {''.join(self.symbols)!r}") from None

    def symbol(self, i: int) -> str:
        return self.symbols[i]

    def encode(self, text: Sequence[str]) -> tuple[int, ...]:
        return tuple(self.index(c) for c in text)

    def decode(self, seq: Sequence[int]) -> str:
        return "".join(self.symbols[i] for i in seq)


@dataclass(frozen=True)
class Pattern:
    alphabet: Alphabet
    symbols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))
        if not self.symbols:
            raise ValueError("pattern must be nonempty")
        if any(s < 0 or s >= self.alphabet.size for s in self.symbols):
            raise ValueError("pattern symbol index outside alphabet")

    @classmethod
    def from_string(cls, text: str, alphabet: Alphabet | str | None = None) -> Pattern:
        if alphabet is None:
            alphabet = Alphabet(sorted(set(text)))
        elif not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        return cls(alphabet, alphabet.encode(text))

    @property
    def m(self) -> int:
        return len(self.symbols)

    @property
    def sigma(self) -> int:
        return self.alphabet.size

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return self.alphabet.decode(self.symbols)


@dataclass(frozen=True)
class WindowVerdict:
    cost: int
    shift: int


@dataclass(frozen=True)
class TraceEntry:
    start: int
    verdict: WindowVerdict
    is_match: bool


@dataclass
class MatchTrace:
    entries: list[TraceEntry] = field(default_factory=list)
    total_cost: int = 0

    @property
    def starts(self) -> list[int]:
        return [e.start for e in self.entries]


def _check_window(pattern: Pattern, window: Sequence[int]) -> tuple[int, ...]:
    window = tuple(window)
    if len(window) != pattern.m:
        raise ValueError(f"window length {len(window)} differs from pattern length {pattern.m}")
    return window


def _check_index(pattern: Pattern, i: int) -> None:
    if not 1 <= i <= pattern.m:
        raise ValueError(f"mismatch index {i} outside 1..{pattern.m}")


def mismatch_index(pattern: Pattern, window: Sequence[int]) -> int | None:
    """Right-to-left count up to and including the first mismatch; None on a full match."""
    s = pattern.symbols
    m = pattern.m
    for i in range(1, m + 1):
        if window[m - i] != s[m - i]:
            return i
    return None


def bm_cost(pattern: Pattern, window: Sequence[int]) -> int:
    window = _check_window(pattern, window)
    i = mismatch_index(pattern, window)
    return pattern.m if i is None else i


def bad_character(pattern: Pattern, window: Sequence[int], i: int) -> int:
    window = _check_window(pattern, window)
    _check_index(pattern, i)
    s, m = pattern.symbols, pattern.m
    c = window[m - i]
    for k in range(1, m - i + 1):
        if s[m - i - k] == c:
            return k
    return m - i + 1


def good_suffix(pattern: Pattern, window: Sequence[int], i: int, compare_with: str = "pattern") -> int:
    """Good-suffix shift after a mismatch at window position ``m - i``.

    A reoccurrence of the matched suffix at ``k`` only counts if the pattern
    character before it differs from the mismatching one.  ``compare_with``
    picks what it is compared against: ``"pattern"`` (the pattern character
    ``s[m-i]``, as Boyer-Moore does; never skips an occurrence) or ``"text"``
    (the window character ``window[m-i]``; can skip occurrences).  The condition
    is waived at ``k = 0``.
    """
    window = _check_window(pattern, window)
    _check_index(pattern, i)
    if compare_with not in ("pattern", "text"):
        raise ValueError("compare_with must be 'pattern' or 'text'")
    s, m = pattern.symbols, pattern.m
    suffix = window[m - i + 1:]
    banned = s[m - i] if compare_with == "pattern" else window[m - i]
    for k in range(m - i, -1, -1):
        if s[k:k + i - 1] == suffix and (k == 0 or s[k - 1] != banned):
            return m - i - k + 1
    for k in range(i - 2, -1, -1):
        if s[:k + 1] == window[m - k - 1:]:
            return m - k - 1
    return m


def longest_proper_border(seq: Sequence[int]) -> int:
    seq = tuple(seq)
    for b in range(len(seq) - 1, 0, -1):
        if seq[:b] == seq[-b:]:
            return b
    return 0


def bm_verdict(pattern: Pattern, window: Sequence[int]) -> WindowVerdict:
    window = _check_window(pattern, window)
    i = mismatch_index(pattern, window)
    if i is None:
        return WindowVerdict(pattern.m, pattern.m - longest_proper_border(pattern.symbols))
    return WindowVerdict(i, max(bad_character(pattern, window, i), good_suffix(pattern, window, i)))


def bmh_verdict(pattern: Pattern, window: Sequence[int]) -> WindowVerdict:
    window = _check_window(pattern, window)
    return WindowVerdict(bm_cost(pattern, window), bad_character(pattern, window, 1))


def bdm_verdict(pattern: Pattern, window: Sequence[int], sa=None) -> WindowVerdict:
    from .indexes import suffix_automaton_for

    window = _check_window(pattern, window)
    if sa is None:
        sa = suffix_automaton_for(pattern)
    elif sa.source != pattern.symbols[::-1]:
        raise ValueError("suffix automaton was not built for the reversed pattern")
    m = pattern.m
    state = sa.initial
    last_accept = 0
    j = 0
    for pos in range(m - 1, -1, -1):
        nxt = sa.next(state, window[pos])
        if nxt < 0:
            break
        state = nxt
        j += 1
        if j < m and sa.accepting[state]:
            last_accept = j
    if j == m:
        return WindowVerdict(m, m - last_accept)
    return WindowVerdict(j + 1, m - last_accept)


def bom_verdict(pattern: Pattern, window: Sequence[int], fo=None) -> WindowVerdict:
    from .indexes import count_transitions_before_fail, factor_oracle_for

    window = _check_window(pattern, window)
    if fo is None:
        fo = factor_oracle_for(pattern)
    elif fo.source != pattern.symbols[::-1]:
        raise ValueError("factor oracle was not built for the reversed pattern")
    m = pattern.m
    if window == pattern.symbols:
        return WindowVerdict(m, 1)
    k = count_transitions_before_fail(fo, window[::-1])
    return WindowVerdict(k + 1, m - k)


@lru_cache(maxsize=1 << 16)
def _cached_verdict(algorithm: Algorithm, pattern: Pattern, window: tuple[int, ...]) -> WindowVerdict:
    if algorithm is Algorithm.BM:
        return bm_verdict(pattern, window)
    if algorithm is Algorithm.BMH:
        return bmh_verdict(pattern, window)
    if algorithm is Algorithm.BNDM:
        return bdm_verdict(pattern, window)
    return bom_verdict(pattern, window)


def window_verdict(algorithm: Algorithm | str, pattern: Pattern, window: Sequence[int]) -> WindowVerdict:
    """Dispatch to the verdict function of ``algorithm`` (memoized)."""
    return _cached_verdict(Algorithm.parse(algorithm), pattern, _check_window(pattern, window))


def run_matcher(algorithm: Algorithm | str, pattern: Pattern, text: Sequence[int]) -> MatchTrace:
    algorithm = Algorithm.parse(algorithm)
    text = tuple(text)
    m, n = pattern.m, len(text)
    trace = MatchTrace()
    pos = 0
    while pos + m <= n:
        window = text[pos:pos + m]
        v = _cached_verdict(algorithm, pattern, window)
        trace.entries.append(TraceEntry(pos, v, window == pattern.symbols))
        trace.total_cost += v.cost
        pos += v.shift
    return trace


def total_cost(algorithm: Algorithm | str, pattern: Pattern, text: Sequence[int]) -> int:
    return run_matcher(algorithm, pattern, text).total_cost
