from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from accesscount.matchers import (
    Algorithm,
    Alphabet,
    Pattern,
    bad_character,
    bdm_verdict,
    bm_cost,
    bm_verdict,
    bmh_verdict,
    bom_verdict,
    good_suffix,
    mismatch_index,
    run_matcher,
    window_verdict,
)

from conftest import all_patterns, enc, pat


# -- independent oracles: smallest shift consistent with what was read -------

def shift_oracle_bc(pattern, window, i):
    s, m = pattern.symbols, pattern.m
    for d in range(1, m + 1):
        j = m - i - d
        if j < 0 or s[j] == window[m - i]:
            return d
    return m - i + 1


def shift_oracle_gs(pattern, window, i, banned=None):
    """Smallest d agreeing with every matched character the shifted pattern
    overlaps, and whose character under the mismatch position (if any)
    differs from ``banned`` (default: the pattern character that mismatched)."""
    s, m = pattern.symbols, pattern.m
    banned = s[m - i] if banned is None else banned
    for d in range(1, m + 1):
        ok = all(s[p - d] == window[p] for p in range(max(m - i + 1, d), m))
        j = m - i - d
        if ok and (j < 0 or s[j] != banned):
            return d
    return m


def safe_shift(pattern, window, i):
    """Largest shift that cannot skip an occurrence given the characters read."""
    s, m = pattern.symbols, pattern.m
    for d in range(1, m + 1):
        if all(s[p - d] == window[p] for p in range(max(m - i, d), m)):
            return d
    return m


def bdm_oracle(pattern, window):
    s, m = pattern.symbols, pattern.m
    subs = {s[a:b] for a in range(m) for b in range(a, m + 1)}
    j = max(L for L in range(m + 1) if window[m - L:] in subs)
    prefixes = [i for i in range(m) if i <= j and window[m - i:] == s[:i]]
    cost = m if window == s else j + 1
    return cost, m - max(prefixes)


# -- worked examples ----------------------------------------------------------

def test_bm_cost_examples():
    assert bm_cost(pat("aa"), enc("aa")) == 2
    assert bm_cost(pat("aa"), enc("ab")) == 1
    assert bm_cost(pat("abc", "abc"), Alphabet("abc").encode("abc")) == 3


def test_bm_cost_rejects_length_mismatch():
    with pytest.raises(ValueError):
        bm_cost(pat("aa"), enc("a"))


@pytest.mark.parametrize(
    "pattern, window, i, expected",
    [("aa", "ab", 1, 2), ("aa", "ba", 2, 1), ("aaa", "aab", 1, 3)],
)
def test_bad_character_examples(pattern, window, i, expected):
    paa = pat(pattern)
    assert bad_character(paa, enc(window), i) == expected
    assert shift_oracle_bc(paa, enc(window), i) == expected


@pytest.mark.parametrize(
    "pattern, window, i, expected",
    [("aa", "ab", 1, 1), ("aa", "ba", 2, 1), ("ab", "bb", 2, 2)],
)
def test_good_suffix_examples_text_rule(pattern, window, i, expected):
    paa = pat(pattern)
    assert good_suffix(paa, enc(window), i, compare_with="text") == expected
    assert shift_oracle_gs(paa, enc(window), i, banned=enc(window)[paa.m - i]) == expected


@pytest.mark.parametrize(
    "pattern, window, i, expected",
    [("aa", "ab", 1, 2), ("aa", "ba", 2, 1), ("ab", "bb", 2, 2)],
)
def test_good_suffix_examples(pattern, window, i, expected):
    paa = pat(pattern)
    assert good_suffix(paa, enc(window), i) == expected
    assert shift_oracle_gs(paa, enc(window), i) == expected


def test_text_rule_can_skip_an_occurrence():
    # S=ab, window aa: comparing against the text character allows shift 2,
    # jumping over the occurrence one position to the right
    paa = pat("ab")
    assert good_suffix(paa, enc("aa"), 1, compare_with="text") == 2
    assert safe_shift(paa, enc("aa"), 1) == 1
    assert good_suffix(paa, enc("aa"), 1) == 1
    assert run_matcher("bm", paa, enc("aab")).starts == [0, 1]
    with pytest.raises(ValueError):
        good_suffix(paa, enc("aa"), 1, compare_with="window")


@pytest.mark.parametrize("fn", [bad_character, good_suffix])
def test_mismatch_index_range(fn):
    with pytest.raises(ValueError):
        fn(pat("aa"), enc("ab"), 0)
    with pytest.raises(ValueError):
        fn(pat("aa"), enc("ab"), 3)


def test_bm_verdict_examples():
    pattern = pat("aa")
    assert (bm_verdict(pattern, enc("ab")).cost, bm_verdict(pattern, enc("ab")).shift) == (1, 2)
    assert (bm_verdict(pattern, enc("ba")).cost, bm_verdict(pattern, enc("ba")).shift) == (2, 1)
    assert (bm_verdict(pattern, enc("aa")).cost, bm_verdict(pattern, enc("aa")).shift) == (2, 1)


def test_bm_full_match_shift_uses_border():
    abc = Alphabet("abc")
    assert bm_verdict(pat("abab", abc), abc.encode("abab")).shift == 2
    assert bm_verdict(pat("abc", abc), abc.encode("abc")).shift == 3


def test_bmh_verdict_examples():
    pattern = pat("aa")
    assert bmh_verdict(pattern, enc("bb")) == bmh_verdict(pattern, enc("ab"))
    assert (bmh_verdict(pattern, enc("bb")).cost, bmh_verdict(pattern, enc("bb")).shift) == (1, 2)
    assert (bmh_verdict(pattern, enc("ba")).cost, bmh_verdict(pattern, enc("ba")).shift) == (2, 1)
    xy = Alphabet("abxy")
    v = bmh_verdict(pat("ab", xy), xy.encode("xy"))
    assert (v.cost, v.shift) == (1, 2)


@pytest.mark.parametrize("window, expected", [("ab", (1, 2)), ("ba", (2, 1)), ("aa", (2, 1))])
def test_bdm_verdict_examples(window, expected):
    v = bdm_verdict(pat("aa"), enc(window))
    assert (v.cost, v.shift) == expected


@pytest.mark.parametrize("window, expected", [("ab", (1, 2)), ("ba", (2, 1)), ("aa", (2, 1))])
def test_bom_verdict_examples(window, expected):
    v = bom_verdict(pat("aa"), enc(window))
    assert (v.cost, v.shift) == expected


def test_verdicts_reject_foreign_index():
    from accesscount.indexes import suffix_automaton_for

    with pytest.raises(ValueError):
        bdm_verdict(pat("aa"), enc("ab"), suffix_automaton_for(pat("ab")))


def test_run_matcher_examples():
    t = run_matcher("bmh", pat("aa"), enc("abbaa"))
    assert t.starts == [0, 2, 3]
    assert t.total_cost == 5
    assert [e.is_match for e in t.entries] == [False, False, True]
    for algo in Algorithm:
        assert run_matcher(algo, pat("aa"), enc("a")).total_cost == 0
        assert run_matcher(algo, pat("aa"), enc("a")).entries == []
    assert run_matcher("bmh", pat("aa"), enc("aaa")).total_cost == 4


# -- exhaustive properties ---------------------------------------------------

SMALL = [(paa, window) for sigma in (1, 2, 3) for paa in all_patterns(sigma, range(1, 5))
         for window in product(range(sigma), repeat=paa.m)]


def test_bm_rules_match_shift_oracles():
    for paa, window in SMALL:
        i = mismatch_index(paa, window)
        if i is None:
            continue
        assert bad_character(paa, window, i) == shift_oracle_bc(paa, window, i), (paa, window)
        assert good_suffix(paa, window, i) == shift_oracle_gs(paa, window, i), (paa, window)
        assert good_suffix(paa, window, i, "text") == shift_oracle_gs(paa, window, i, window[paa.m - i]), (paa, window)
        assert bm_verdict(paa, window).shift <= safe_shift(paa, window, i), (paa, window)
        assert bmh_verdict(paa, window).shift <= safe_shift(paa, window, i), (paa, window)


def test_bdm_matches_direct_definition():
    for paa, window in SMALL:
        v = bdm_verdict(paa, window)
        assert (v.cost, v.shift) == bdm_oracle(paa, window), (paa, window)


def test_verdict_bounds_and_full_match():
    for paa, window in SMALL:
        m = paa.m
        for algo in Algorithm:
            v = window_verdict(algo, paa, window)
            assert 1 <= v.cost <= m and 1 <= v.shift <= m
            if window == paa.symbols:
                assert v.cost == m
            elif algo is not Algorithm.BOM:
                # a mismatch costs m only when found at the leftmost position
                assert v.cost < m or window[1:] == paa.symbols[1:] or algo is Algorithm.BNDM
        assert bmh_verdict(paa, window).cost == bm_verdict(paa, window).cost
        assert bdm_verdict(paa, window).shift >= bom_verdict(paa, window).shift


def test_run_matcher_never_skips_an_occurrence():
    for paa in all_patterns(2, range(1, 4)):
        for n in range(11):
            for text in product(range(2), repeat=n):
                occurrences = {p for p in range(n - paa.m + 1) if text[p:p + paa.m] == paa.symbols}
                for algo in Algorithm:
                    trace = run_matcher(algo, paa, text)
                    assert occurrences == {e.start for e in trace.entries if e.is_match}, (algo, paa, text)


@settings(max_examples=200, deadline=None)
@given(
    st.sampled_from(list(Algorithm)),
    st.lists(st.integers(0, 2), min_size=1, max_size=5),
    st.lists(st.integers(0, 2), max_size=30),
)
def test_trace_self_consistency(algo, s, text):
    paa = Pattern(Alphabet("abc"), tuple(s))
    trace = run_matcher(algo, paa, text)
    assert trace.total_cost == sum(e.verdict.cost for e in trace.entries)
    for a, b in zip(trace.entries, trace.entries[1:]):
        assert b.start == a.start + a.verdict.shift
    for e in trace.entries:
        assert e.start + paa.m <= len(text)
        assert e.verdict == window_verdict(algo, paa, text[e.start:e.start + paa.m])
    if trace.entries:
        last = trace.entries[-1]
        assert last.start + last.verdict.shift + paa.m > len(text)


def test_alphabet_and_pattern_validation():
    with pytest.raises(ValueError):
        Alphabet("aa")
    with pytest.raises(ValueError):
        Alphabet("")
    with pytest.raises(ValueError):
        Pattern(Alphabet("ab"), ())
    with pytest.raises(ValueError):
        Pattern(Alphabet("ab"), (2,))
    with pytest.raises(ValueError):
        Algorithm.parse("kmp")
    assert Algorithm.parse("BDM") is Algorithm.BNDM
