"""Exact distributions of the number of text-character accesses made by
BM, BMH, B(N)DM and BOM on random texts from finite-memory models."""
from .daa import DAA, build_naive_daa, build_reduced_daa, daa_value
from .guards import GuardExceeded
from .indexes import build_factor_oracle, build_suffix_automaton, count_transitions_before_fail
from .matchers import (
    Algorithm,
    Alphabet,
    MatchTrace,
    Pattern,
    WindowVerdict,
    bad_character,
    bdm_verdict,
    bm_cost,
    bm_verdict,
    bmh_verdict,
    bom_verdict,
    good_suffix,
    run_matcher,
    window_verdict,
)
from .oracle import EmpiricalDistribution, brute_distribution, monte_carlo, tv_distance
from .paa import PAA, Distribution, distribution, induce_paa, mean_rate, moments, rate_estimate
from .representatives import RepSet, annotate, closure_for, oracle_closure, rep_of, substring_closure
from .textmodel import (
    ModelError,
    TextModel,
    iid_model,
    load_model,
    markov_model,
    parse_model_spec,
    sample_text,
    text_probability,
    uniform_model,
)

__version__ = "0.1.0"


def analyze(pattern: str, algorithm: str, model: TextModel, n: int) -> Distribution:
    """Exact cost distribution for a literal pattern over ``model``'s alphabet."""
    encoded = Pattern.from_string(pattern, model.alphabet)
    return distribution(induce_paa(build_reduced_daa(encoded, algorithm), model), n)
