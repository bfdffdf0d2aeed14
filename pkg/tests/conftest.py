from itertools import product
from pathlib import Path

import pytest

from accesscount.matchers import Alphabet, Pattern
from accesscount.textmodel import load_model, uniform_model

DATA = Path(__file__).parent / "data"
AB = Alphabet("ab")


def pat(s: str, alphabet: Alphabet | str = AB) -> Pattern:
    return Pattern.from_string(s, alphabet)


def enc(s: str, alphabet: Alphabet = AB) -> tuple[int, ...]:
    return alphabet.encode(s)


def all_patterns(sigma: int, lengths):
    alphabet = Alphabet("abcd"[:sigma])
    for m in lengths:
        for s in product(range(sigma), repeat=m):
            yield Pattern(alphabet, s)


@pytest.fixture
def ab():
    return AB


@pytest.fixture
def uniform_ab():
    return uniform_model(AB)


@pytest.fixture
def two_context():
    return load_model(DATA / "two_context.json")


# one summary line per acceptance criterion, collected by test_acceptance
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
