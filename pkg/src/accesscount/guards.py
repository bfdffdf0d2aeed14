"""Resource guards with environment overrides."""
from __future__ import annotations

import os

NAIVE_STATES = ("ACCESSCOUNT_NAIVE_GUARD", 10**6)
BRUTE_TEXTS = ("ACCESSCOUNT_BRUTE_GUARD", 2**20)
DP_CELLS = ("ACCESSCOUNT_DP_GUARD", 5 * 10**8)


class GuardExceeded(RuntimeError):
    pass


def limit(guard: tuple[str, int]) -> int:
    name, default = guard
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(float(raw))
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None


def check(guard: tuple[str, int], amount: int, what: str, budget: int | None = None) -> None:
    budget = limit(guard) if budget is None else budget
    if amount > budget:
        raise GuardExceeded(f"{what}: {amount} exceeds budget {budget} (override with {guard[0]})")
