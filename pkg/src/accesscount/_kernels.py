"""Inner loops of the PAA dynamic programs.

Each kernel exists twice: a numba ``@njit`` version and a pure-numpy one.
The numba path is used when numba imports and ``ACCESSCOUNT_DISABLE_NUMBA``
is unset (or ``0``).  Edge arrays must be sorted by destination state.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def _numba_requested() -> bool:
    flag = os.environ.get("ACCESSCOUNT_DISABLE_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


USE_NUMBA = numba is not None and _numba_requested()


def _speed_up(func):
    if numba is None:
        return func
    return numba.njit(cache=True, nogil=True)(func)


# -- value distribution -----------------------------------------------------

def _value_dp_loops(n_states, src, dst, prob, emission, start, n, vmax, max_em):
    width = vmax + max_em + 1
    mass = np.zeros((n_states, width))
    new = np.zeros((n_states, width))
    mass[start, 0] = 1.0
    hi = 0
    for _ in range(n):
        new[:, : hi + max_em + 1] = 0.0
        for e in range(src.shape[0]):
            s = src[e]
            d = dst[e]
            p = prob[e]
            off = emission[d]
            row_in = mass[s]
            row_out = new[d]
            for v in range(hi + 1):
                x = row_in[v]
                if x != 0.0:
                    row_out[v + off] += p * x
        hi = min(hi + max_em, vmax)
        mass, new = new, mass
    return mass.sum(axis=0)[: vmax + 1]


_value_dp_numba = _speed_up(_value_dp_loops)


def _value_dp_numpy(n_states, src, dst, prob, emission, start, n, vmax, max_em):
    width = vmax + max_em + 1
    mass = np.zeros((n_states, width))
    mass[start, 0] = 1.0
    targets, seg = np.unique(dst, return_index=True)
    target_em = emission[targets]
    groups = [(int(e), np.flatnonzero(target_em == e)) for e in np.unique(target_em)]
    hi = 0
    for _ in range(n):
        contrib = prob[:, None] * mass[src, : hi + 1]
        summed = np.add.reduceat(contrib, seg, axis=0)
        new = np.zeros_like(mass)
        for off, rows in groups:
            new[targets[rows], off : off + hi + 1] = summed[rows]
        hi = min(hi + max_em, vmax)
        mass = new
    return mass.sum(axis=0)[: vmax + 1]


def value_distribution(n_states, src, dst, prob, emission, start, n, vmax, max_em, use_numba=None):
    """Probability of each accumulated value ``0..vmax`` after ``n`` steps.

    ``vmax`` must bound every reachable value; ``max_em`` bounds emissions.
    """
    use_numba = USE_NUMBA if use_numba is None else use_numba
    fn = _value_dp_numba if use_numba and numba is not None else _value_dp_numpy
    return fn(
        int(n_states),
        np.ascontiguousarray(src, dtype=np.int64),
        np.ascontiguousarray(dst, dtype=np.int64),
        np.ascontiguousarray(prob, dtype=np.float64),
        np.ascontiguousarray(emission, dtype=np.int64),
        int(start),
        int(n),
        int(vmax),
        int(max_em),
    )


# -- expectation only -------------------------------------------------------

def _expectation_loops(n_states, src, dst, prob, emission, start, horizon):
    pi = np.zeros(n_states)
    nxt = np.zeros(n_states)
    pi[start] = 1.0
    acc = np.zeros(horizon + 1)
    total = 0.0
    for t in range(1, horizon + 1):
        nxt[:] = 0.0
        for e in range(src.shape[0]):
            nxt[dst[e]] += prob[e] * pi[src[e]]
        for q in range(n_states):
            total += nxt[q] * emission[q]
        acc[t] = total
        pi, nxt = nxt, pi
    return acc


_expectation_numba = _speed_up(_expectation_loops)


def _expectation_numpy(n_states, src, dst, prob, emission, start, horizon):
    pi = np.zeros(n_states)
    pi[start] = 1.0
    em = emission.astype(np.float64)
    acc = np.zeros(horizon + 1)
    total = 0.0
    for t in range(1, horizon + 1):
        pi = np.bincount(dst, weights=prob * pi[src], minlength=n_states)
        total += float(pi @ em)
        acc[t] = total
    return acc


def expected_values(n_states, src, dst, prob, emission, start, horizon, use_numba=None):
    """``E[X_t]`` for ``t = 0..horizon``."""
    use_numba = USE_NUMBA if use_numba is None else use_numba
    fn = _expectation_numba if use_numba and numba is not None else _expectation_numpy
    return fn(
        int(n_states),
        np.ascontiguousarray(src, dtype=np.int64),
        np.ascontiguousarray(dst, dtype=np.int64),
        np.ascontiguousarray(prob, dtype=np.float64),
        np.ascontiguousarray(emission, dtype=np.int64),
        int(start),
        int(horizon),
    )
