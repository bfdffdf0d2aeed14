"""Finite-memory text models.

A model moves from context to context and emits one symbol per step;
``kernel[c, s, c2]`` is the probability of emitting ``s`` while moving from
``c`` to ``c2``.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .matchers import Alphabet

TOL = 1e-9


class ModelError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TextModel:
    alphabet: Alphabet
    kernel: np.ndarray
    start: int = 0
    context_names: tuple[str, ...] = field(default=())
    name: str = ""

    def __post_init__(self):
        kernel = np.asarray(self.kernel, dtype=np.float64)
        if kernel.ndim != 3 or kernel.shape[0] != kernel.shape[2] or kernel.shape[1] != self.alphabet.size:
            raise ModelError(f"kernel must have shape (C, {self.alphabet.size}, C), got {kernel.shape}")
        if (kernel < 0).any():
            raise ModelError("negative transition probability")
        sums = kernel.sum(axis=(1, 2))
        bad = np.flatnonzero(np.abs(sums - 1.0) > TOL)
        if bad.size:
            c = int(bad[0])
            raise ModelError(f"outgoing probabilities of context {c} sum to {sums[c]!r}, not 1")
        if not 0 <= self.start < kernel.shape[0]:
            raise ModelError(f"start context {self.start} out of range")
        kernel.setflags(write=False)
        object.__setattr__(self, "kernel", kernel)
        if not self.context_names:
            object.__setattr__(self, "context_names", tuple(f"c{i}" for i in range(kernel.shape[0])))

    @property
    def n_contexts(self) -> int:
        return self.kernel.shape[0]

    @property
    def sigma(self) -> int:
        return self.alphabet.size


def iid_model(alphabet: Alphabet | str, probs: Sequence[float], name: str = "") -> TextModel:
    alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
    probs = np.asarray(probs, dtype=np.float64)
    if probs.shape != (alphabet.size,):
        raise ModelError("need one probability per symbol")
    kernel = probs.reshape(1, -1, 1)
    return TextModel(alphabet, kernel, 0, ("c0",), name or "iid")


def uniform_model(alphabet: Alphabet | str) -> TextModel:
    alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
    return iid_model(alphabet, [1.0 / alphabet.size] * alphabet.size, "uniform")


def markov_model(
    alphabet: Alphabet | str,
    order: int,
    initial: Sequence[float],
    conditional: Mapping[tuple[int, ...], Sequence[float]] | np.ndarray,
    name: str = "",
) -> TextModel:
    """Order-``order`` Markov chain as a finite-memory model.

    Contexts are all histories of length 0..order.  While the history is
    shorter than ``order`` the next symbol is drawn from ``initial``;
    afterwards from ``conditional[history]`` (a mapping keyed by symbol-index
    tuples, or an array indexed ``[h_1, ..., h_r, next]``).
    """
    alphabet = alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)
    if order < 1:
        raise ModelError("Markov order must be >= 1")
    sigma = alphabet.size
    histories = [h for r in range(order + 1) for h in product(range(sigma), repeat=r)]
    index = {h: i for i, h in enumerate(histories)}
    initial = np.asarray(initial, dtype=np.float64)
    if initial.shape != (sigma,):
        raise ModelError("initial distribution needs one entry per symbol")
    kernel = np.zeros((len(histories), sigma, len(histories)))
    for h in histories:
        if len(h) < order:
            row = initial
        else:
            try:
                row = np.asarray(conditional[h], dtype=np.float64)
            except (KeyError, IndexError):
                raise ModelError(f"missing conditional row for history {alphabet.decode(h)!r}") from None
        if row.shape != (sigma,):
            raise ModelError(f"conditional row for {alphabet.decode(h)!r} has wrong length")
        for s in range(sigma):
            nxt = (h + (s,))[-order:]
            kernel[index[h], s, index[nxt]] += row[s]
    names = tuple(alphabet.decode(h) or "ε" for h in histories)
    return TextModel(alphabet, kernel, index[()], names, name or f"markov{order}")


_DOC_KEYS = {"alphabet", "contexts", "start", "transitions"}
_EDGE_KEYS = {"from", "symbol", "to", "p"}


def model_from_document(doc: Mapping, name: str = "") -> TextModel:
    if not isinstance(doc, Mapping):
        raise ModelError("model document must be an object")
    unknown = set(doc) - _DOC_KEYS
    if unknown:
        raise ModelError(f"unknown fields in model document: {sorted(unknown)}")
    missing = _DOC_KEYS - set(doc)
    if missing:
        raise ModelError(f"missing fields in model document: {sorted(missing)}")
    symbols = doc["alphabet"]
    if not isinstance(symbols, list) or not all(isinstance(s, str) and len(s) == 1 for s in symbols):
        raise ModelError("alphabet must be a list of single characters")
    try:
        alphabet = Alphabet(symbols)
    except ValueError as exc:
        raise ModelError(str(exc)) from None
    n_ctx = doc["contexts"]
    if not isinstance(n_ctx, int) or isinstance(n_ctx, bool) or n_ctx < 1:
        raise ModelError("contexts must be a positive integer")
    start = doc["start"]
    if not isinstance(start, int) or isinstance(start, bool) or not 0 <= start < n_ctx:
        raise ModelError(f"start context {start!r} is not a valid context id")
    kernel = np.zeros((n_ctx, alphabet.size, n_ctx))
    seen = set()
    for edge in doc["transitions"]:
        if not isinstance(edge, Mapping) or set(edge) != _EDGE_KEYS:
            raise ModelError(f"transition entries need exactly the fields {sorted(_EDGE_KEYS)}: {edge!r}")
        src, sym, dst, p = edge["from"], edge["symbol"], edge["to"], edge["p"]
        for c in (src, dst):
            if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < n_ctx:
                raise ModelError(f"dangling context id {c!r}")
        if sym not in alphabet.symbols:
            raise ModelError(f"transition symbol {sym!r} not in alphabet")
        if not isinstance(p, (int, float)) or isinstance(p, bool) or not 0.0 <= p <= 1.0:
            raise ModelError(f"probability {p!r} outside [0, 1]")
        key = (src, sym, dst)
        if key in seen:
            raise ModelError(f"duplicate transition {key!r}")
        seen.add(key)
        kernel[src, alphabet.index(sym), dst] = p
    return TextModel(alphabet, kernel, start, (), name or "document")


def load_model(source: str | os.PathLike | Mapping) -> TextModel:
    """Load a model document from a mapping, a JSON string or a file path."""
    if isinstance(source, Mapping):
        return model_from_document(source)
    text = str(source)
    if not text.lstrip().startswith("{"):
        path = os.fspath(source)
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        name = os.path.basename(path)
    else:
        name = "inline"
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"model document is not valid JSON: {exc}") from None
    return model_from_document(doc, name)


def model_to_document(model: TextModel) -> dict:
    transitions = []
    for c, s, c2 in zip(*np.nonzero(model.kernel)):
        transitions.append(
            {"from": int(c), "symbol": model.alphabet.symbol(int(s)), "to": int(c2), "p": float(model.kernel[c, s, c2])}
        )
    return {
        "alphabet": list(model.alphabet.symbols),
        "contexts": model.n_contexts,
        "start": model.start,
        "transitions": transitions,
    }


def _parse_weights(spec: str) -> dict[str, float]:
    out = {}
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        if not sep:
            raise ModelError(f"expected key=value, got {item!r}")
        try:
            out[key.strip()] = float(value)
        except ValueError:
            raise ModelError(f"bad probability in {item!r}") from None
    return out


def parse_model_spec(spec: str) -> TextModel:
    """Inline model specs.

    ``iid:a=0.5,b=0.5``
    ``markov:a=0.5,b=0.5;a>a=0.9,a>b=0.1,b>a=0.5,b>b=0.5`` (order from history length)
    Anything else is treated as a path to a model document.
    """
    kind, sep, body = spec.partition(":")
    if sep and kind == "iid":
        weights = _parse_weights(body)
        if not weights:
            raise ModelError("iid spec lists no symbols")
        alphabet = Alphabet(list(weights))
        return iid_model(alphabet, list(weights.values()), name=spec)
    if sep and kind == "markov":
        init_part, _, cond_part = body.partition(";")
        init = _parse_weights(init_part)
        if not init:
            raise ModelError("markov spec needs an initial distribution")
        alphabet = Alphabet(list(init))
        rows: dict[tuple[int, ...], np.ndarray] = {}
        orders = set()
        for key, p in _parse_weights(cond_part).items():
            hist, arrow, sym = key.partition(">")
            if not arrow or not hist:
                raise ModelError(f"markov transition must look like history>symbol=p, got {key!r}")
            try:
                h, s = alphabet.encode(hist), alphabet.index(sym)
            except ValueError as exc:
                raise ModelError(str(exc)) from None
            orders.add(len(h))
            rows.setdefault(h, np.zeros(alphabet.size))[s] = p
        if len(orders) != 1:
            raise ModelError("markov histories must all have the same length")
        return markov_model(alphabet, orders.pop(), list(init.values()), rows, name=spec)
    return load_model(spec)


def text_probability(model: TextModel, x: Sequence[int]) -> float:
    alpha = np.zeros(model.n_contexts)
    alpha[model.start] = 1.0
    for s in x:
        if not 0 <= s < model.sigma:
            raise ValueError(f"symbol index {s} outside alphabet")
        alpha = alpha @ model.kernel[:, s, :]
    return float(alpha.sum())


def _step_tables(model: TextModel):
    flat = model.kernel.reshape(model.n_contexts, -1)
    cum = np.cumsum(flat, axis=1)
    # rounding must never select a zero-probability tail entry
    for row in range(flat.shape[0]):
        cum[row, np.flatnonzero(flat[row])[-1]:] = np.inf
    return cum


def sample_texts(model: TextModel, n: int, count: int, seed=None) -> np.ndarray:
    """``count`` independent texts of length ``n`` as a ``(count, n)`` array."""
    if n < 0 or count < 0:
        raise ValueError("n and count must be nonnegative")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    cum = _step_tables(model)
    out = np.empty((count, n), dtype=np.int64)
    ctx = np.full(count, model.start, dtype=np.int64)
    for t in range(n):
        u = rng.random(count)
        choice = (u[:, None] >= cum[ctx]).sum(axis=1)
        out[:, t] = choice // model.n_contexts
        ctx = choice % model.n_contexts
    return out


def sample_text(model: TextModel, n: int, seed=None) -> tuple[int, ...]:
    return tuple(int(s) for s in sample_texts(model, n, 1, seed)[0])


def stationary_symbol_frequencies(model: TextModel) -> np.ndarray:
    """Long-run symbol frequencies of an irreducible model (dense eigen-solve)."""
    chain = model.kernel.sum(axis=1)
    eigvals, eigvecs = np.linalg.eig(chain.T)
    pi = np.real(eigvecs[:, np.argmin(np.abs(eigvals - 1.0))])
    pi = pi / pi.sum()
    return pi @ model.kernel.sum(axis=2)
