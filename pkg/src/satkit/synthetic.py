"""Deterministic synthetic corpora with a controllable domain gap.

Mirrors the cross-source structure of the real task at toy scale: each
publication source carries one class (satirical sources publish satire),
training sources are disjoint from the shared valid/test source pair,
class-discriminative tokens transfer across sources, and per-source
confounder tokens do not. ``confounder_strength`` dials the domain gap;
``domain_shift=False`` keeps the eval sources statistically identical to
the training ones (fresh source names, same token distributions), which
is how in-domain accuracy is measured without violating the cross-source
file invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus import Article, LabeledCorpus
from .errors import ArgumentError

# Class markers: one fixed occurrence per document, so each class is
# separable by the marker's n-grams alone when confounders are weak.
MARKER_SATIRICAL = "qsatmarkq"
MARKER_REGULAR = "qregmarkq"

_TRAIN_SOURCES = {"satirical": "alpha", "regular": "bravo"}
_EVAL_SOURCES = {"satirical": "gamma", "regular": "delta"}


@dataclass(frozen=True)
class SyntheticSpec:
    n_train: int = 120
    n_valid: int = 60
    n_test: int = 60
    vocab_size: int = 50
    signal_tokens: int = 6
    confounder_tokens: int = 12
    title_tokens: int = 4
    body_tokens: int = 40
    signal_rate: float = 0.2
    confounder_strength: float = 0.0
    domain_shift: bool = True
    seed: int = 0


def _vocabularies(spec: SyntheticSpec) -> dict:
    fillers = [f"f{k}" for k in range(spec.vocab_size)]
    signal = {
        "satirical": [f"sat{k}" for k in range(spec.signal_tokens)],
        "regular": [f"reg{k}" for k in range(spec.signal_tokens)],
    }
    confounders = {
        src: [f"conf{src}{k}" for k in range(spec.confounder_tokens)]
        for src in (*_TRAIN_SOURCES.values(), *_EVAL_SOURCES.values())
    }
    if not spec.domain_shift:
        # Statistically in-domain: eval sources reuse the training
        # sources' confounder vocabulary (names stay disjoint).
        for label in ("satirical", "regular"):
            confounders[_EVAL_SOURCES[label]] = confounders[_TRAIN_SOURCES[label]]
    return {"fillers": fillers, "signal": signal, "confounders": confounders}


def generate_synthetic(spec: SyntheticSpec) -> LabeledCorpus:
    """Byte-identical output for identical specs (seed included)."""
    if min(spec.n_train, spec.n_valid, spec.n_test) <= 0:
        raise ArgumentError("all split sizes must be positive")
    if not 0.0 <= spec.confounder_strength <= 1.0:
        raise ArgumentError("confounder_strength must lie in [0, 1]")
    if spec.confounder_strength + spec.signal_rate > 1.0:
        raise ArgumentError("confounder_strength + signal_rate must be <= 1")
    rng = np.random.default_rng(spec.seed)
    vocab = _vocabularies(spec)
    articles = []
    for split, count in (("train", spec.n_train), ("valid", spec.n_valid), ("test", spec.n_test)):
        sources = _TRAIN_SOURCES if split == "train" else _EVAL_SOURCES
        for k in range(count):
            label = "satirical" if k % 2 == 0 else "regular"
            source = sources[label]
            tokens = _draw_tokens(rng, spec, vocab, label, source)
            articles.append(
                Article(
                    id=f"{split}-{k:04d}",
                    title=" ".join(tokens[: spec.title_tokens]),
                    body=" ".join(tokens[spec.title_tokens :]),
                    label=label,
                    source=source,
                    split=split,
                )
            )
    return LabeledCorpus(tuple(articles))


def _draw_tokens(rng, spec: SyntheticSpec, vocab, label: str, source: str) -> list:
    total = spec.title_tokens + spec.body_tokens
    conf = vocab["confounders"][source]
    sig = vocab["signal"][label]
    fillers = vocab["fillers"]
    tokens = []
    for _ in range(total):
        u = rng.random()
        if u < spec.confounder_strength:
            tokens.append(conf[rng.integers(len(conf))])
        elif u < spec.confounder_strength + spec.signal_rate:
            tokens.append(sig[rng.integers(len(sig))])
        else:
            tokens.append(fillers[rng.integers(len(fillers))])
    marker = MARKER_SATIRICAL if label == "satirical" else MARKER_REGULAR
    tokens[rng.integers(total)] = marker
    return tokens
