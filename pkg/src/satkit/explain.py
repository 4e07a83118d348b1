"""Discriminative-feature extraction.

For string-kernel models: exact primal n-gram weights recovered from the
dual coefficients, w_g = sum_i alpha_i * phi_g(x_i) with phi the presence
bit (PBSK) or occurrence count (HISK). For embedding models: cosine of
each per-occurrence word vector against the learned weight vector, summed
over the data set; consecutive-pair products for word bigrams.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ArgumentError, NumericalError, ParseError
from .learner import DualModel, PrimalModel
from .ngram import KernelKind, NgramProfile


@dataclass(frozen=True)
class RankedFeature:
    """A feature with its signed score; positive means the +1 class.

    rank is 1-based within the feature's class sign.
    """

    feature: str
    score: float
    sign: int
    rank: int


def _rank(scores: dict) -> list[RankedFeature]:
    # Zero scores ride with the positive group (mirrors decide(0) = +1),
    # after every genuinely positive feature.
    positives = sorted(
        ((g, s) for g, s in scores.items() if s >= 0), key=lambda t: (-t[1], t[0])
    )
    negatives = sorted(
        ((g, s) for g, s in scores.items() if s < 0), key=lambda t: (t[1], t[0])
    )
    ranked = [
        RankedFeature(g, float(s), 1, i + 1) for i, (g, s) in enumerate(positives)
    ]
    ranked += [
        RankedFeature(g, float(s), -1, i + 1) for i, (g, s) in enumerate(negatives)
    ]
    return ranked


def primal_ngram_weights(
    model: DualModel,
    train_profiles: Sequence[NgramProfile],
    presence_min_count: int = 1,
) -> list[RankedFeature]:
    """Recover one explicit weight per n-gram seen in training.

    N-grams absent from training have weight 0 by construction and are
    not listed.
    """
    if len(train_profiles) != len(model.train_ids):
        raise ArgumentError(
            f"{len(train_profiles)} profiles for {len(model.train_ids)} train ids"
        )
    if model.kind not in (KernelKind.PBSK, KernelKind.HISK):
        raise ArgumentError(f"no n-gram weights for kernel kind {model.kind!r}")
    for p in train_profiles:
        if p.n != model.n:
            raise ArgumentError(f"profile n={p.n} does not match model n={model.n}")
    presence = model.kind == KernelKind.PBSK
    weights: dict = {}
    for alpha, profile in zip(model.coefficients, train_profiles):
        a = float(alpha)
        if presence:
            for g, c in profile.counts.items():
                if c >= presence_min_count:
                    weights[g] = weights.get(g, 0.0) + a
        else:
            for g, c in profile.counts.items():
                weights[g] = weights.get(g, 0.0) + a * c
    return _rank(weights)


def score_with_weights(
    features: Sequence[RankedFeature],
    profile: NgramProfile,
    kind: KernelKind,
    presence_min_count: int = 1,
) -> float:
    """Explicit dot product sum_g w_g * phi_g(x); reproduces dual scores."""
    table = {f.feature: f.score for f in features}
    total = 0.0
    presence = kind == KernelKind.PBSK
    for g, c in profile.counts.items():
        w = table.get(g)
        if w is None:
            continue
        if presence:
            if c >= presence_min_count:
                total += w
        else:
            total += w * c
    return total


def _cosines(vectors: np.ndarray, weights: np.ndarray, w_norm: float) -> np.ndarray:
    norms = np.linalg.norm(vectors, axis=1)
    dots = vectors @ weights
    out = np.zeros(vectors.shape[0])
    nz = norms > 0
    out[nz] = dots[nz] / (norms[nz] * w_norm)
    return out


def _check_model(model: PrimalModel) -> float:
    w_norm = float(np.linalg.norm(model.weights))
    if w_norm == 0.0:
        raise NumericalError("weight vector has zero norm")
    return w_norm


def _doc_matrix(doc, dim: int) -> tuple:
    words = [w for w, _ in doc]
    if words:
        mat = np.vstack([np.asarray(v, dtype=np.float64) for _, v in doc])
        if mat.shape[1] != dim:
            raise ArgumentError(
                f"word vector dim {mat.shape[1]} does not match model dim {dim}"
            )
    else:
        mat = np.empty((0, dim))
    return words, mat


def embedding_word_scores(documents, model: PrimalModel) -> list[RankedFeature]:
    """score(word) = sum over occurrences of cos(vector, weights).

    ``documents`` is a sequence of documents, each a sequence of
    (word, vector) in occurrence order. Zero-norm vectors contribute 0.
    """
    w_norm = _check_model(model)
    scores: dict = {}
    for doc in documents:
        words, mat = _doc_matrix(doc, model.dim)
        for word, cos in zip(words, _cosines(mat, model.weights, w_norm)):
            scores[word] = scores.get(word, 0.0) + float(cos)
    return _rank(scores)


def embedding_bigram_scores(documents, model: PrimalModel) -> list[RankedFeature]:
    """Consecutive-pair importance: cos(e_k, w) * cos(e_k+1, w), summed per
    bigram string. Pairs never cross document boundaries."""
    w_norm = _check_model(model)
    scores: dict = {}
    for doc in documents:
        words, mat = _doc_matrix(doc, model.dim)
        if len(words) < 2:
            continue
        cos = _cosines(mat, model.weights, w_norm)
        for k in range(len(words) - 1):
            bigram = words[k] + " " + words[k + 1]
            scores[bigram] = scores.get(bigram, 0.0) + float(cos[k] * cos[k + 1])
    return _rank(scores)


def write_features_tsv(
    features: Sequence[RankedFeature],
    path,
    positive_name: str,
    negative_name: str,
    top: int | None = None,
) -> None:
    """TSV with columns class, rank, feature, score."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("class\trank\tfeature\tscore\n")
        for sign in (1, -1):
            name = positive_name if sign == 1 else negative_name
            rows = [f for f in features if f.sign == sign]
            if top is not None:
                rows = rows[:top]
            for f in rows:
                fh.write(f"{name}\t{f.rank}\t{f.feature}\t{f.score:.8g}\n")


# --- word-occurrence stream (FSWO v1) -------------------------------------

_FSWO_HEADER = "FSWO v1"


def save_word_occurrences(documents, path) -> None:
    """Write per-occurrence word vectors: FSDM-style framing with two
    extra leading columns (document id, position).

    ``documents`` is a sequence of (doc_id, [(word, vector), ...]).
    """
    records = []
    dim = None
    for doc_id, occurrences in documents:
        for pos, (word, vec) in enumerate(occurrences):
            vec = np.asarray(vec, dtype=np.float64)
            if dim is None:
                dim = vec.shape[0]
            elif vec.shape[0] != dim:
                raise ArgumentError("word vectors mix dimensions")
            records.append((doc_id, pos, word, vec))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{_FSWO_HEADER} {len(records)} {dim or 0}\n")
        for doc_id, pos, word, vec in records:
            fh.write(
                f"{doc_id}\t{pos}\t{word}\t"
                + " ".join(repr(float(v)) for v in vec)
                + "\n"
            )


def load_word_occurrences(path):
    """Read an FSWO file into [(doc_id, [(word, vector), ...]), ...] in
    file order; consecutive records with one doc id form one document."""
    documents: list = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        parts = header.split(" ")
        if len(parts) != 4 or " ".join(parts[:2]) != _FSWO_HEADER:
            raise ParseError(f"{path}: bad FSWO header {header!r}", 1)
        try:
            records, dim = int(parts[2]), int(parts[3])
        except ValueError:
            raise ParseError(f"{path}: bad FSWO header {header!r}", 1) from None
        current_id = None
        for k in range(records):
            line = fh.readline()
            if not line:
                raise ParseError(f"{path}: expected {records} records, got {k}", k + 2)
            fields = line.rstrip("\n").split("\t")
            if len(fields) != 4:
                raise ParseError(f"{path}: line {k + 2}: expected 4 columns", k + 2)
            doc_id, _pos, word, rest = fields
            vec = np.array([float(v) for v in rest.split()], dtype=np.float64)
            if vec.shape[0] != dim:
                raise ParseError(
                    f"{path}: line {k + 2}: expected {dim} values, got {vec.shape[0]}",
                    k + 2,
                )
            if doc_id != current_id:
                documents.append((doc_id, []))
                current_id = doc_id
            documents[-1][1].append((word, vec))
    return documents
