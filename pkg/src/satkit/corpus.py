"""Corpus ingestion: JSON-lines articles, cross-source split discipline,
classification texts and per-split statistics."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .errors import (
    ArgumentError,
    CrossSourceViolation,
    DuplicateIdError,
    ParseError,
)

LABELS = ("regular", "satirical")
SPLITS = ("train", "valid", "test")

_REQUIRED_FIELDS = ("id", "title", "body", "label", "source", "split")


@dataclass(frozen=True)
class Article:
    """One news item. Immutable after load."""

    id: str
    title: str
    body: str
    label: str
    source: str
    split: str

    def __post_init__(self):
        if self.label not in LABELS:
            raise ParseError(f"article {self.id!r}: label {self.label!r} not in {LABELS}")
        if self.split not in SPLITS:
            raise ParseError(f"article {self.id!r}: split {self.split!r} not in {SPLITS}")


@dataclass(frozen=True)
class LabeledCorpus:
    """Ordered articles plus the class that maps to +1."""

    articles: tuple[Article, ...]
    class_positive: str = "satirical"

    def __post_init__(self):
        if self.class_positive not in LABELS:
            raise ArgumentError(f"class_positive {self.class_positive!r} not in {LABELS}")
        validate_articles(self.articles)

    def split(self, name: str) -> list[Article]:
        if name not in SPLITS:
            raise ArgumentError(f"unknown split {name!r}")
        return [a for a in self.articles if a.split == name]

    def label_sign(self, label: str) -> int:
        return 1 if label == self.class_positive else -1

    @property
    def class_negative(self) -> str:
        return LABELS[0] if self.class_positive == LABELS[1] else LABELS[1]


def validate_articles(articles: Iterable[Article]) -> None:
    """Check id uniqueness and the cross-source constraint."""
    seen: set[str] = set()
    train_sources: set[str] = set()
    eval_sources: set[str] = set()
    for a in articles:
        if a.id in seen:
            raise DuplicateIdError(f"duplicate article id {a.id!r}")
        seen.add(a.id)
        if a.split == "train":
            train_sources.add(a.source)
        else:
            eval_sources.add(a.source)
    overlap = train_sources & eval_sources
    if overlap:
        raise CrossSourceViolation(
            "training sources also appear in valid/test: "
            + ", ".join(sorted(overlap))
        )


def load_corpus(path, class_positive: str = "satirical") -> LabeledCorpus:
    """Load a UTF-8 JSON-lines corpus file.

    One object per line with string fields id, title, body, label, source,
    split. Unknown fields are ignored. Raises ParseError with the line
    number on malformed records, DuplicateIdError / CrossSourceViolation
    on invariant breaches.
    """
    articles: list[Article] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"line {lineno}: invalid JSON: {exc.msg}", lineno) from exc
            if not isinstance(obj, dict):
                raise ParseError(f"line {lineno}: expected a JSON object", lineno)
            missing = [k for k in _REQUIRED_FIELDS if k not in obj]
            if missing:
                raise ParseError(
                    f"line {lineno}: missing field(s) {', '.join(missing)}", lineno
                )
            bad_type = [k for k in _REQUIRED_FIELDS if not isinstance(obj[k], str)]
            if bad_type:
                raise ParseError(
                    f"line {lineno}: non-string field(s) {', '.join(bad_type)}", lineno
                )
            try:
                articles.append(Article(**{k: obj[k] for k in _REQUIRED_FIELDS}))
            except ParseError as exc:
                raise ParseError(f"line {lineno}: {exc}", lineno) from exc
    validate_articles(articles)
    return LabeledCorpus(tuple(articles), class_positive=class_positive)


def save_corpus(corpus: LabeledCorpus, path) -> None:
    """Write the corpus back in the JSON-lines format (round-trips load_corpus)."""
    with open(path, "w", encoding="utf-8") as fh:
        for a in corpus.articles:
            fh.write(
                json.dumps(
                    {
                        "id": a.id,
                        "title": a.title,
                        "body": a.body,
                        "label": a.label,
                        "source": a.source,
                        "split": a.split,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


def _normalize_newlines(text: str) -> str:
    # CRLF first so it maps to one space, not two.
    return text.replace("\r\n", " ").replace("\r", " ").replace("\n", " ")


def document_text(article: Article, mode: str = "full") -> str:
    """Classification text for one article.

    mode="full": title + single space + body, newlines canonicalized to
    spaces, result trimmed. mode="headline": the title alone, same
    canonicalization.
    """
    if mode == "full":
        title = _normalize_newlines(article.title)
        body = _normalize_newlines(article.body)
        return (title + " " + body).strip()
    if mode == "headline":
        return _normalize_newlines(article.title).strip()
    raise ArgumentError(f"unknown text mode {mode!r}")


@dataclass
class CorpusStats:
    """Sample and whitespace-token counts per (split, class)."""

    sample_count: dict = field(default_factory=dict)
    token_count: dict = field(default_factory=dict)

    def total_samples(self) -> int:
        return sum(self.sample_count.values())

    def total_tokens(self) -> int:
        return sum(self.token_count.values())


def corpus_stats(corpus: LabeledCorpus) -> CorpusStats:
    """Count samples and tokens per (split, class) over the full text.

    A token is a maximal run of non-whitespace Unicode characters
    (str.split semantics).
    """
    stats = CorpusStats()
    for split in SPLITS:
        for label in LABELS:
            stats.sample_count[(split, label)] = 0
            stats.token_count[(split, label)] = 0
    for a in corpus.articles:
        key = (a.split, a.label)
        stats.sample_count[key] += 1
        stats.token_count[key] += len(document_text(a, "full").split())
    return stats


def format_stats(stats: CorpusStats) -> str:
    """Plain-text table of per-split counts."""
    lines = [f"{'Set':<10} {'Class':<10} {'#samples':>9} {'#tokens':>12}"]
    for split in SPLITS:
        for label in LABELS:
            lines.append(
                f"{split:<10} {label:<10} "
                f"{stats.sample_count[(split, label)]:>9} "
                f"{stats.token_count[(split, label)]:>12}"
            )
    lines.append(
        f"{'total':<10} {'':<10} {stats.total_samples():>9} {stats.total_tokens():>12}"
    )
    return "\n".join(lines)
