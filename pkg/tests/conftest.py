import numpy as np
import pytest

from satkit.corpus import Article, LabeledCorpus

ALPHABET = "abcde éàç"


def random_text(rng, max_len=80, alphabet=ALPHABET):
    length = int(rng.integers(0, max_len))
    return "".join(alphabet[int(i)] for i in rng.integers(0, len(alphabet), length))


def brute_ngrams(text, n):
    return [text[i : i + n] for i in range(len(text) - n + 1)]


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def make_corpus(n_per_cell=3, words=("un", "deux", "trois", "quatre")):
    """Tiny corpus with one source per (split, label) cell."""
    articles = []
    k = 0
    for split, sources in (
        ("train", ("alpha", "bravo")),
        ("valid", ("gamma", "delta")),
        ("test", ("gamma", "delta")),
    ):
        for label, source in zip(("satirical", "regular"), sources):
            for _ in range(n_per_cell):
                text = " ".join(words[(k + j) % len(words)] for j in range(6))
                articles.append(
                    Article(
                        id=f"{split}-{label[:3]}-{k:03d}",
                        title=f"titre {k}",
                        body=text,
                        label=label,
                        source=source,
                        split=split,
                    )
                )
                k += 1
    return LabeledCorpus(tuple(articles))
