"""Deterministic synthetic corpus generation."""

import dataclasses

import pytest

from satkit.corpus import corpus_stats, document_text, load_corpus, save_corpus
from satkit.errors import ArgumentError
from satkit.synthetic import (
    MARKER_REGULAR,
    MARKER_SATIRICAL,
    SyntheticSpec,
    generate_synthetic,
)


def test_same_seed_same_bytes(tmp_path):
    spec = SyntheticSpec(seed=42)
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    save_corpus(generate_synthetic(spec), a)
    save_corpus(generate_synthetic(spec), b)
    assert a.read_bytes() == b.read_bytes()


def test_different_seed_differs(tmp_path):
    a = generate_synthetic(SyntheticSpec(seed=1))
    b = generate_synthetic(SyntheticSpec(seed=2))
    assert a.articles != b.articles


def test_split_sizes_and_balance():
    corpus = generate_synthetic(SyntheticSpec(n_train=10, n_valid=6, n_test=4))
    stats = corpus_stats(corpus)
    assert stats.sample_count[("train", "satirical")] == 5
    assert stats.sample_count[("train", "regular")] == 5
    assert stats.sample_count[("valid", "satirical")] == 3
    assert stats.sample_count[("test", "regular")] == 2


def test_markers_present_once_per_document():
    corpus = generate_synthetic(SyntheticSpec(n_train=8, n_valid=4, n_test=4))
    for a in corpus.articles:
        tokens = document_text(a, "full").split()
        marker = MARKER_SATIRICAL if a.label == "satirical" else MARKER_REGULAR
        other = MARKER_REGULAR if a.label == "satirical" else MARKER_SATIRICAL
        assert tokens.count(marker) == 1
        assert other not in tokens


def test_sources_disjoint_between_train_and_eval(tmp_path):
    # the generated corpus must satisfy the strict loader, shift or not
    for shift in (True, False):
        spec = SyntheticSpec(n_train=8, n_valid=4, n_test=4, domain_shift=shift)
        path = tmp_path / f"c{shift}.jsonl"
        save_corpus(generate_synthetic(spec), path)
        corpus = load_corpus(path)
        train_sources = {a.source for a in corpus.split("train")}
        eval_sources = {a.source for a in corpus.articles if a.split != "train"}
        assert not train_sources & eval_sources


def test_shift_flag_irrelevant_without_confounders():
    base = SyntheticSpec(confounder_strength=0.0)
    with_shift = generate_synthetic(dataclasses.replace(base, domain_shift=True))
    without = generate_synthetic(dataclasses.replace(base, domain_shift=False))
    assert with_shift.articles == without.articles


def test_confounder_vocab_shifts_with_domain():
    spec = SyntheticSpec(confounder_strength=0.6, signal_rate=0.05, seed=0)
    corpus = generate_synthetic(spec)
    train_text = " ".join(document_text(a) for a in corpus.split("train"))
    eval_text = " ".join(document_text(a) for a in corpus.articles if a.split != "train")
    train_conf = {t for t in train_text.split() if t.startswith("conf")}
    eval_conf = {t for t in eval_text.split() if t.startswith("conf")}
    assert train_conf and eval_conf and not train_conf & eval_conf
    # without shift, evaluation reuses the training confounder vocabulary
    plain = generate_synthetic(dataclasses.replace(spec, domain_shift=False))
    eval_plain = " ".join(document_text(a) for a in plain.articles if a.split != "train")
    assert {t for t in eval_plain.split() if t.startswith("conf")} <= train_conf


def test_spec_validation():
    with pytest.raises(ArgumentError):
        generate_synthetic(SyntheticSpec(n_train=0))
    with pytest.raises(ArgumentError):
        generate_synthetic(SyntheticSpec(signal_rate=0.5, confounder_strength=0.6))
    with pytest.raises(ArgumentError):
        generate_synthetic(SyntheticSpec(confounder_strength=-0.1))
