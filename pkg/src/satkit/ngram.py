"""Character n-gram profiles and PBSK/HISK Gram-matrix blocks.

Characters are Unicode scalar values (Python str indexing), never bytes:
accented characters count as single symbols. Kernel values are exact
integers carried in float64.
"""

from __future__ import annotations

import struct
from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import ArgumentError, ParseError


class KernelKind(IntEnum):
    """Wire codes match the FSKM file format."""

    PBSK = 0
    HISK = 1
    LINEAR = 2


@dataclass(frozen=True)
class NgramProfile:
    """Sparse n-gram occurrence counts for one document."""

    n: int
    counts: dict
    total: int

    def __len__(self) -> int:
        return len(self.counts)


def extract_profile(text: str, n: int) -> NgramProfile:
    """Count all contiguous length-n substrings of ``text``.

    Empty profile when the text is shorter than n.
    """
    if n < 1:
        raise ArgumentError(f"n-gram length must be >= 1, got {n}")
    upper = len(text) - n + 1
    counts = Counter(text[i : i + n] for i in range(upper)) if upper > 0 else Counter()
    return NgramProfile(n=n, counts=dict(counts), total=max(0, upper))


def self_kernel(p: NgramProfile, kind: KernelKind, presence_min_count: int = 1) -> float:
    """kernel_value(p, p, kind) without the pairwise loop."""
    if kind == KernelKind.HISK:
        return float(p.total)
    if kind == KernelKind.PBSK:
        if presence_min_count <= 1:
            return float(len(p.counts))
        return float(sum(1 for c in p.counts.values() if c >= presence_min_count))
    raise ArgumentError(f"self_kernel undefined for kind {kind!r}")


def kernel_value(
    p: NgramProfile,
    q: NgramProfile,
    kind: KernelKind,
    presence_min_count: int = 1,
) -> float:
    """HISK: sum of min occurrence counts over shared n-grams.
    PBSK: number of distinct shared n-grams.

    ``presence_min_count`` only affects PBSK; the default 1 is the
    presence-bit reading, 2 restores the occurs-more-than-once variant
    for investigation.
    """
    if kind not in (KernelKind.PBSK, KernelKind.HISK):
        raise ArgumentError(f"kernel_value requires PBSK or HISK, got {kind!r}")
    if p.n != q.n:
        raise ArgumentError(f"n-gram length mismatch: {p.n} vs {q.n}")
    small, large = (p.counts, q.counts) if len(p.counts) <= len(q.counts) else (q.counts, p.counts)
    total = 0
    if kind == KernelKind.HISK:
        for g, c in small.items():
            other = large.get(g)
            if other is not None:
                total += c if c <= other else other
    else:
        t = presence_min_count
        for g, c in small.items():
            if c >= t and large.get(g, 0) >= t:
                total += 1
    return float(total)


@dataclass(frozen=True)
class KernelMatrix:
    """Dense block of pairwise kernel values with its document id lists."""

    row_ids: tuple
    col_ids: tuple
    values: np.ndarray
    kind: KernelKind
    n: int

    def __post_init__(self):
        if self.values.shape != (len(self.row_ids), len(self.col_ids)):
            raise ArgumentError(
                f"values shape {self.values.shape} does not match id lists "
                f"({len(self.row_ids)} x {len(self.col_ids)})"
            )


@dataclass
class EncodedProfiles:
    """CSR encoding of profiles over a shared n-gram vocabulary.

    ``vocab`` maps n-gram string -> integer id; per-document id slices are
    sorted. Encodings are only comparable when they share the same vocab
    object.
    """

    n: int
    indptr: np.ndarray
    ids: np.ndarray
    counts: np.ndarray
    vocab: dict

    def __len__(self) -> int:
        return self.indptr.size - 1


def encode_profiles(
    profiles: Sequence[NgramProfile],
    vocab: dict | None = None,
    presence_min_count: int = 1,
) -> EncodedProfiles:
    """Encode profiles as CSR arrays, growing ``vocab`` in place.

    Entries with count < presence_min_count are dropped (only relevant for
    the non-default PBSK threshold; with the default 1 nothing is dropped).
    """
    if vocab is None:
        vocab = {}
    ns = {p.n for p in profiles}
    if len(ns) > 1:
        raise ArgumentError(f"profiles mix n-gram lengths: {sorted(ns)}")
    n = ns.pop() if ns else 0
    indptr = np.zeros(len(profiles) + 1, dtype=np.int64)
    ids_parts = []
    cnt_parts = []
    for k, p in enumerate(profiles):
        items = p.counts.items()
        if presence_min_count > 1:
            items = [(g, c) for g, c in items if c >= presence_min_count]
        row_ids = np.empty(len(items), dtype=np.int64)
        row_cnt = np.empty(len(items), dtype=np.int64)
        for j, (g, c) in enumerate(items):
            gid = vocab.get(g)
            if gid is None:
                gid = len(vocab)
                vocab[g] = gid
            row_ids[j] = gid
            row_cnt[j] = c
        order = np.argsort(row_ids, kind="stable")
        ids_parts.append(row_ids[order])
        cnt_parts.append(row_cnt[order])
        indptr[k + 1] = indptr[k] + row_ids.size
    ids = np.concatenate(ids_parts) if ids_parts else np.empty(0, dtype=np.int64)
    counts = np.concatenate(cnt_parts) if cnt_parts else np.empty(0, dtype=np.int64)
    return EncodedProfiles(n=n, indptr=indptr, ids=ids, counts=counts, vocab=vocab)


def gram_from_encoded(
    enc_rows: EncodedProfiles,
    enc_cols: EncodedProfiles | None,
    kind: KernelKind,
    row_ids: Sequence[str] | None = None,
    col_ids: Sequence[str] | None = None,
    backend: str | None = None,
) -> KernelMatrix:
    """Gram block over pre-encoded profiles.

    ``enc_cols=None`` selects the symmetric path: upper triangle computed,
    lower mirrored bitwise.
    """
    if kind not in (KernelKind.PBSK, KernelKind.HISK):
        raise ArgumentError(f"gram blocks require PBSK or HISK, got {kind!r}")
    presence = kind == KernelKind.PBSK
    if enc_cols is None:
        values = _kernels.gram_sym(
            enc_rows.indptr, enc_rows.ids, enc_rows.counts, presence, backend=backend
        )
        rids = _default_ids(row_ids, len(enc_rows))
        return KernelMatrix(rids, rids, values, kind, enc_rows.n)
    if enc_cols.vocab is not enc_rows.vocab:
        raise ArgumentError("row and column encodings must share one vocabulary")
    if enc_rows.n != enc_cols.n and len(enc_rows) and len(enc_cols):
        raise ArgumentError(f"n-gram length mismatch: {enc_rows.n} vs {enc_cols.n}")
    values = _kernels.gram_rect(
        enc_rows.indptr,
        enc_rows.ids,
        enc_rows.counts,
        enc_cols.indptr,
        enc_cols.ids,
        enc_cols.counts,
        presence,
        backend=backend,
    )
    return KernelMatrix(
        _default_ids(row_ids, len(enc_rows)),
        _default_ids(col_ids, len(enc_cols)),
        values,
        kind,
        enc_rows.n,
    )


def _default_ids(ids, count: int) -> tuple:
    if ids is None:
        return tuple(str(i) for i in range(count))
    if len(ids) != count:
        raise ArgumentError(f"{len(ids)} ids supplied for {count} profiles")
    return tuple(ids)


def gram_block(
    rows: Sequence[NgramProfile],
    cols: Sequence[NgramProfile],
    kind: KernelKind,
    row_ids: Sequence[str] | None = None,
    col_ids: Sequence[str] | None = None,
    presence_min_count: int = 1,
    backend: str | None = None,
) -> KernelMatrix:
    """Pairwise kernel values between two profile lists.

    Passing the same list object as rows and cols computes only the upper
    triangle and mirrors it, giving a bitwise-symmetric matrix.
    """
    vocab: dict = {}
    enc_rows = encode_profiles(rows, vocab, presence_min_count)
    if cols is rows:
        return gram_from_encoded(enc_rows, None, kind, row_ids=row_ids, backend=backend)
    enc_cols = encode_profiles(cols, vocab, presence_min_count)
    return gram_from_encoded(
        enc_rows, enc_cols, kind, row_ids=row_ids, col_ids=col_ids, backend=backend
    )


def normalize_gram(
    block: KernelMatrix, self_rows: np.ndarray, self_cols: np.ndarray
) -> KernelMatrix:
    """Cosine-normalize: K[i,j] / sqrt(self_rows[i] * self_cols[j]).

    Rows/columns with zero self-kernel map to 0. Off by default in every
    pipeline; the unnormalized kernel is the reference definition.
    """
    self_rows = np.asarray(self_rows, dtype=np.float64)
    self_cols = np.asarray(self_cols, dtype=np.float64)
    if self_rows.shape != (len(block.row_ids),) or self_cols.shape != (len(block.col_ids),):
        raise ArgumentError("self-kernel vector lengths do not match the block")
    if np.any(self_rows < 0) or np.any(self_cols < 0):
        raise ArgumentError("self-kernel values must be non-negative")
    ra = np.where(self_rows > 0, self_rows, 1.0)
    cb = np.where(self_cols > 0, self_cols, 1.0)
    values = block.values / np.sqrt(np.outer(ra, cb))
    values[self_rows == 0, :] = 0.0
    values[:, self_cols == 0] = 0.0
    return KernelMatrix(block.row_ids, block.col_ids, values, block.kind, block.n)


_FSKM_MAGIC = b"FSKM"
_FSKM_VERSION = 1


def save_kernel_matrix(block: KernelMatrix, path) -> None:
    """Write the little-endian FSKM binary format."""
    values = np.ascontiguousarray(block.values, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(_FSKM_MAGIC)
        fh.write(
            struct.pack(
                "<IBIII",
                _FSKM_VERSION,
                int(block.kind),
                block.n,
                len(block.row_ids),
                len(block.col_ids),
            )
        )
        fh.write(values.tobytes())
        for ids in (block.row_ids, block.col_ids):
            for doc_id in ids:
                raw = doc_id.encode("utf-8")
                fh.write(struct.pack("<I", len(raw)))
                fh.write(raw)


def load_kernel_matrix(path) -> KernelMatrix:
    """Read an FSKM file; rejects unknown magic or version."""
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _FSKM_MAGIC:
            raise ParseError(f"{path}: not a kernel matrix file (magic {magic!r})")
        header = fh.read(struct.calcsize("<IBIII"))
        if len(header) != struct.calcsize("<IBIII"):
            raise ParseError(f"{path}: truncated header")
        version, kind_code, n, rows, cols = struct.unpack("<IBIII", header)
        if version != _FSKM_VERSION:
            raise ParseError(f"{path}: unsupported format version {version}")
        try:
            kind = KernelKind(kind_code)
        except ValueError:
            raise ParseError(f"{path}: unknown kernel kind code {kind_code}") from None
        payload = fh.read(rows * cols * 8)
        if len(payload) != rows * cols * 8:
            raise ParseError(f"{path}: truncated value block")
        values = np.frombuffer(payload, dtype="<f8").reshape(rows, cols).copy()
        id_lists = []
        for count in (rows, cols):
            ids = []
            for _ in range(count):
                raw_len = fh.read(4)
                if len(raw_len) != 4:
                    raise ParseError(f"{path}: truncated id block")
                (length,) = struct.unpack("<I", raw_len)
                raw_id = fh.read(length)
                if len(raw_id) != length:
                    raise ParseError(f"{path}: truncated id block")
                ids.append(raw_id.decode("utf-8"))
            id_lists.append(tuple(ids))
    return KernelMatrix(id_lists[0], id_lists[1], values, kind, n)
