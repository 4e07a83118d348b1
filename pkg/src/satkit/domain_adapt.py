"""Unsupervised domain adaptation: augment source-domain representations
with their similarities to unlabeled target-domain samples.

The explicit form appends, to each feature vector, its dot products with
the r target vectors (p + r components). The kernelized form composes
K' = K + S S^T with S holding base-kernel similarities to the target
samples, which is exactly the Gram matrix of the explicitly augmented
vectors. Target labels are never read: nothing here accepts any.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError
from .learner import DenseMatrix
from .ngram import KernelKind, KernelMatrix


@dataclass(frozen=True)
class SimilarityBlock:
    """Similarities between source rows and target samples."""

    source_ids: tuple
    target_ids: tuple
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (len(self.source_ids), len(self.target_ids)):
            raise ArgumentError(
                f"similarity shape {self.values.shape} does not match id lists"
            )


def similarity_block(x: DenseMatrix, z: DenseMatrix) -> SimilarityBlock:
    """Dot products X Z^T between source rows and target rows."""
    if x.dim != z.dim:
        raise ArgumentError(f"feature dims differ: {x.dim} vs {z.dim}")
    return SimilarityBlock(x.row_ids, z.row_ids, x.values @ z.values.T)


def similarity_from_kernel(block: KernelMatrix) -> SimilarityBlock:
    """Reinterpret a (source x target) kernel block as similarities."""
    return SimilarityBlock(block.row_ids, block.col_ids, np.asarray(block.values))


def augment_features(x: DenseMatrix, sim: SimilarityBlock) -> DenseMatrix:
    """Concatenate each row with its target-similarity vector (dim p + r)."""
    if sim.source_ids != x.row_ids:
        raise ArgumentError("similarity rows do not align with feature rows")
    if len(sim.target_ids) == 0:
        return DenseMatrix(x.row_ids, x.values.copy())
    return DenseMatrix(x.row_ids, np.hstack([x.values, sim.values]))


def augment_gram(
    k: KernelMatrix, sim_rows: SimilarityBlock, sim_cols: SimilarityBlock
) -> KernelMatrix:
    """K'[a,b] = K[a,b] + sum_l sim_rows[a,l] * sim_cols[b,l].

    Equals the Gram of the explicitly augmented vectors under a linear
    kernel on the appended block. With zero target samples K is returned
    unchanged (copy).
    """
    if sim_rows.source_ids != k.row_ids:
        raise ArgumentError("row similarities do not align with kernel rows")
    if sim_cols.source_ids != k.col_ids:
        raise ArgumentError("column similarities do not align with kernel columns")
    if sim_rows.target_ids != sim_cols.target_ids:
        raise ArgumentError("row and column similarity target ids differ")
    if len(sim_rows.target_ids) == 0:
        return KernelMatrix(k.row_ids, k.col_ids, k.values.copy(), k.kind, k.n)
    values = k.values + sim_rows.values @ sim_cols.values.T
    return KernelMatrix(k.row_ids, k.col_ids, values, k.kind, k.n)


def linear_kernel(x: DenseMatrix, z: DenseMatrix | None = None) -> KernelMatrix:
    """Gram X Z^T (or X X^T) wrapped as a LINEAR kernel matrix."""
    if z is None:
        values = x.values @ x.values.T
        return KernelMatrix(x.row_ids, x.row_ids, values, KernelKind.LINEAR, 0)
    if x.dim != z.dim:
        raise ArgumentError(f"feature dims differ: {x.dim} vs {z.dim}")
    return KernelMatrix(x.row_ids, z.row_ids, x.values @ z.values.T, KernelKind.LINEAR, 0)
