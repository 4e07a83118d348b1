"""Primal ridge regression on dense features and dual kernel ridge
regression on precomputed kernel matrices, plus grid-based lambda tuning.

Systems are solved by a direct Cholesky factorization (LAPACK potrf):
corpus sizes stay small enough that O(m^3) is fine and deterministic. A
non-SPD system raises instead of being jittered, because PBSK/HISK Grams
are PSD by construction and failure means a bug upstream.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import lapack

from .errors import ArgumentError, NumericalError, ParseError, SatkitError
from .ngram import KernelKind, KernelMatrix

DEFAULT_LAMBDA_GRID = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7)

_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class DenseMatrix:
    """Row-major dense feature matrix with document ids."""

    row_ids: tuple
    values: np.ndarray

    def __post_init__(self):
        if self.values.ndim != 2:
            raise ArgumentError("dense matrix must be 2-dimensional")
        if self.values.shape[0] != len(self.row_ids):
            raise ArgumentError(
                f"{len(self.row_ids)} ids for {self.values.shape[0]} rows"
            )

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    def select(self, ids: Sequence[str]) -> "DenseMatrix":
        """Rows for the given ids, in the given order."""
        index = {doc_id: i for i, doc_id in enumerate(self.row_ids)}
        missing = [i for i in ids if i not in index]
        if missing:
            raise ArgumentError(f"ids missing from dense matrix: {missing[:5]}")
        rows = np.array([index[i] for i in ids], dtype=np.intp)
        return DenseMatrix(tuple(ids), self.values[rows])


@dataclass(frozen=True)
class DualModel:
    """KRR coefficients over the training documents."""

    train_ids: tuple
    coefficients: np.ndarray
    lam: float
    kind: KernelKind
    n: int

    def __post_init__(self):
        if self.coefficients.shape != (len(self.train_ids),):
            raise ArgumentError("coefficient length must equal train id count")


@dataclass(frozen=True)
class PrimalModel:
    """RR weight vector."""

    weights: np.ndarray
    lam: float

    def __post_init__(self):
        if not np.all(np.isfinite(self.weights)):
            raise NumericalError("primal weights contain non-finite entries")

    @property
    def dim(self) -> int:
        return self.weights.shape[0]


def _solve_spd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve a x = b for symmetric positive-definite a via potrf/potrs."""
    c, info = lapack.dpotrf(a, lower=1, overwrite_a=0)
    if info > 0:
        raise NumericalError(
            f"matrix not positive definite at pivot {info - 1}",
            pivot_index=info - 1,
        )
    if info < 0:
        raise NumericalError(f"illegal argument {-info} to dpotrf")
    x, info = lapack.dpotrs(c, b, lower=1)
    if info != 0:
        raise NumericalError(f"dpotrs failed with info={info}")
    return x


def _check_residual(a: np.ndarray, x: np.ndarray, b: np.ndarray) -> None:
    resid = np.abs(a @ x - b).max() if b.size else 0.0
    bound = _RESIDUAL_TOL * (1.0 + (np.abs(b).max() if b.size else 0.0))
    if resid > bound:
        raise NumericalError(f"solve residual {resid:.3e} exceeds bound {bound:.3e}")


def _check_sign_vector(y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64)
    if y.ndim != 1:
        raise ArgumentError("label vector must be 1-dimensional")
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise ArgumentError("labels must be -1 or +1")
    return y


def fit_krr(k_train: KernelMatrix, y: Sequence[float], lam: float) -> DualModel:
    """Solve (K + lam*I) alpha = y on a square symmetric training Gram."""
    if lam <= 0:
        raise ArgumentError(f"lambda must be positive, got {lam}")
    if k_train.row_ids != k_train.col_ids:
        raise ArgumentError("training kernel must have row_ids == col_ids")
    k = np.asarray(k_train.values, dtype=np.float64)
    m = k.shape[0]
    if k.shape != (m, m):
        raise ArgumentError("training kernel must be square")
    scale = max(1.0, np.abs(k).max()) if m else 1.0
    if m and np.abs(k - k.T).max() > 1e-10 * scale:
        raise ArgumentError("training kernel is not symmetric")
    y = _check_sign_vector(y)
    if y.shape[0] != m:
        raise ArgumentError(f"{y.shape[0]} labels for {m} training rows")
    a = k + lam * np.eye(m)
    alpha = _solve_spd(a, y)
    _check_residual(a, alpha, y)
    return DualModel(k_train.row_ids, alpha, float(lam), k_train.kind, k_train.n)


def predict_krr(model: DualModel, k_cross: KernelMatrix):
    """Scores and sign labels for rows of a (eval x train) kernel block."""
    if k_cross.col_ids != model.train_ids:
        raise ArgumentError("kernel columns do not align with model train ids")
    scores = np.asarray(k_cross.values, dtype=np.float64) @ model.coefficients
    return scores, decide_vector(scores)


def fit_rr(x: DenseMatrix, y: Sequence[float], lam: float) -> PrimalModel:
    """Solve (X^T X + lam*I) w = X^T y."""
    if lam <= 0:
        raise ArgumentError(f"lambda must be positive, got {lam}")
    y = _check_sign_vector(y)
    if y.shape[0] != x.values.shape[0]:
        raise ArgumentError(f"{y.shape[0]} labels for {x.values.shape[0]} rows")
    xv = np.asarray(x.values, dtype=np.float64)
    # overflow surfaces as non-finite entries, caught right below
    with np.errstate(over="ignore", invalid="ignore"):
        a = xv.T @ xv + lam * np.eye(x.dim)
        b = xv.T @ y
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise NumericalError("normal equations overflowed to non-finite values")
    w = _solve_spd(a, b)
    _check_residual(a, w, b)
    return PrimalModel(w, float(lam))


def predict_rr(model: PrimalModel, x: DenseMatrix):
    """Scores X @ w and sign labels."""
    if x.dim != model.dim:
        raise ArgumentError(f"feature dim {x.dim} does not match model dim {model.dim}")
    scores = np.asarray(x.values, dtype=np.float64) @ model.weights
    return scores, decide_vector(scores)


def decide(score: float) -> int:
    """Sign decision; the tie at exactly 0 predicts +1."""
    if np.isnan(score):
        raise NumericalError("cannot decide on a NaN score")
    return 1 if score >= 0 else -1


def decide_vector(scores: np.ndarray) -> np.ndarray:
    if np.isnan(scores).any():
        raise NumericalError("cannot decide on NaN scores")
    return np.where(scores >= 0, 1, -1).astype(np.int64)


def check_lambda_grid(grid: Sequence[float]) -> tuple:
    grid = tuple(float(v) for v in grid)
    if not grid:
        raise ArgumentError("lambda grid is empty")
    if any(v <= 0 for v in grid):
        raise ArgumentError("lambda grid values must be positive")
    if len(set(grid)) != len(grid):
        raise ArgumentError("lambda grid contains duplicates")
    return grid


def tune_lambda(
    trainer: Callable[[float], object],
    scorer: Callable[[object], float],
    grid: Sequence[float] = DEFAULT_LAMBDA_GRID,
):
    """Pick the grid value maximizing validation accuracy.

    Ties go to the larger lambda (stronger regularization). Returns
    (best_lambda, table) where table lists (lambda, accuracy) in grid
    order, accuracy None for values whose training failed.
    """
    grid = check_lambda_grid(grid)
    table = []
    best = None
    for lam in grid:
        try:
            model = trainer(lam)
        except SatkitError:
            table.append((lam, None))
            continue
        acc = float(scorer(model))
        table.append((lam, acc))
        if best is None or acc > best[1] or (acc == best[1] and lam > best[0]):
            best = (lam, acc)
    if best is None:
        raise NumericalError("training failed for every lambda in the grid")
    return best[0], table


# --- dense feature file (FSDM v1) ----------------------------------------

_FSDM_HEADER = "FSDM v1"


def save_dense_matrix(matrix: DenseMatrix, path) -> None:
    """Write the FSDM v1 text format.

    Floats are written with shortest round-trip repr (>= 8 significant
    digits of precision, locale-independent).
    """
    with open(path, "w", encoding="utf-8") as fh:
        rows, cols = matrix.values.shape
        fh.write(f"{_FSDM_HEADER} {rows} {cols}\n")
        for doc_id, row in zip(matrix.row_ids, matrix.values):
            fh.write(doc_id + "\t" + " ".join(repr(float(v)) for v in row) + "\n")


def load_dense_matrix(path) -> DenseMatrix:
    """Read an FSDM v1 file."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        parts = header.split(" ")
        if len(parts) != 4 or " ".join(parts[:2]) != _FSDM_HEADER:
            raise ParseError(f"{path}: bad FSDM header {header!r}", 1)
        try:
            rows, cols = int(parts[2]), int(parts[3])
        except ValueError:
            raise ParseError(f"{path}: bad FSDM header {header!r}", 1) from None
        ids = []
        values = np.empty((rows, cols), dtype=np.float64)
        for i in range(rows):
            line = fh.readline()
            if not line:
                raise ParseError(f"{path}: expected {rows} rows, got {i}", i + 1)
            line = line.rstrip("\n")
            doc_id, _, rest = line.partition("\t")
            if not _:
                raise ParseError(f"{path}: line {i + 2}: missing tab separator", i + 2)
            fields = rest.split()
            if len(fields) != cols:
                raise ParseError(
                    f"{path}: line {i + 2}: expected {cols} values, got {len(fields)}",
                    i + 2,
                )
            try:
                values[i] = [float(v) for v in fields]
            except ValueError as exc:
                raise ParseError(f"{path}: line {i + 2}: {exc}", i + 2) from None
            ids.append(doc_id)
        if fh.readline().strip():
            raise ParseError(f"{path}: trailing content after {rows} rows", rows + 2)
    return DenseMatrix(tuple(ids), values)


# --- model files (FSML v1) ------------------------------------------------

_FSML_MAGIC = b"FSML"
_FSML_VERSION = 1
_TYPE_DUAL = 0
_TYPE_PRIMAL = 1
_KIND_NONE = 255


def save_model(model, path) -> None:
    """Write a DualModel or PrimalModel with the FSML binary framing."""
    with open(path, "wb") as fh:
        fh.write(_FSML_MAGIC)
        if isinstance(model, DualModel):
            coeffs = np.ascontiguousarray(model.coefficients, dtype="<f8")
            fh.write(
                struct.pack(
                    "<IBBId", _FSML_VERSION, _TYPE_DUAL, int(model.kind), model.n, model.lam
                )
            )
            fh.write(struct.pack("<I", coeffs.size))
            fh.write(coeffs.tobytes())
            fh.write(struct.pack("<I", len(model.train_ids)))
            for doc_id in model.train_ids:
                raw = doc_id.encode("utf-8")
                fh.write(struct.pack("<I", len(raw)))
                fh.write(raw)
        elif isinstance(model, PrimalModel):
            coeffs = np.ascontiguousarray(model.weights, dtype="<f8")
            fh.write(
                struct.pack("<IBBId", _FSML_VERSION, _TYPE_PRIMAL, _KIND_NONE, 0, model.lam)
            )
            fh.write(struct.pack("<I", coeffs.size))
            fh.write(coeffs.tobytes())
            fh.write(struct.pack("<I", 0))
        else:
            raise ArgumentError(f"cannot save model of type {type(model).__name__}")


def load_model(path):
    """Read an FSML file back into a DualModel or PrimalModel."""
    with open(path, "rb") as fh:
        if fh.read(4) != _FSML_MAGIC:
            raise ParseError(f"{path}: not a model file")
        version, mtype, kind_code, n, lam = struct.unpack(
            "<IBBId", fh.read(struct.calcsize("<IBBId"))
        )
        if version != _FSML_VERSION:
            raise ParseError(f"{path}: unsupported model version {version}")
        (n_coef,) = struct.unpack("<I", fh.read(4))
        coeffs = np.frombuffer(fh.read(n_coef * 8), dtype="<f8").copy()
        (n_ids,) = struct.unpack("<I", fh.read(4))
        ids = []
        for _ in range(n_ids):
            (length,) = struct.unpack("<I", fh.read(4))
            ids.append(fh.read(length).decode("utf-8"))
    if mtype == _TYPE_DUAL:
        return DualModel(tuple(ids), coeffs, lam, KernelKind(kind_code), n)
    if mtype == _TYPE_PRIMAL:
        return PrimalModel(coeffs, lam)
    raise ParseError(f"{path}: unknown model type {mtype}")
