"""Ridge regression in primal and dual form, model and matrix files."""

import numpy as np
import pytest

from satkit.errors import ArgumentError, NumericalError, ParseError
from satkit.learner import (
    DEFAULT_LAMBDA_GRID,
    DenseMatrix,
    DualModel,
    PrimalModel,
    check_lambda_grid,
    decide,
    decide_vector,
    fit_krr,
    fit_rr,
    load_dense_matrix,
    load_model,
    predict_krr,
    predict_rr,
    save_dense_matrix,
    save_model,
    tune_lambda,
)
from satkit.ngram import KernelKind, KernelMatrix


def random_problem(rng, m=12, p=5):
    x = rng.standard_normal((m, p))
    y = np.where(rng.random(m) < 0.5, 1.0, -1.0)
    return x, y


def kernel_of(x, ids, kind=KernelKind.LINEAR, n=0):
    return KernelMatrix(tuple(ids), tuple(ids), x @ x.T, kind, n)


def test_fit_krr_matches_direct_solve(rng):
    for _ in range(5):
        x, y = random_problem(rng)
        ids = [f"d{i}" for i in range(len(y))]
        k = kernel_of(x, ids)
        lam = 10.0 ** -rng.integers(1, 6)
        model = fit_krr(k, y, lam)
        expected = np.linalg.solve(k.values + lam * np.eye(len(y)), y)
        assert np.allclose(model.coefficients, expected, rtol=1e-10, atol=1e-12)


def test_fit_krr_residual_contract(rng):
    x, y = random_problem(rng, m=30)
    ids = [f"d{i}" for i in range(30)]
    k = kernel_of(x, ids)
    model = fit_krr(k, y, 1e-4)
    residual = (k.values + 1e-4 * np.eye(30)) @ model.coefficients - y
    assert np.abs(residual).max() <= 1e-8 * (1.0 + np.abs(y).max())


def test_fit_krr_rejects_indefinite_kernel():
    # eigenvalues 1 and -5: not SPD for any small positive lambda
    values = np.array([[-2.0, 3.0], [3.0, -2.0]])
    k = KernelMatrix(("a", "b"), ("a", "b"), values, KernelKind.LINEAR, 0)
    with pytest.raises(NumericalError) as err:
        fit_krr(k, [1.0, -1.0], 1e-6)
    assert err.value.pivot_index is not None


def test_fit_krr_argument_checks(rng):
    x, y = random_problem(rng, m=4)
    ids = ["a", "b", "c", "d"]
    k = kernel_of(x, ids)
    with pytest.raises(ArgumentError):
        fit_krr(k, y, 0.0)
    with pytest.raises(ArgumentError):
        fit_krr(k, y[:3], 1e-3)
    with pytest.raises(ArgumentError):
        fit_krr(k, np.array([1.0, 2.0, -1.0, 1.0]), 1e-3)  # labels must be +-1
    lopsided = KernelMatrix(tuple(ids), tuple(ids), k.values + np.triu(np.ones((4, 4)), 1), KernelKind.LINEAR, 0)
    with pytest.raises(ArgumentError):
        fit_krr(lopsided, y, 1e-3)
    rect = KernelMatrix(("a", "b"), ("a", "b", "c"), np.zeros((2, 3)), KernelKind.LINEAR, 0)
    with pytest.raises(ArgumentError):
        fit_krr(rect, [1.0, -1.0], 1e-3)


def test_predict_krr_requires_matching_columns(rng):
    x, y = random_problem(rng, m=4)
    ids = ["a", "b", "c", "d"]
    model = fit_krr(kernel_of(x, ids), y, 1e-2)
    wrong = KernelMatrix(("q",), ("a", "b", "d", "c"), np.zeros((1, 4)), KernelKind.LINEAR, 0)
    with pytest.raises(ArgumentError):
        predict_krr(model, wrong)


def test_primal_dual_identity(rng):
    for _ in range(6):
        x, y = random_problem(rng, m=15, p=4)
        ids = [f"d{i}" for i in range(15)]
        lam = 10.0 ** -rng.integers(1, 7)
        dual = fit_krr(kernel_of(x, ids), y, lam)
        primal = fit_rr(DenseMatrix(tuple(ids), x), y, lam)
        x_new = rng.standard_normal((7, 4))
        k_cross = KernelMatrix(
            tuple(f"t{i}" for i in range(7)), tuple(ids), x_new @ x.T, KernelKind.LINEAR, 0
        )
        s_dual, l_dual = predict_krr(dual, k_cross)
        s_primal, l_primal = predict_rr(
            primal, DenseMatrix(tuple(f"t{i}" for i in range(7)), x_new)
        )
        scale = np.abs(s_dual).max()
        assert np.abs(s_dual - s_primal).max() <= 1e-6 * max(scale, 1e-30)
        assert np.array_equal(l_dual, l_primal)


def test_fit_rr_rejects_non_finite():
    x = DenseMatrix(("a", "b"), np.array([[1e308, 1e308], [1e308, -1e308]]))
    with pytest.raises(NumericalError):
        fit_rr(x, [1.0, -1.0], 1e-3)


def test_decide_rule():
    assert decide(0.0) == 1
    assert decide(-0.0) == 1
    assert decide(1e-300) == 1
    assert decide(-1e-300) == -1
    with pytest.raises(NumericalError):
        decide(float("nan"))
    assert np.array_equal(decide_vector(np.array([0.3, 0.0, -0.2])), [1, 1, -1])


def test_lambda_grid_checks():
    assert check_lambda_grid(DEFAULT_LAMBDA_GRID) == DEFAULT_LAMBDA_GRID
    with pytest.raises(ArgumentError):
        check_lambda_grid(())
    with pytest.raises(ArgumentError):
        check_lambda_grid((1e-2, -1e-3))
    with pytest.raises(ArgumentError):
        check_lambda_grid((1e-2, 1e-2))


def test_tune_lambda_prefers_larger_on_tie():
    best, curve = tune_lambda(lambda lam: lam, lambda model: 0.75, (1e-3, 1e-1, 1e-2))
    assert best == 1e-1
    assert curve == [(1e-3, 0.75), (1e-1, 0.75), (1e-2, 0.75)]


def test_tune_lambda_skips_failures():
    def trainer(lam):
        if lam < 1e-2:
            raise NumericalError("unstable")
        return lam

    best, curve = tune_lambda(trainer, lambda lam: 1.0 / lam, (1e-1, 1e-2, 1e-3))
    assert best == 1e-2
    assert curve == [(1e-1, 10.0), (1e-2, 100.0), (1e-3, None)]


def test_tune_lambda_all_failed():
    def trainer(lam):
        raise NumericalError("boom")

    with pytest.raises(NumericalError):
        tune_lambda(trainer, lambda m: 1.0, (1e-1, 1e-2))


def test_dense_matrix_select():
    x = DenseMatrix(("a", "b", "c"), np.arange(6.0).reshape(3, 2))
    sub = x.select(["c", "a"])
    assert sub.row_ids == ("c", "a")
    assert np.array_equal(sub.values, [[4.0, 5.0], [0.0, 1.0]])
    with pytest.raises(ArgumentError):
        x.select(["a", "zzz"])


def test_fsdm_round_trip_exact(tmp_path, rng):
    tricky = np.array(
        [
            [1 / 3, -0.0, 1e-17],
            [1e300, -1e-300, 123456789.123456789],
            [np.pi, np.e, 2.0 / 7.0],
        ]
    )
    x = DenseMatrix(("r0", "r1", "r2"), tricky)
    path = tmp_path / "x.fsdm"
    save_dense_matrix(x, path)
    back = load_dense_matrix(path)
    assert back.row_ids == x.row_ids
    assert np.array_equal(back.values, x.values)  # bit-exact via repr round-trip
    assert np.signbit(back.values[0, 1])


def test_fsdm_header_is_text(tmp_path):
    x = DenseMatrix(("a",), np.array([[1.5, 2.5]]))
    path = tmp_path / "x.fsdm"
    save_dense_matrix(x, path)
    first = path.read_text(encoding="utf-8").splitlines()[0]
    assert first == "FSDM v1 1 2"


def test_fsdm_rejects_malformed(tmp_path):
    path = tmp_path / "x.fsdm"
    path.write_text("FSDM v2 1 1\na\t1.0\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_dense_matrix(path)
    path.write_text("FSDM v1 2 1\na\t1.0\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_dense_matrix(path)
    path.write_text("FSDM v1 1 2\na\t1.0\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_dense_matrix(path)
    path.write_text("FSDM v1 1 1\na\tnope\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_dense_matrix(path)
    path.write_text("FSDM v1 1 1\na\t1.0\nb\t2.0\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_dense_matrix(path)


def test_fsml_round_trip_dual(tmp_path, rng):
    model = DualModel(("a", "b"), np.array([0.25, -1.75]), 1e-3, KernelKind.PBSK, 5)
    path = tmp_path / "m.fsml"
    save_model(model, path)
    back = load_model(path)
    assert isinstance(back, DualModel)
    assert back.train_ids == model.train_ids
    assert np.array_equal(back.coefficients, model.coefficients)
    assert back.lam == model.lam and back.kind == model.kind and back.n == model.n


def test_fsml_round_trip_primal(tmp_path):
    model = PrimalModel(np.array([1.5, -2.5, 1e-9]), 1e-2)
    path = tmp_path / "m.fsml"
    save_model(model, path)
    back = load_model(path)
    assert isinstance(back, PrimalModel)
    assert np.array_equal(back.weights, model.weights)
    assert back.lam == model.lam


def test_fsml_rejects_bad_magic(tmp_path):
    path = tmp_path / "m.fsml"
    path.write_bytes(b"XXXX" + b"\x00" * 30)
    with pytest.raises(ParseError):
        load_model(path)
