"""End-to-end experiment orchestration.

Protocol per run: for string kernels, the n-gram length is tuned first on
the validation split at a fixed default lambda, then lambda is tuned at
the chosen n; when domain adaptation is on, the lambda sweep runs on the
augmented pipeline (a re-tune relative to the corresponding baseline run).
Kernel blocks are cached on disk keyed by corpus hash, task, kind and n;
cached and fresh matrices are bit-identical. Tuning never sees test
labels: the tuner is handed train and valid data only.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .corpus import LabeledCorpus, document_text, load_corpus
from .domain_adapt import (
    augment_features,
    augment_gram,
    similarity_block,
    similarity_from_kernel,
)
from .errors import ArgumentError, ConfigError, ParseError, SatkitError
from .evaluation import EvalReport, accuracy, comparison_table, mcnemar
from .learner import (
    DEFAULT_LAMBDA_GRID,
    DenseMatrix,
    check_lambda_grid,
    fit_krr,
    fit_rr,
    load_dense_matrix,
    predict_krr,
    predict_rr,
    save_model,
    tune_lambda,
)
from .ngram import (
    EncodedProfiles,
    KernelKind,
    KernelMatrix,
    encode_profiles,
    extract_profile,
    gram_from_encoded,
    load_kernel_matrix,
    normalize_gram,
    save_kernel_matrix,
    self_kernel,
)

TASKS = ("full", "headline")
REPRESENTATIONS = ("pbsk", "hisk", "dense")

DEFAULT_NGRAM_GRID_FULL = (4, 5, 6, 7, 8)
DEFAULT_NGRAM_GRID_HEADLINE = (2, 3, 4, 5, 6, 7, 8)
DEFAULT_TUNING_LAMBDA = 1e-3


@dataclass(frozen=True)
class ExperimentConfig:
    corpus: str
    task: str = "full"
    representation: str = "pbsk"
    ngram_grid: tuple = ()  # empty -> task default
    lambda_grid: tuple = DEFAULT_LAMBDA_GRID
    tuning_lambda: float = DEFAULT_TUNING_LAMBDA
    domain_adapt: bool = False
    target_set: str = "valid"  # "valid" or a path to an unlabeled JSONL
    normalize: bool = False
    class_positive: str = "satirical"
    dense_file: str | None = None
    target_dense: str | None = None
    output_dir: str = "runs"
    workers: int = 0  # 0 keeps the library default
    seed: int = 0  # consumed only by synthetic generation
    name: str | None = None


def resolve_config(cfg: ExperimentConfig) -> ExperimentConfig:
    """Fill grid defaults and validate field combinations."""
    if cfg.task not in TASKS:
        raise ConfigError(f"task must be one of {TASKS}, got {cfg.task!r}")
    if cfg.representation not in REPRESENTATIONS:
        raise ConfigError(
            f"representation must be one of {REPRESENTATIONS}, got {cfg.representation!r}"
        )
    grid = tuple(int(n) for n in cfg.ngram_grid)
    if not grid and cfg.representation != "dense":
        grid = DEFAULT_NGRAM_GRID_FULL if cfg.task == "full" else DEFAULT_NGRAM_GRID_HEADLINE
    if cfg.representation != "dense":
        if any(n < 1 for n in grid):
            raise ConfigError("n-gram grid values must be >= 1")
        if len(set(grid)) != len(grid):
            raise ConfigError("n-gram grid contains duplicates")
    if cfg.representation == "dense":
        if not cfg.dense_file:
            raise ConfigError("representation=dense requires dense_file")
        if cfg.normalize:
            raise ConfigError("normalization applies only to string kernels")
        if cfg.domain_adapt and cfg.target_set != "valid" and not cfg.target_dense:
            raise ConfigError(
                "dense domain adaptation with an external target needs target_dense"
            )
        grid = ()
    try:
        lambda_grid = check_lambda_grid(cfg.lambda_grid)
    except ArgumentError as exc:
        raise ConfigError(str(exc)) from exc
    if cfg.tuning_lambda <= 0:
        raise ConfigError("tuning_lambda must be positive")
    if cfg.class_positive not in ("satirical", "regular"):
        raise ConfigError("class_positive must be satirical or regular")
    return dataclasses.replace(cfg, ngram_grid=grid, lambda_grid=lambda_grid)


def _hash_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def config_identity(cfg: ExperimentConfig) -> dict:
    """Fields that define the experiment (paths replaced by content hashes);
    execution details (output_dir, workers, name) stay out."""
    identity = {
        "corpus": _hash_file(cfg.corpus),
        "task": cfg.task,
        "representation": cfg.representation,
        "ngram_grid": list(cfg.ngram_grid),
        "lambda_grid": list(cfg.lambda_grid),
        "tuning_lambda": cfg.tuning_lambda,
        "domain_adapt": cfg.domain_adapt,
        "normalize": cfg.normalize,
        "class_positive": cfg.class_positive,
    }
    if cfg.domain_adapt:
        identity["target_set"] = (
            "valid" if cfg.target_set == "valid" else _hash_file(cfg.target_set)
        )
        if cfg.target_dense:
            identity["target_dense"] = _hash_file(cfg.target_dense)
    if cfg.dense_file:
        identity["dense_file"] = _hash_file(cfg.dense_file)
    return identity


def run_id_for(cfg: ExperimentConfig) -> str:
    blob = json.dumps(config_identity(cfg), sort_keys=True).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class RunReport:
    run_id: str
    name: str
    config: dict
    corpus_hash: str
    task: str
    representation: str
    chosen_n: int
    chosen_lambda: float
    valid_accuracy: float
    test_accuracy: float
    n_curve: list = field(default_factory=list)  # (n, accuracy)
    lambda_curve: list = field(default_factory=list)  # (lambda, accuracy|None)
    valid_predictions: list = field(default_factory=list)  # (id, gold, pred)
    test_predictions: list = field(default_factory=list)
    confusion_valid: dict = field(default_factory=dict)
    confusion_test: dict = field(default_factory=dict)
    matrix_sizes: dict = field(default_factory=dict)
    class_positive: str = "satirical"
    notes: list = field(default_factory=list)
    failed: bool = False
    timing: dict = field(default_factory=dict)  # excluded from determinism

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["n_curve"] = [[n, a] for n, a in self.n_curve]
        d["lambda_curve"] = [[lam, a] for lam, a in self.lambda_curve]
        d["valid_predictions"] = [[i, g, p] for i, g, p in self.valid_predictions]
        d["test_predictions"] = [[i, g, p] for i, g, p in self.test_predictions]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        kwargs = dict(d)
        kwargs["n_curve"] = [tuple(row) for row in d.get("n_curve", [])]
        kwargs["lambda_curve"] = [tuple(row) for row in d.get("lambda_curve", [])]
        kwargs["valid_predictions"] = [tuple(r) for r in d.get("valid_predictions", [])]
        kwargs["test_predictions"] = [tuple(r) for r in d.get("test_predictions", [])]
        known = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in kwargs.items() if k in known})


def load_report(path) -> RunReport:
    with open(path, encoding="utf-8") as fh:
        return RunReport.from_dict(json.load(fh))


def save_report(report: RunReport, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


@contextmanager
def _dir_lock(outdir: Path):
    lock = outdir / ".lock"
    try:
        fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        raise ConfigError(
            f"output directory busy: {lock} exists (remove it if stale)"
        ) from None
    try:
        os.write(fd, f"{os.getpid()}\n".encode())
        os.close(fd)
        yield
    finally:
        lock.unlink(missing_ok=True)


def load_target_documents(path, task: str):
    """Unlabeled adaptation documents from a JSONL file.

    Only id/title/body are read; label, source and split fields are
    ignored on purpose (target labels must never influence anything).
    """
    ids, texts = [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"line {lineno}: invalid JSON: {exc.msg}", lineno) from exc
            for key in ("id", "title", "body"):
                if not isinstance(obj.get(key), str):
                    raise ParseError(f"line {lineno}: missing string field {key!r}", lineno)
            ids.append(obj["id"])
            title = obj["title"].replace("\r\n", " ").replace("\r", " ").replace("\n", " ")
            body = obj["body"].replace("\r\n", " ").replace("\r", " ").replace("\n", " ")
            texts.append((title + " " + body).strip() if task == "full" else title.strip())
    return ids, texts


def _transpose(block: KernelMatrix) -> KernelMatrix:
    return KernelMatrix(
        block.col_ids, block.row_ids, np.ascontiguousarray(block.values.T), block.kind, block.n
    )


class _KernelWorkspace:
    """Per-run profile/encoding memoization plus the on-disk block cache."""

    def __init__(self, cfg, kind, texts, ids, cache_dir: Path, corpus_hash: str, target_tag: str):
        self.kind = kind
        self.texts = texts
        self.ids = ids
        self.cache_dir = cache_dir
        self.corpus_hash = corpus_hash
        self.target_tag = target_tag
        self.task = cfg.task
        self._profiles: dict = {}
        self._encoded: dict = {}
        self._vocab: dict = {}

    def profiles(self, role: str, n: int):
        key = (role, n)
        if key not in self._profiles:
            self._profiles[key] = [extract_profile(t, n) for t in self.texts[role]]
        return self._profiles[key]

    def _encoding(self, role: str, n: int) -> EncodedProfiles:
        key = (role, n)
        if key not in self._encoded:
            vocab = self._vocab.setdefault(n, {})
            self._encoded[key] = encode_profiles(self.profiles(role, n), vocab)
        return self._encoded[key]

    def self_kernels(self, role: str, n: int) -> np.ndarray:
        return np.array(
            [self_kernel(p, self.kind) for p in self.profiles(role, n)], dtype=np.float64
        )

    def _cache_path(self, rows: str, cols: str, n: int) -> Path:
        tag = lambda role: f"target:{self.target_tag}" if role == "target" else role
        parts = (
            "fskm1",
            self.corpus_hash,
            self.task,
            self.kind.name,
            str(n),
            tag(rows),
            tag(cols),
        )
        digest = hashlib.sha256("|".join(parts).encode("utf-8")).hexdigest()[:24]
        return self.cache_dir / f"{digest}.fskm"

    def block(self, rows: str, cols: str, n: int) -> KernelMatrix:
        path = self._cache_path(rows, cols, n)
        if path.exists():
            return load_kernel_matrix(path)
        # The transpose may already be cached; kernels are symmetric functions.
        tpath = self._cache_path(cols, rows, n)
        if rows != cols and tpath.exists():
            return _transpose(load_kernel_matrix(tpath))
        if rows == cols:
            km = gram_from_encoded(
                self._encoding(rows, n), None, self.kind, row_ids=self.ids[rows]
            )
        else:
            km = gram_from_encoded(
                self._encoding(rows, n),
                self._encoding(cols, n),
                self.kind,
                row_ids=self.ids[rows],
                col_ids=self.ids[cols],
            )
        save_kernel_matrix(km, path)
        return km


def _set_workers(workers: int) -> None:
    if workers > 0 and _kernels.NUMBA_AVAILABLE:
        import numba

        numba.set_num_threads(min(workers, numba.config.NUMBA_NUM_THREADS))


def run_experiment(cfg: ExperimentConfig) -> RunReport:
    """Tune, train, evaluate and persist one experiment."""
    cfg = resolve_config(cfg)
    _set_workers(cfg.workers)
    outdir = Path(cfg.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "cache").mkdir(exist_ok=True)
    corpus = load_corpus(cfg.corpus, class_positive=cfg.class_positive)
    corpus_hash = _hash_file(cfg.corpus)
    run_id = run_id_for(cfg)
    run_dir = outdir / "runs" / run_id
    run_dir.mkdir(parents=True, exist_ok=True)
    with _dir_lock(outdir):
        try:
            report = _run_inner(cfg, corpus, corpus_hash, run_id, outdir, run_dir)
        except SatkitError as exc:
            failed = RunReport(
                run_id=run_id,
                name=cfg.name or run_id,
                config=_config_echo(cfg),
                corpus_hash=corpus_hash,
                task=cfg.task,
                representation=cfg.representation,
                chosen_n=0,
                chosen_lambda=0.0,
                valid_accuracy=float("nan"),
                test_accuracy=float("nan"),
                failed=True,
                notes=[f"failed: {exc}"],
                class_positive=cfg.class_positive,
            )
            save_report(failed, run_dir / "report.json")
            raise
    save_report(report, run_dir / "report.json")
    emit_curves(report, run_dir)
    _write_predictions(report, run_dir)
    return report


def _config_echo(cfg: ExperimentConfig) -> dict:
    echo = dataclasses.asdict(cfg)
    echo["ngram_grid"] = list(cfg.ngram_grid)
    echo["lambda_grid"] = list(cfg.lambda_grid)
    return echo


def _split_data(corpus: LabeledCorpus, task: str):
    texts, ids, y = {}, {}, {}
    for role in ("train", "valid", "test"):
        articles = corpus.split(role)
        texts[role] = [document_text(a, task) for a in articles]
        ids[role] = tuple(a.id for a in articles)
        y[role] = np.array([corpus.label_sign(a.label) for a in articles], dtype=np.float64)
    return texts, ids, y


def _run_inner(cfg, corpus, corpus_hash, run_id, outdir, run_dir) -> RunReport:
    timing: dict = {}
    notes = []
    t0 = time.perf_counter()
    texts, ids, y = _split_data(corpus, cfg.task)
    for role in ("train", "valid", "test"):
        if not ids[role]:
            raise ConfigError(f"corpus has no {role} articles")
    if cfg.domain_adapt and cfg.target_set == "valid":
        notes.append(
            "domain adaptation target is the unlabeled validation split; "
            "lambda is tuned on that same split (protocol-faithful transductive coupling)"
        )
    if cfg.representation in ("pbsk", "hisk"):
        report = _run_string_kernel(
            cfg, corpus_hash, run_id, outdir, run_dir, texts, ids, y, notes, timing
        )
    else:
        report = _run_dense(cfg, corpus_hash, run_id, run_dir, ids, y, notes, timing)
    timing["total_s"] = time.perf_counter() - t0
    report.timing = timing
    return report


def _run_string_kernel(cfg, corpus_hash, run_id, outdir, run_dir, texts, ids, y, notes, timing):
    kind = KernelKind.PBSK if cfg.representation == "pbsk" else KernelKind.HISK
    target_tag = "valid"
    if cfg.domain_adapt and cfg.target_set != "valid":
        target_ids, target_texts = load_target_documents(cfg.target_set, cfg.task)
        texts = dict(texts, target=target_texts)
        ids = dict(ids, target=tuple(target_ids))
        target_tag = _hash_file(cfg.target_set)
    ws = _KernelWorkspace(cfg, kind, texts, ids, outdir / "cache", corpus_hash, target_tag)

    def tuning_blocks(n: int):
        tt = ws.block("train", "train", n)
        vt = ws.block("valid", "train", n)
        if cfg.normalize:
            st_self = ws.self_kernels("train", n)
            sv_self = ws.self_kernels("valid", n)
            tt = normalize_gram(tt, st_self, st_self)
            vt = normalize_gram(vt, sv_self, st_self)
        return tt, vt

    # Stage 1: n sweep at the fixed default lambda, no augmentation.
    notes.append(
        f"n-gram sweep ran at fixed lambda={cfg.tuning_lambda:g}; "
        "lambda was tuned afterwards at the chosen n"
    )
    t0 = time.perf_counter()
    n_curve = []
    for n in cfg.ngram_grid:
        tt, vt = tuning_blocks(n)
        model = fit_krr(tt, y["train"], cfg.tuning_lambda)
        _, labels = predict_krr(model, vt)
        n_curve.append((n, accuracy(labels, y["valid"]).accuracy))
    best_n = max(n_curve, key=lambda t: (t[1], -t[0]))[0]  # tie -> smaller n
    timing["n_sweep_s"] = time.perf_counter() - t0

    # Stage 2: lambda sweep at best n, on the final (possibly DA) pipeline.
    t0 = time.perf_counter()
    tt, vt = tuning_blocks(best_n)
    st = ws.block("test", "train", best_n)
    if cfg.normalize:
        st = normalize_gram(
            st, ws.self_kernels("test", best_n), ws.self_kernels("train", best_n)
        )
    if cfg.domain_adapt:
        z_role = "valid" if cfg.target_set == "valid" else "target"
        s_train = ws.block("train", z_role, best_n)
        s_valid = ws.block("valid", z_role, best_n)
        s_test = ws.block("test", z_role, best_n)
        if cfg.normalize:
            z_self = ws.self_kernels(z_role, best_n)
            s_train = normalize_gram(s_train, ws.self_kernels("train", best_n), z_self)
            s_valid = normalize_gram(s_valid, ws.self_kernels("valid", best_n), z_self)
            s_test = normalize_gram(s_test, ws.self_kernels("test", best_n), z_self)
        sim_train = similarity_from_kernel(s_train)
        tt = augment_gram(tt, sim_train, sim_train)
        vt = augment_gram(vt, similarity_from_kernel(s_valid), sim_train)
        st = augment_gram(st, similarity_from_kernel(s_test), sim_train)

    best_lambda, lambda_curve = tune_lambda(
        lambda lam: fit_krr(tt, y["train"], lam),
        lambda model: accuracy(predict_krr(model, vt)[1], y["valid"]).accuracy,
        cfg.lambda_grid,
    )
    timing["lambda_sweep_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    model = fit_krr(tt, y["train"], best_lambda)
    valid_report = accuracy(predict_krr(model, vt)[1], y["valid"], ids["valid"])
    test_report = accuracy(predict_krr(model, st)[1], y["test"], ids["test"])
    save_model(model, run_dir / "model.fsml")
    timing["final_fit_s"] = time.perf_counter() - t0

    sizes = {
        "train": len(ids["train"]),
        "valid": len(ids["valid"]),
        "test": len(ids["test"]),
        "kernel_rows": {"train": list(tt.values.shape), "valid": list(vt.values.shape), "test": list(st.values.shape)},
    }
    if cfg.domain_adapt:
        sizes["target"] = len(ids["valid" if cfg.target_set == "valid" else "target"])
    return _build_report(
        cfg, corpus_hash, run_id, best_n, best_lambda, n_curve, lambda_curve,
        valid_report, test_report, sizes, notes,
    )


def _dense_split(dense: DenseMatrix, ids) -> dict:
    return {role: dense.select(list(ids[role])) for role in ("train", "valid", "test")}


def _run_dense(cfg, corpus_hash, run_id, run_dir, ids, y, notes, timing):
    t0 = time.perf_counter()
    dense = load_dense_matrix(cfg.dense_file)
    x = _dense_split(dense, ids)
    feature_dim = dense.dim
    if cfg.domain_adapt:
        if cfg.target_set == "valid":
            z = x["valid"]
        else:
            target_matrix = load_dense_matrix(cfg.target_dense)
            z = target_matrix
        x = {
            role: augment_features(x[role], similarity_block(x[role], z))
            for role in ("train", "valid", "test")
        }
        feature_dim = x["train"].dim
    timing["features_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    best_lambda, lambda_curve = tune_lambda(
        lambda lam: fit_rr(x["train"], y["train"], lam),
        lambda model: accuracy(predict_rr(model, x["valid"])[1], y["valid"]).accuracy,
        cfg.lambda_grid,
    )
    timing["lambda_sweep_s"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    model = fit_rr(x["train"], y["train"], best_lambda)
    valid_report = accuracy(predict_rr(model, x["valid"])[1], y["valid"], ids["valid"])
    test_report = accuracy(predict_rr(model, x["test"])[1], y["test"], ids["test"])
    save_model(model, run_dir / "model.fsml")
    timing["final_fit_s"] = time.perf_counter() - t0

    sizes = {
        "train": len(ids["train"]),
        "valid": len(ids["valid"]),
        "test": len(ids["test"]),
        "feature_dim": feature_dim,
    }
    if cfg.domain_adapt:
        sizes["target"] = len(z.row_ids)
    return _build_report(
        cfg, corpus_hash, run_id, 0, best_lambda, [], lambda_curve,
        valid_report, test_report, sizes, notes,
    )


def _build_report(
    cfg, corpus_hash, run_id, chosen_n, chosen_lambda, n_curve, lambda_curve,
    valid_report: EvalReport, test_report: EvalReport, sizes, notes,
) -> RunReport:
    return RunReport(
        run_id=run_id,
        name=cfg.name or run_id,
        config=_config_echo(cfg),
        corpus_hash=corpus_hash,
        task=cfg.task,
        representation=cfg.representation,
        chosen_n=chosen_n,
        chosen_lambda=chosen_lambda,
        valid_accuracy=valid_report.accuracy,
        test_accuracy=test_report.accuracy,
        n_curve=list(n_curve),
        lambda_curve=list(lambda_curve),
        valid_predictions=list(valid_report.predictions),
        test_predictions=list(test_report.predictions),
        confusion_valid={"tp": valid_report.tp, "fp": valid_report.fp, "tn": valid_report.tn, "fn": valid_report.fn},
        confusion_test={"tp": test_report.tp, "fp": test_report.fp, "tn": test_report.tn, "fn": test_report.fn},
        matrix_sizes=sizes,
        class_positive=cfg.class_positive,
        notes=list(notes),
    )


def _write_predictions(report: RunReport, run_dir: Path) -> None:
    for split, rows in (
        ("valid", report.valid_predictions),
        ("test", report.test_predictions),
    ):
        with open(run_dir / f"predictions_{split}.tsv", "w", encoding="utf-8") as fh:
            fh.write("id\tgold\tpredicted\n")
            for doc_id, gold, pred in rows:
                fh.write(f"{doc_id}\t{gold}\t{pred}\n")


def _aligned_predictions(rows_a, rows_b, what: str):
    index_b = {doc_id: (gold, pred) for doc_id, gold, pred in rows_b}
    if len(index_b) != len(rows_b) or set(index_b) != {r[0] for r in rows_a} or len(
        rows_a
    ) != len(rows_b):
        raise ArgumentError(f"runs do not cover identical {what} ids")
    gold, pred_a, pred_b = [], [], []
    for doc_id, g, p in rows_a:
        gb, pb = index_b[doc_id]
        if gb != g:
            raise ArgumentError(f"gold labels disagree for {what} id {doc_id!r}")
        gold.append(g)
        pred_a.append(p)
        pred_b.append(pb)
    return pred_a, pred_b, gold


def compare_runs(report_a: RunReport, report_b: RunReport):
    """Paired McNemar on the stored test predictions plus a side-by-side
    accuracy table (validation compared too when both runs stored it)."""
    pred_a, pred_b, gold = _aligned_predictions(
        report_a.test_predictions, report_b.test_predictions, "test"
    )
    test_result = mcnemar(pred_a, pred_b, gold)
    valid_result = None
    if report_a.valid_predictions and report_b.valid_predictions:
        try:
            va, vb, vg = _aligned_predictions(
                report_a.valid_predictions, report_b.valid_predictions, "validation"
            )
            valid_result = mcnemar(va, vb, vg)
        except ArgumentError:
            valid_result = None  # different validation sets: compare test only
    table = comparison_table(
        report_a.name,
        report_b.name,
        report_a.valid_accuracy,
        report_b.valid_accuracy,
        report_a.test_accuracy,
        report_b.test_accuracy,
        test_result,
        valid_result,
    )
    return test_result, table


def emit_curves(report: RunReport, outdir) -> list:
    """TSV curve files for external plotting; header-only when empty."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = []
    n_path = outdir / "n_curve.tsv"
    with open(n_path, "w", encoding="utf-8") as fh:
        fh.write("n\taccuracy\n")
        for n, acc in report.n_curve:
            fh.write(f"{n}\t{acc!r}\n")
    paths.append(n_path)
    lam_path = outdir / "lambda_curve.tsv"
    with open(lam_path, "w", encoding="utf-8") as fh:
        fh.write("lambda\taccuracy\n")
        for lam, acc in report.lambda_curve:
            fh.write(f"{lam!r}\t{'NA' if acc is None else repr(acc)}\n")
    paths.append(lam_path)
    return paths
