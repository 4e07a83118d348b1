"""Command-line interface.

Subcommands: prepare, run, compare, curves, synth, explain.
Exit codes: 0 success, 2 configuration or argument problem, 3 input data
failed validation, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from pathlib import Path

from . import __version__
from .corpus import (
    Article,
    LABELS,
    LabeledCorpus,
    SPLITS,
    corpus_stats,
    document_text,
    format_stats,
    load_corpus,
    save_corpus,
    validate_articles,
)
from .errors import (
    ArgumentError,
    ConfigError,
    DataValidationError,
    NumericalError,
    ParseError,
)
from .experiment import (
    ExperimentConfig,
    compare_runs,
    emit_curves,
    load_report,
    run_experiment,
)
from .explain import (
    embedding_bigram_scores,
    embedding_word_scores,
    load_word_occurrences,
    primal_ngram_weights,
    write_features_tsv,
)
from .learner import DualModel, PrimalModel, load_model
from .ngram import extract_profile
from .synthetic import SyntheticSpec, generate_synthetic

_CANONICAL_FIELDS = ("id", "title", "body", "label", "source", "split")


# --- run configuration ------------------------------------------------------

_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(ExperimentConfig)}
_BOOL_WORDS = {
    "true": True,
    "false": False,
    "yes": True,
    "no": False,
    "1": True,
    "0": False,
}


def _coerce_option(key: str, value: str):
    if key not in _FIELD_TYPES:
        raise ConfigError(f"unknown option {key!r}")
    if key in ("domain_adapt", "normalize"):
        word = value.strip().lower()
        if word not in _BOOL_WORDS:
            raise ConfigError(f"{key}: expected a boolean, got {value!r}")
        return _BOOL_WORDS[word]
    if key in ("workers", "seed"):
        try:
            return int(value)
        except ValueError:
            raise ConfigError(f"{key}: expected an integer, got {value!r}") from None
    if key == "tuning_lambda":
        try:
            return float(value)
        except ValueError:
            raise ConfigError(f"{key}: expected a number, got {value!r}") from None
    if key == "ngram_grid":
        try:
            return tuple(int(v) for v in value.replace(",", " ").split())
        except ValueError:
            raise ConfigError(f"{key}: expected integers, got {value!r}") from None
    if key == "lambda_grid":
        try:
            return tuple(float(v) for v in value.replace(",", " ").split())
        except ValueError:
            raise ConfigError(f"{key}: expected numbers, got {value!r}") from None
    if key in ("dense_file", "target_dense", "name") and value == "":
        return None
    return value


def parse_config_file(path) -> dict:
    """Plain ``key = value`` lines; # comments and blank lines ignored."""
    options: dict = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        if key in options:
            raise ConfigError(f"{path}:{lineno}: duplicate option {key!r}")
        options[key] = _coerce_option(key, value.strip())
    return options


def _split_assignment(text: str, what: str):
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise ConfigError(f"{what} must look like key=value, got {text!r}")
    return key.strip(), value.strip()


def _build_config(args) -> ExperimentConfig:
    options: dict = {}
    if args.config:
        options.update(parse_config_file(args.config))
    for assignment in args.set or []:
        key, value = _split_assignment(assignment, "--set")
        options[key] = _coerce_option(key, value)
    flag_map = {
        "corpus": args.corpus,
        "task": args.task,
        "representation": args.representation,
        "ngram_grid": args.ngram_grid,
        "lambda_grid": args.lambda_grid,
        "tuning_lambda": args.tuning_lambda,
        "target_set": args.target_set,
        "class_positive": args.class_positive,
        "dense_file": args.dense_file,
        "target_dense": args.target_dense,
        "output_dir": args.output_dir,
        "workers": args.workers,
        "seed": args.seed,
        "name": args.name,
    }
    for key, value in flag_map.items():
        if value is not None:
            options[key] = _coerce_option(key, str(value))
    if args.domain_adapt:
        options["domain_adapt"] = True
    if args.normalize:
        options["normalize"] = True
    if "corpus" not in options:
        raise ConfigError("no corpus given (use --corpus or a config file)")
    return ExperimentConfig(**options)


def _cmd_run(args) -> int:
    report = run_experiment(_build_config(args))
    run_dir = Path(report.config["output_dir"]) / "runs" / report.run_id
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        print(f"run {report.run_id} ({report.name})")
        if report.chosen_n:
            print(f"  chosen n:       {report.chosen_n}")
        print(f"  chosen lambda:  {report.chosen_lambda:g}")
        print(f"  valid accuracy: {report.valid_accuracy:.4f}")
        print(f"  test accuracy:  {report.test_accuracy:.4f}")
        for note in report.notes:
            print(f"  note: {note}")
        print(f"  report: {run_dir / 'report.json'}")
    return 0


# --- prepare ----------------------------------------------------------------


def _read_raw_records(path: Path, fmt: str):
    if fmt == "jsonl":
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ParseError(
                        f"{path}:{lineno}: invalid JSON: {exc.msg}", lineno
                    ) from exc
                if not isinstance(obj, dict):
                    raise ParseError(f"{path}:{lineno}: expected an object", lineno)
                yield lineno, obj
    else:
        delimiter = "," if fmt == "csv" else "\t"
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh, delimiter=delimiter)
            if reader.fieldnames is None:
                raise ParseError(f"{path}: empty file", 1)
            for lineno, row in enumerate(reader, start=2):
                yield lineno, row


def _infer_format(path: Path, explicit: str | None) -> str:
    if explicit:
        return explicit
    suffix = path.suffix.lower()
    if suffix in (".jsonl", ".json"):
        return "jsonl"
    if suffix == ".csv":
        return "csv"
    if suffix == ".tsv":
        return "tsv"
    raise ConfigError(f"cannot infer input format from {path.name!r}; pass --format")


def _cmd_prepare(args) -> int:
    path = Path(args.input)
    fmt = _infer_format(path, args.format)
    column_for = {f: f for f in _CANONICAL_FIELDS}
    for assignment in args.map or []:
        field_name, column = _split_assignment(assignment, "--map")
        if field_name not in _CANONICAL_FIELDS:
            raise ConfigError(f"--map: unknown field {field_name!r}")
        column_for[field_name] = column
    constants: dict = {}
    for assignment in args.const or []:
        field_name, value = _split_assignment(assignment, "--const")
        if field_name not in _CANONICAL_FIELDS:
            raise ConfigError(f"--const: unknown field {field_name!r}")
        constants[field_name] = value
    label_map: dict = {}
    for assignment in args.label_map or []:
        raw, canonical = _split_assignment(assignment, "--label-map")
        if canonical not in LABELS:
            raise ConfigError(f"--label-map: target must be one of {LABELS}")
        label_map[raw] = canonical
    split_map: dict = {}
    for assignment in args.split_map or []:
        raw, canonical = _split_assignment(assignment, "--split-map")
        if canonical not in SPLITS:
            raise ConfigError(f"--split-map: target must be one of {SPLITS}")
        split_map[raw] = canonical

    articles = []
    for index, (lineno, record) in enumerate(_read_raw_records(path, fmt)):
        values: dict = {}
        for field_name in _CANONICAL_FIELDS:
            if field_name in constants:
                values[field_name] = constants[field_name]
                continue
            if field_name == "id" and args.auto_id:
                values["id"] = f"{args.auto_id}{index:06d}"
                continue
            column = column_for[field_name]
            raw = record.get(column)
            if raw is None:
                raise ParseError(
                    f"{path}:{lineno}: missing column {column!r} for field"
                    f" {field_name!r} (use --map, --const or --auto-id)",
                    lineno,
                )
            values[field_name] = raw if isinstance(raw, str) else json.dumps(raw)
        values["label"] = label_map.get(values["label"], values["label"])
        values["split"] = split_map.get(values["split"], values["split"])
        try:
            articles.append(Article(**values))
        except ParseError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}", lineno) from exc
    validate_articles(articles)
    corpus = LabeledCorpus(tuple(articles))
    save_corpus(corpus, args.output)
    print(f"wrote {len(articles)} articles to {args.output}")
    print(format_stats(corpus_stats(corpus)))
    return 0


# --- compare / curves ---------------------------------------------------------


def _resolve_report(path_text: str):
    path = Path(path_text)
    if path.is_dir():
        path = path / "report.json"
    if not path.is_file():
        raise ConfigError(f"no report found at {path}")
    return load_report(path)


def _cmd_compare(args) -> int:
    report_a = _resolve_report(args.run_a)
    report_b = _resolve_report(args.run_b)
    result, table = compare_runs(report_a, report_b)
    if args.json:
        print(
            json.dumps(
                {
                    "run_a": report_a.run_id,
                    "run_b": report_b.run_id,
                    "test": result.to_dict(),
                },
                indent=2,
                sort_keys=True,
            )
        )
    else:
        print(table)
    return 0


def _cmd_curves(args) -> int:
    report = _resolve_report(args.run)
    outdir = args.output or (Path(args.run) if Path(args.run).is_dir() else Path(args.run).parent)
    for path in emit_curves(report, outdir):
        print(path)
    return 0


# --- synth --------------------------------------------------------------------


def _cmd_synth(args) -> int:
    spec = SyntheticSpec(
        n_train=args.train,
        n_valid=args.valid,
        n_test=args.test,
        vocab_size=args.vocab,
        signal_tokens=args.signal_tokens,
        confounder_tokens=args.confounder_tokens,
        title_tokens=args.title_tokens,
        body_tokens=args.body_tokens,
        signal_rate=args.signal_rate,
        confounder_strength=args.confounder_strength,
        domain_shift=args.domain_shift,
        seed=args.seed,
    )
    corpus = generate_synthetic(spec)
    save_corpus(corpus, args.output)
    print(f"wrote {len(corpus.articles)} articles to {args.output}")
    print(format_stats(corpus_stats(corpus)))
    return 0


# --- explain --------------------------------------------------------------------


def _explain_dual(args, report, model: DualModel) -> int:
    if not args.corpus:
        raise ConfigError("string-kernel runs need --corpus to rebuild train profiles")
    corpus = load_corpus(args.corpus, class_positive=report.class_positive)
    by_id = {a.id: a for a in corpus.split("train")}
    missing = [i for i in model.train_ids if i not in by_id]
    if missing:
        raise DataValidationError(
            f"corpus is missing {len(missing)} train ids from the model"
            f" (first: {missing[0]!r})"
        )
    profiles = [
        extract_profile(document_text(by_id[i], report.task), model.n)
        for i in model.train_ids
    ]
    features = primal_ngram_weights(model, profiles)
    negative = "regular" if report.class_positive == "satirical" else "satirical"
    out = args.output or "features.tsv"
    write_features_tsv(features, out, report.class_positive, negative, top=args.top)
    print(f"wrote ranked n-gram features to {out}")
    for sign, name in ((1, report.class_positive), (-1, negative)):
        rows = [f for f in features if f.sign == sign][: args.top]
        print(f"top {name}:")
        for f in rows:
            print(f"  {f.rank:3d}  {f.feature!r}  {f.score:.6g}")
    return 0


def _explain_primal(args, report, model: PrimalModel) -> int:
    if not args.occurrences:
        raise ConfigError("dense runs need --occurrences (an FSWO word file)")
    documents = [doc for _, doc in load_word_occurrences(args.occurrences)]
    dims = {len(v) for doc in documents for _, v in doc}
    if dims and model.dim not in dims:
        dim = dims.pop()
        if dim < model.dim:
            # Adapted models append similarity columns; score words against
            # the weights of the original embedding dimensions.
            model = PrimalModel(model.weights[:dim], model.lam)
        else:
            raise ArgumentError(
                f"word vectors have dim {dim}, model expects {model.dim}"
            )
    words = embedding_word_scores(documents, model)
    bigrams = embedding_bigram_scores(documents, model)
    negative = "regular" if report.class_positive == "satirical" else "satirical"
    out = args.output or "word_scores.tsv"
    write_features_tsv(words, out, report.class_positive, negative, top=args.top)
    bigram_out = str(out).rsplit(".", 1)[0] + "_bigrams.tsv"
    write_features_tsv(bigrams, bigram_out, report.class_positive, negative, top=args.top)
    print(f"wrote word scores to {out} and bigram scores to {bigram_out}")
    for sign, name in ((1, report.class_positive), (-1, negative)):
        rows = [f for f in words if f.sign == sign][: args.top]
        print(f"top {name}:")
        for f in rows:
            print(f"  {f.rank:3d}  {f.feature!r}  {f.score:.6g}")
    return 0


def _cmd_explain(args) -> int:
    run_dir = Path(args.run)
    report = _resolve_report(args.run)
    model_path = (run_dir if run_dir.is_dir() else run_dir.parent) / "model.fsml"
    if not model_path.is_file():
        raise ConfigError(f"no model found at {model_path}")
    model = load_model(model_path)
    if isinstance(model, DualModel):
        return _explain_dual(args, report, model)
    return _explain_primal(args, report, model)


# --- parser -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="satkit", description="Cross-domain satire detection experiments."
    )
    parser.add_argument("--version", action="version", version=f"satkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    prepare = sub.add_parser("prepare", help="convert raw CSV/TSV/JSONL to corpus JSONL")
    prepare.add_argument("--input", required=True)
    prepare.add_argument("--output", required=True)
    prepare.add_argument("--format", choices=("csv", "tsv", "jsonl"))
    prepare.add_argument("--map", action="append", metavar="FIELD=COLUMN")
    prepare.add_argument("--const", action="append", metavar="FIELD=VALUE")
    prepare.add_argument("--label-map", action="append", metavar="RAW=CANONICAL")
    prepare.add_argument("--split-map", action="append", metavar="RAW=CANONICAL")
    prepare.add_argument("--auto-id", metavar="PREFIX", help="generate sequential ids")
    prepare.set_defaults(func=_cmd_prepare)

    run = sub.add_parser("run", help="run one experiment")
    run.add_argument("--config", help="key = value option file")
    run.add_argument("--set", action="append", metavar="KEY=VALUE")
    run.add_argument("--corpus")
    run.add_argument("--task", choices=("full", "headline"))
    run.add_argument("--representation", choices=("pbsk", "hisk", "dense"))
    run.add_argument("--ngram-grid", metavar="N,N,...")
    run.add_argument("--lambda-grid", metavar="X,X,...")
    run.add_argument("--tuning-lambda", type=float)
    run.add_argument("--domain-adapt", action="store_true", default=False)
    run.add_argument("--target-set", metavar="valid|PATH")
    run.add_argument("--normalize", action="store_true", default=False)
    run.add_argument("--class-positive", choices=("satirical", "regular"))
    run.add_argument("--dense-file")
    run.add_argument("--target-dense")
    run.add_argument("--output-dir")
    run.add_argument("--workers", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--name")
    run.add_argument("--json", action="store_true", help="print the full report")
    run.set_defaults(func=_cmd_run)

    compare = sub.add_parser("compare", help="paired significance test of two runs")
    compare.add_argument("run_a", help="run directory or report.json")
    compare.add_argument("run_b")
    compare.add_argument("--json", action="store_true")
    compare.set_defaults(func=_cmd_compare)

    curves = sub.add_parser("curves", help="write tuning curves as TSV")
    curves.add_argument("run", help="run directory or report.json")
    curves.add_argument("--output", help="directory for the TSV files")
    curves.set_defaults(func=_cmd_curves)

    synth = sub.add_parser("synth", help="generate a synthetic corpus")
    synth.add_argument("--output", required=True)
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--train", type=int, default=120)
    synth.add_argument("--valid", type=int, default=60)
    synth.add_argument("--test", type=int, default=60)
    synth.add_argument("--vocab", type=int, default=50)
    synth.add_argument("--signal-tokens", type=int, default=6)
    synth.add_argument("--confounder-tokens", type=int, default=12)
    synth.add_argument("--title-tokens", type=int, default=4)
    synth.add_argument("--body-tokens", type=int, default=40)
    synth.add_argument("--signal-rate", type=float, default=0.2)
    synth.add_argument("--confounder-strength", type=float, default=0.0)
    synth.add_argument(
        "--domain-shift", action=argparse.BooleanOptionalAction, default=True
    )
    synth.set_defaults(func=_cmd_synth)

    explain = sub.add_parser("explain", help="top discriminative features of a run")
    explain.add_argument("run", help="run directory or report.json")
    explain.add_argument("--corpus", help="corpus JSONL (string-kernel runs)")
    explain.add_argument("--occurrences", help="FSWO word file (dense runs)")
    explain.add_argument("--top", type=int, default=10)
    explain.add_argument("--output", help="TSV destination")
    explain.set_defaults(func=_cmd_explain)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ArgumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
