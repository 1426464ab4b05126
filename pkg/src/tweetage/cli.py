"""Command line entry point.

Ten subcommands cover the pipeline end to end: lex, preprocess, stats,
split, synth, export, train, predict, score, compare. Exit codes: 0 on
success, 1 on usage errors, 2 on data or validation errors. Diagnostics go
to stderr; data goes to the output stream or to files named by flags.

Every run that writes an output file also writes a JSON run manifest
(default: alongside the primary output) recording the resolved arguments,
seed, input and lexicon checksums, and tool version.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import __version__
from .corpus import (
    class_distribution,
    corpus_text,
    escape_field,
    generate_synthetic,
    load_corpus,
    normalized_copy,
    save_corpus,
    stratified_split,
    token_kind_totals,
)
from .errors import DataError
from .evaluation import (
    ConfusionCounts,
    Metrics,
    compare_variants,
    metrics_json_row,
    metrics_text,
    save_predictions,
    score_prediction_file,
)
from .figures import (
    save_class_distribution_figure,
    save_loss_curve_figure,
    save_metrics_comparison_figure,
)
from .lexer import TokenKind, tokenize
from .manifest import RunManifest, lexicon_checksums, sha256_file, write_manifest
from .model import TrainConfig, load_model, predict_labels, save_model, train
from .normalizer import NormalizationConfig, PronounVariant, load_lexicons


class _Parser(argparse.ArgumentParser):
    # argparse uses exit status 2 for usage problems; the contract here is
    # 1 for usage errors and 2 for data errors, so remap.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _resolve_variant(args) -> PronounVariant:
    return PronounVariant(args.variant) if args.variant else PronounVariant.KEEP


def _lexicon_kwargs(args) -> dict:
    return {
        "stopwords_path": getattr(args, "stopwords", None),
        "pronouns_path": getattr(args, "pronouns", None),
        "contractions_path": getattr(args, "contractions", None),
    }


def _load_lexicons_from(args):
    kwargs = _lexicon_kwargs(args)
    return load_lexicons(**kwargs)


def _resolved_arguments(args) -> dict:
    resolved = {}
    for key, value in sorted(vars(args).items()):
        if key == "handler":
            continue
        resolved[key] = value
    return resolved


def _emit(text: str, output: Optional[str]) -> Optional[Path]:
    if output is None or output == "-":
        sys.stdout.write(text)
        return None
    path = Path(output)
    path.write_text(text, "utf-8")
    return path


def _write_run_manifest(
    args,
    input_paths: list,
    primary_output: Optional[Path],
    manifest_default: Optional[Path] = None,
) -> Optional[Path]:
    target: Optional[Path] = None
    if args.manifest:
        target = Path(args.manifest)
    elif manifest_default is not None:
        target = manifest_default
    elif primary_output is not None:
        target = primary_output.with_name(primary_output.name + ".manifest.json")
    if target is None:
        return None
    manifest = RunManifest(
        subcommand=args.subcommand,
        arguments=_resolved_arguments(args),
        seed=getattr(args, "seed", None),
        lexicon_checksums=lexicon_checksums(**_lexicon_kwargs(args)),
        input_checksums={str(p): sha256_file(p) for p in input_paths},
        tool_version=__version__,
    )
    return write_manifest(target, manifest)


def _cmd_lex(args) -> int:
    if args.text is not None:
        text = args.text
        inputs = []
    else:
        text = Path(args.input).read_text("utf-8")
        inputs = [args.input]
    lines = []
    for token in tokenize(text):
        cell = escape_field(token.text)
        if args.debug:
            lines.append(f"{token.kind.value}\t{token.start}\t{token.end}\t{cell}")
        else:
            lines.append(f"{token.kind.value}\t{cell}")
    out = _emit("".join(line + "\n" for line in lines), args.output)
    _write_run_manifest(args, inputs, out)
    return 0


def _cmd_normalize_corpus(args) -> int:
    # Shared body of `preprocess` (stdout-friendly) and `export` (file).
    lexicons = _load_lexicons_from(args)
    config = NormalizationConfig(variant=_resolve_variant(args))
    corpus = load_corpus(args.input)
    out = _emit(corpus_text(normalized_copy(corpus, config, lexicons)), args.output)
    _write_run_manifest(args, [args.input], out)
    return 0


def _cmd_stats(args) -> int:
    corpus = load_corpus(args.input)
    dist = class_distribution(corpus)
    totals = token_kind_totals(corpus)
    lines = [
        f"records\t{len(corpus)}",
        f"negative\t{dist.negative}",
        f"positive\t{dist.positive}",
        f"unlabeled\t{dist.unlabeled}",
    ]
    for kind in TokenKind:
        lines.append(f"tokens.{kind.value}\t{totals[kind]}")
    out = _emit("\n".join(lines) + "\n", args.output)
    figure = Path(args.figure) if args.figure else None
    if figure is not None:
        save_class_distribution_figure(dist, figure)
    _write_run_manifest(args, [args.input], out if out is not None else figure)
    return 0


def _cmd_split(args) -> int:
    corpus = load_corpus(args.input, expect_labels=True)
    first, second = stratified_split(corpus, args.fraction, args.seed)
    train_path = Path(f"{args.output}.train.tsv")
    test_path = Path(f"{args.output}.test.tsv")
    save_corpus(first, train_path)
    save_corpus(second, test_path)
    _write_run_manifest(args, [args.input], train_path, manifest_default=Path(f"{args.output}.manifest.json"))
    print(f"wrote {train_path} ({len(first)} rows) and {test_path} ({len(second)} rows)", file=sys.stderr)
    return 0


def _cmd_synth(args) -> int:
    corpus = generate_synthetic(args.n, args.positive_ratio, args.seed)
    save_corpus(corpus, args.output)
    _write_run_manifest(args, [], Path(args.output))
    return 0


def _cmd_train(args) -> int:
    lexicons = _load_lexicons_from(args)
    config = TrainConfig(
        epochs=args.epochs,
        batch_size=args.batch_size,
        lr=args.lr,
        seed=args.seed,
        dims=args.dims,
        ngram_max=args.ngram_max,
        class_weighting=args.class_weights,
        variant=_resolve_variant(args),
    )
    corpus = load_corpus(args.input, expect_labels=True)
    losses: list[float] = []

    def on_epoch_end(epoch: int, loss: float) -> None:
        losses.append(loss)
        print(f"epoch {epoch + 1}/{config.epochs} loss {loss:.6f}", file=sys.stderr)

    params = train(corpus, config, lexicons=lexicons, on_epoch_end=on_epoch_end)
    save_model(args.model, params, config.ngram_max, config.variant, threshold=args.threshold)
    if args.figure:
        save_loss_curve_figure(losses, args.figure)
    _write_run_manifest(args, [args.input], Path(args.model))
    return 0


def _cmd_predict(args) -> int:
    loaded = load_model(args.model)
    if args.variant is not None and PronounVariant(args.variant) is not loaded.variant:
        raise DataError(
            f"--variant {args.variant} conflicts with the model's variant {loaded.variant.value!r}"
        )
    lexicons = _load_lexicons_from(args)
    config = TrainConfig(dims=loaded.dims, ngram_max=loaded.ngram_max, variant=loaded.variant)
    corpus = load_corpus(args.input)
    threshold = loaded.threshold if args.threshold is None else args.threshold
    rows = predict_labels(loaded.params, corpus, config, lexicons=lexicons, threshold=threshold)
    save_predictions(args.output, rows)
    _write_run_manifest(args, [args.model, args.input], Path(args.output))
    return 0


def _cmd_score(args) -> int:
    metrics = score_prediction_file(args.pred, args.gold)
    variant_name = args.variant if args.variant else PronounVariant.KEEP.value
    if args.json:
        text = json.dumps(metrics_json_row(variant_name, metrics), indent=2, sort_keys=True) + "\n"
    else:
        text = metrics_text(metrics)
    out = _emit(text, args.output)
    _write_run_manifest(args, [args.pred, args.gold], out)
    return 0


_REPORT_FIELDS = {"variant", "precision", "recall", "f1", "tp", "fp", "fn", "tn"}


def _load_report_row(path) -> tuple[str, Metrics]:
    try:
        row = json.loads(Path(path).read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: not a JSON report: {exc}") from exc
    if not isinstance(row, dict):
        raise DataError(f"{path}: expected a JSON object, got {type(row).__name__}")
    missing = _REPORT_FIELDS - row.keys()
    if missing:
        raise DataError(f"{path}: report missing fields: {', '.join(sorted(missing))}")
    try:
        counts = ConfusionCounts(int(row["tp"]), int(row["fp"]), int(row["fn"]), int(row["tn"]))
        metrics = Metrics(
            None if row["precision"] is None else float(row["precision"]),
            None if row["recall"] is None else float(row["recall"]),
            None if row["f1"] is None else float(row["f1"]),
            counts,
        )
    except (TypeError, ValueError) as exc:
        raise DataError(f"{path}: malformed report value: {exc}") from exc
    return str(row["variant"]), metrics


def _cmd_compare(args) -> int:
    results: dict[str, Metrics] = {}
    for path in args.run:
        name, metrics = _load_report_row(path)
        unique = name
        suffix = 2
        while unique in results:
            unique = f"{name}-{suffix}"
            suffix += 1
        results[unique] = metrics
    report = compare_variants(results)
    if args.json:
        text = json.dumps(report.rows, indent=2, sort_keys=True) + "\n"
    else:
        text = report.text
    out = _emit(text, args.output)
    figure = Path(args.figure) if args.figure else None
    if figure is not None:
        save_metrics_comparison_figure(report.rows, figure)
    _write_run_manifest(args, list(args.run), out if out is not None else figure)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="tweetage",
        description="Deterministic pipeline for classifying tweets that self-report an exact age.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default: 0)")
    common.add_argument(
        "--variant",
        choices=[v.value for v in PronounVariant],
        default=None,
        help="stopword variant: keep pronouns or remove them (default: keep)",
    )
    common.add_argument("--manifest", metavar="PATH", default=None, help="run-manifest path override")

    lexicons = argparse.ArgumentParser(add_help=False)
    lexicons.add_argument("--stopwords", metavar="PATH", default=None, help="stopword list override")
    lexicons.add_argument("--pronouns", metavar="PATH", default=None, help="pronoun list override")
    lexicons.add_argument("--contractions", metavar="PATH", default=None, help="contraction table override")

    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND", required=True)

    p = sub.add_parser("lex", parents=[common], help="tokenize text, one token per line")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--text", help="tokenize this string")
    source.add_argument("--input", metavar="PATH", help="tokenize this UTF-8 text file")
    p.add_argument("--debug", action="store_true", help="also print start/end offsets")
    p.add_argument("--output", metavar="PATH", default=None, help="write here instead of stdout")
    p.set_defaults(handler=_cmd_lex)

    p = sub.add_parser("preprocess", parents=[common, lexicons], help="normalize a corpus to stdout or a file")
    p.add_argument("--input", metavar="PATH", required=True, help="corpus TSV")
    p.add_argument("--output", metavar="PATH", default=None, help="write here instead of stdout")
    p.set_defaults(handler=_cmd_normalize_corpus)

    p = sub.add_parser("stats", parents=[common], help="corpus size, class counts, token-kind totals")
    p.add_argument("--input", metavar="PATH", required=True, help="corpus TSV")
    p.add_argument("--output", metavar="PATH", default=None, help="write here instead of stdout")
    p.add_argument("--figure", metavar="PATH", default=None, help="render a class-distribution bar chart")
    p.set_defaults(handler=_cmd_stats)

    p = sub.add_parser("split", parents=[common], help="stratified split into PREFIX.train.tsv / PREFIX.test.tsv")
    p.add_argument("--input", metavar="PATH", required=True, help="fully labeled corpus TSV")
    p.add_argument("--fraction", type=float, required=True, help="per-class fraction for the first part")
    p.add_argument("--output", metavar="PREFIX", required=True, help="output path prefix")
    p.set_defaults(handler=_cmd_split)

    p = sub.add_parser("synth", parents=[common], help="generate a deterministic synthetic corpus")
    p.add_argument("--n", type=int, required=True, help="number of tweets")
    p.add_argument("--positive-ratio", type=float, required=True, help="fraction of positive labels")
    p.add_argument("--output", metavar="PATH", required=True, help="corpus TSV to write")
    p.set_defaults(handler=_cmd_synth)

    p = sub.add_parser("export", parents=[common, lexicons], help="write the normalized corpus to a file")
    p.add_argument("--input", metavar="PATH", required=True, help="corpus TSV")
    p.add_argument("--output", metavar="PATH", required=True, help="normalized corpus TSV to write")
    p.set_defaults(handler=_cmd_normalize_corpus)

    p = sub.add_parser("train", parents=[common, lexicons], help="train the classifier, write a model file")
    p.add_argument("--input", metavar="PATH", required=True, help="labeled corpus TSV")
    p.add_argument("--model", metavar="PATH", required=True, help="model file to write")
    p.add_argument("--epochs", type=int, default=10, help="training epochs (default: 10)")
    p.add_argument("--batch-size", type=int, default=32, help="minibatch size (default: 32)")
    p.add_argument("--lr", type=float, default=5e-5, help="Adam learning rate (default: 5e-5)")
    p.add_argument("--dims", type=int, default=2**18, help="hashed feature dimensions, a power of two (default: 262144)")
    p.add_argument("--ngram-max", type=int, default=2, help="largest n-gram order (default: 2)")
    p.add_argument("--class-weights", action="store_true", help="weight classes by inverse frequency")
    p.add_argument("--threshold", type=float, default=0.5, help="decision threshold stored in the model (default: 0.5)")
    p.add_argument("--figure", metavar="PATH", default=None, help="render the per-epoch loss curve")
    p.set_defaults(handler=_cmd_train)

    p = sub.add_parser("predict", parents=[common, lexicons], help="label a corpus with a trained model")
    p.add_argument("--model", metavar="PATH", required=True, help="model file from `train`")
    p.add_argument("--input", metavar="PATH", required=True, help="corpus TSV to label")
    p.add_argument("--output", metavar="PATH", required=True, help="prediction TSV to write")
    p.add_argument("--threshold", type=float, default=None, help="decision threshold (default: the model's)")
    p.set_defaults(handler=_cmd_predict)

    p = sub.add_parser("score", parents=[common], help="score a prediction file against gold labels")
    p.add_argument("--pred", metavar="PATH", required=True, help="prediction TSV")
    p.add_argument("--gold", metavar="PATH", required=True, help="labeled corpus TSV or prediction-format gold")
    p.add_argument("--json", action="store_true", help="machine-readable report instead of the text table")
    p.add_argument("--output", metavar="PATH", default=None, help="write here instead of stdout")
    p.set_defaults(handler=_cmd_score)

    p = sub.add_parser("compare", parents=[common], help="tabulate score reports side by side")
    p.add_argument("--run", metavar="PATH", nargs="+", required=True, help="JSON reports from `score --json`")
    p.add_argument("--json", action="store_true", help="machine-readable rows instead of the text table")
    p.add_argument("--output", metavar="PATH", default=None, help="write here instead of stdout")
    p.add_argument("--figure", metavar="PATH", default=None, help="render grouped precision/recall/F1 bars")
    p.set_defaults(handler=_cmd_compare)

    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 1
    try:
        return args.handler(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
