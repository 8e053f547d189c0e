"""Command-line entry points for the full pipeline.

Commands: ingest, train, evaluate, predict, serve, gen-synthetic. Every
source of randomness (shuffles, undersampling, synthetic data) flows from an
explicit --seed flag. Exit codes: 0 ok, 2 usage, 3 data error, 4 model
error; failures print a single machine-parsable "error:<code>: <message>"
line to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from collections import Counter
from pathlib import Path
from typing import Sequence

from . import corpus as corpus_mod
from . import evaluation, features, labeler, model, modelio, synth, textproc

logger = logging.getLogger("juripredict")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_MODEL = 4

TASKS = ("decision", "unanimity")


def _add_corpus_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--corpus", required=True, help="path to the decision-record file")
    parser.add_argument("--format", choices=corpus_mod.FORMATS, default=corpus_mod.JSONL)
    parser.add_argument("--rules", help="label rule file (priority<TAB>label<TAB>pattern)")


def _add_preprocess_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--stopwords", help="stop-word list file, one word per line")
    parser.add_argument("--stem-rules", help="stem rule file, suffix<TAB>min_stem_length per line")
    parser.add_argument("--keep-accents", action="store_true", help="skip the final accent strip")
    parser.add_argument("--min-token-length", type=int, default=2)
    parser.add_argument("--min-df", type=int, default=features.DEFAULT_MIN_DF)


def _add_train_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, required=True)
    parser.add_argument("--learning-rate", type=float, default=0.05)
    parser.add_argument("--epochs", type=int, default=30)
    parser.add_argument("--batch-size", type=int, default=32)
    parser.add_argument("--l2", type=float, default=1e-4)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="juripredict",
        description="Appellate-decision outcome and unanimity prediction pipeline.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="parse, deduplicate, label and filter a corpus")
    _add_corpus_args(p_ingest)
    p_ingest.add_argument("--json", action="store_true", help="emit the census as JSON")

    p_train = sub.add_parser("train", help="train one task model and write a model file")
    _add_corpus_args(p_train)
    _add_preprocess_args(p_train)
    _add_train_args(p_train)
    p_train.add_argument("--task", choices=TASKS, required=True)
    p_train.add_argument("--model-out", required=True)

    p_eval = sub.add_parser("evaluate", help="stratified k-fold cross-validation")
    _add_corpus_args(p_eval)
    _add_preprocess_args(p_eval)
    _add_train_args(p_eval)
    p_eval.add_argument("--task", choices=TASKS, required=True)
    p_eval.add_argument("--k", type=int, default=5)
    p_eval.add_argument(
        "--balance",
        nargs="?",
        const="auto",
        help="undersample before evaluating: 'auto' shrinks the majority label "
        "to the second-largest count, or pass explicit label=count pairs",
    )
    p_eval.add_argument("--averaging", choices=("weighted", "macro"), default="weighted")
    p_eval.add_argument("--report-out", help="write the evaluation report file here")

    p_predict = sub.add_parser("predict", help="predict outcome and unanimity for a description")
    p_predict.add_argument("--decision-model", required=True)
    p_predict.add_argument("--unanimity-model", required=True)
    p_predict.add_argument("description", help="case description text")

    p_serve = sub.add_parser("serve", help="run the HTTP prediction service")
    p_serve.add_argument("--decision-model", required=True)
    p_serve.add_argument("--unanimity-model", required=True)
    p_serve.add_argument("--bind", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--static-dir", help="serve this directory as the web client root")

    p_syn = sub.add_parser("gen-synthetic", help="generate a synthetic benchmark corpus")
    p_syn.add_argument("--n-per-class", type=int, required=True)
    p_syn.add_argument("--noise", type=float, default=0.0)
    p_syn.add_argument("--seed", type=int, required=True)
    p_syn.add_argument("--out", required=True)
    p_syn.add_argument("--format", choices=corpus_mod.FORMATS, default=corpus_mod.JSONL)

    return parser


def _load_rules(args) -> tuple[tuple[labeler.LabelRule, ...], tuple[labeler.LabelRule, ...]]:
    if getattr(args, "rules", None):
        return labeler.load_rules(args.rules)
    return labeler.DEFAULT_DECISION_RULES, labeler.DEFAULT_UNANIMITY_RULES


def _ingest(args) -> tuple[list[labeler.LabeledCase], corpus_mod.Census, labeler.ExclusionReport, str]:
    """parse -> dedup -> label -> filter; shared by ingest/train/evaluate."""
    decision_rules, unanimity_rules = _load_rules(args)
    with open(args.corpus, "rb") as handle:
        parsed = corpus_mod.parse_corpus(handle, args.format)
    deduped = corpus_mod.dedup_by_description(parsed)
    cases, exclusions = labeler.build_labeled_dataset(deduped, decision_rules, unanimity_rules)
    census = deduped.census
    corpus_mod.filter_predictive([(case.record, case.decision) for case in cases], census)
    filtered = [case for case in cases if case.decision in labeler.PREDICTIVE_LABELS]
    rules_hash = labeler.ruleset_hash(decision_rules, unanimity_rules)
    return filtered, census, exclusions, rules_hash


def _task_dataset(cases: Sequence[labeler.LabeledCase], task: str) -> tuple[list[str], list[str]]:
    """Documents and label strings for one task, from predictive cases."""
    if task == "decision":
        return [c.record.description for c in cases], [c.decision.value for c in cases]
    with_unanimity = [c for c in cases if c.unanimity is not None]
    return (
        [c.record.description for c in with_unanimity],
        [c.unanimity.value for c in with_unanimity],
    )


def _preprocess_config(args) -> textproc.PreprocessConfig:
    return textproc.config_from_files(
        stopwords_path=getattr(args, "stopwords", None),
        stem_rules_path=getattr(args, "stem_rules", None),
        strip_accents=not getattr(args, "keep_accents", False),
        min_token_length=args.min_token_length,
    )


def _train_config(args) -> model.TrainConfig:
    return model.TrainConfig(
        seed=args.seed,
        learning_rate=args.learning_rate,
        epochs=args.epochs,
        batch_size=args.batch_size,
        l2_lambda=args.l2,
    )


def _parse_balance(spec: str, counts: Counter) -> dict[str, int]:
    if spec == "auto":
        if len(counts) < 2:
            raise ValueError("balancing needs at least two labels")
        ranked = counts.most_common()
        majority, _ = ranked[0]
        _, second = ranked[1]
        return {majority: second}
    target: dict[str, int] = {}
    for part in spec.split(","):
        label, _, count_text = part.partition("=")
        if not label or not count_text:
            raise ValueError(f"bad balance spec {part!r}; expected label=count")
        try:
            target[label.strip()] = int(count_text)
        except ValueError as exc:
            raise ValueError(f"bad balance count in {part!r}") from exc
    return target


def cmd_ingest(args) -> int:
    cases, census, exclusions, _ = _ingest(args)
    label_counts = Counter(case.decision.value for case in cases)
    unanimity_counts = Counter(
        case.unanimity.value for case in cases if case.unanimity is not None
    )
    payload = {
        "census": census.as_dict(),
        "excluded": {
            "unlabeled_decision": exclusions.unlabeled_decision,
            "unlabeled_unanimity": exclusions.unlabeled_unanimity,
        },
        "decision_labels": dict(sorted(label_counts.items())),
        "unanimity_labels": dict(sorted(unanimity_counts.items())),
    }
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, indent=2))
        return EXIT_OK
    print(f"loaded:        {census.loaded}")
    print(f"after dedup:   {census.after_dedup}")
    print(f"after filter:  {census.after_filter}")
    print(f"unlabeled decision texts: {exclusions.unlabeled_decision}")
    print(f"missing unanimity labels: {exclusions.unlabeled_unanimity}")
    for label, count in sorted(label_counts.items()):
        print(f"  decision {label}: {count}")
    for label, count in sorted(unanimity_counts.items()):
        print(f"  unanimity {label}: {count}")
    return EXIT_OK


def cmd_train(args) -> int:
    cases, _, _, rules_hash = _ingest(args)
    documents, labels = _task_dataset(cases, args.task)
    if not documents:
        raise ValueError(f"no usable records for task {args.task!r}")
    config = _preprocess_config(args)
    token_seqs = [textproc.preprocess(document, config) for document in documents]
    tfidf = features.fit(token_seqs, min_df=args.min_df, preprocess_config=config)
    vectors = [features.transform(tfidf, tokens) for tokens in token_seqs]
    train_config = _train_config(args)
    classifier = model.train(vectors, labels, train_config, n_features=len(tfidf.vocabulary))
    modelio.save_bundle(
        args.model_out, classifier, tfidf, rules_hash, task=args.task, train_config=train_config
    )
    logger.info("trained %s model on %d documents", args.task, len(documents))
    print(
        f"wrote {args.model_out}: task={args.task} classes={list(classifier.classes)} "
        f"vocabulary={len(tfidf.vocabulary)} documents={len(documents)}"
    )
    return EXIT_OK


def cmd_evaluate(args) -> int:
    if args.k < 2:
        raise ValueError("k must be >= 2")
    cases, _, _, _ = _ingest(args)
    documents, labels = _task_dataset(cases, args.task)
    if not documents:
        raise ValueError(f"no usable records for task {args.task!r}")
    if args.balance:
        target = _parse_balance(args.balance, Counter(labels))
        documents, labels = evaluation.undersample_to_balance(documents, labels, target, args.seed)
    config = evaluation.PipelineConfig(
        preprocess=_preprocess_config(args),
        train=_train_config(args),
        min_df=args.min_df,
        averaging=args.averaging,
    )
    report = evaluation.cross_validate(documents, labels, config, k=args.k, seed=args.seed)
    print(report.render_table())
    if args.report_out:
        report.save(args.report_out)
        print(f"wrote {args.report_out}")
    return EXIT_OK


def cmd_predict(args) -> int:
    decision_bundle = modelio.load_bundle(args.decision_model)
    unanimity_bundle = modelio.load_bundle(args.unanimity_model)
    response = modelio.predict_case(decision_bundle, unanimity_bundle, args.description)
    print(json.dumps(response, ensure_ascii=False, indent=2))
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(
        decision_model=args.decision_model,
        unanimity_model=args.unanimity_model,
        static_dir=args.static_dir,
    )
    uvicorn.run(app, host=args.bind, port=args.port, log_level="info")
    return EXIT_OK


def cmd_gen_synthetic(args) -> int:
    records = synth.gen_synthetic(args.n_per_class, args.noise, args.seed)
    payload = corpus_mod.serialize_corpus(records, args.format)
    Path(args.out).write_bytes(payload)
    print(f"wrote {args.out}: {len(records)} records ({args.n_per_class} per class, noise={args.noise})")
    return EXIT_OK


_COMMANDS = {
    "ingest": cmd_ingest,
    "train": cmd_train,
    "evaluate": cmd_evaluate,
    "predict": cmd_predict,
    "serve": cmd_serve,
    "gen-synthetic": cmd_gen_synthetic,
}


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("JURI_LOG_LEVEL", "WARNING").upper())
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (corpus_mod.CorpusError, FileNotFoundError, ValueError) as exc:
        print(f"error:data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except modelio.ModelFileError as exc:
        print(f"error:model: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except model.TrainingError as exc:
        print(f"error:model: {exc}", file=sys.stderr)
        return EXIT_MODEL


if __name__ == "__main__":
    sys.exit(main())
