"""Command-line interface.

Commands: train, eval, predict, export-filters, synth.
Exit codes: 0 ok, 1 config error, 2 I/O error, 3 checkpoint error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .config import RunConfig, config_from_json_file, seed_streams
from .dataset import LabeledIndex, load_image, resize, scan_dataset, split_dataset
from .errors import CheckpointError, ConfigError, DatasetError
from .model import build_model, load_model, save_model
from .synth import generate_dataset, parse_class_spec
from .trainer import evaluate, predict_proba, train, write_confusion_csv

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_CHECKPOINT = 3


def _load_config(args) -> RunConfig:
    config = config_from_json_file(args.config) if args.config else RunConfig().validate()
    if getattr(args, "seed", None) is not None:
        config = config.with_seed(args.seed).validate()
    return config


def _load_samples(index: LabeledIndex, side: int):
    return [(resize(load_image(path), side), class_id) for path, class_id in index.entries]


def cmd_train(args) -> int:
    config = _load_config(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    index = scan_dataset(args.data)
    train_index, val_index = split_dataset(index, config.split_fraction,
                                           seed_streams(config.seed).split)
    train_set = _load_samples(train_index, config.image_side)
    val_set = _load_samples(val_index, config.image_side)
    model = build_model(config, index.class_names)
    result = train(model, train_set, val_set)
    save_model(result.final_model, out_dir / "model.json")
    save_model(result.best_model, out_dir / "model_best.json")
    result.report.write_csv(out_dir / "report.csv")
    write_confusion_csv(result.report.confusion, index.class_names, out_dir / "confusion.csv")
    report = result.report
    if report.epochs:
        last = report.epochs[-1]
        print(f"final epoch {last.epoch}: train_acc={last.train_acc:.4f} val_acc={last.val_acc:.4f}")
    else:
        print("final epoch 0: untrained model saved")
    print(f"best epoch {report.best_epoch}: val_acc={report.best_val_acc:.4f}")
    return EXIT_OK


def cmd_eval(args) -> int:
    model = load_model(args.model)
    index = scan_dataset(args.data)
    if index.class_names != model.class_names:
        raise DatasetError(
            f"dataset classes {index.class_names} do not match model classes {model.class_names}"
        )
    dataset = _load_samples(index, model.config.image_side)
    accuracy, confusion = evaluate(model, dataset)
    print(f"accuracy={accuracy:.4f}")
    for name, row in zip(model.class_names, confusion):
        print(f"{name} " + " ".join(str(int(v)) for v in row))
    return EXIT_OK


def cmd_predict(args) -> int:
    model = load_model(args.model)
    img = resize(load_image(args.image), model.config.image_side)
    probs = predict_proba(model, img)
    ranked = sorted(enumerate(probs), key=lambda pair: (-pair[1], pair[0]))
    for class_id, p in ranked:
        print(f"{model.class_names[class_id]} {p:.6f}")
    return EXIT_OK


def cmd_export_filters(args) -> int:
    model = load_model(args.model)
    levels = []
    for level in range(1, model.config.slicing_levels + 1):
        levels.extend([level] * 4 ** (level - 1))
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["block_index", "level", "ring_index", "weight"])
        for block_index, weights in enumerate(model.bank.weights):
            for ring_index, weight in enumerate(weights, start=1):
                writer.writerow([block_index, levels[block_index], ring_index, repr(float(weight))])
    return EXIT_OK


def cmd_synth(args) -> int:
    try:
        classes = parse_class_spec(args.classes)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    written = generate_dataset(args.out, classes, args.count, args.seed, side=args.side)
    print(f"wrote {written} images to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freqnet",
        description="Image classifier built on trainable radial frequency-domain filters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train a model on a class-per-directory dataset")
    p_train.add_argument("--config", help="JSON run configuration (defaults used when omitted)")
    p_train.add_argument("--data", required=True, help="dataset root: <root>/<class>/<images>")
    p_train.add_argument("--out", required=True, help="output directory for model and reports")
    p_train.add_argument("--seed", type=int, help="override the configured seed")
    p_train.set_defaults(func=cmd_train)

    p_eval = sub.add_parser("eval", help="evaluate a checkpoint on a dataset")
    p_eval.add_argument("--model", required=True, help="model checkpoint (JSON)")
    p_eval.add_argument("--data", required=True, help="dataset root")
    p_eval.set_defaults(func=cmd_eval)

    p_predict = sub.add_parser("predict", help="classify one image")
    p_predict.add_argument("--model", required=True, help="model checkpoint (JSON)")
    p_predict.add_argument("image", help="image file (PNG or PGM)")
    p_predict.set_defaults(func=cmd_predict)

    p_export = sub.add_parser("export-filters", help="dump trained filter weights as CSV")
    p_export.add_argument("--model", required=True, help="model checkpoint (JSON)")
    p_export.add_argument("--out", required=True, help="output CSV path")
    p_export.set_defaults(func=cmd_export_filters)

    p_synth = sub.add_parser("synth", help="generate a synthetic grating dataset")
    p_synth.add_argument("--out", required=True, help="output dataset root")
    p_synth.add_argument("--classes", default="low=3,high=9",
                         help="comma-separated name=<frequency index> pairs")
    p_synth.add_argument("--count", type=int, default=40, help="images per class")
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--side", type=int, default=128, help="image side in pixels")
    p_synth.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CheckpointError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECKPOINT
    except DatasetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
