"""Command-line surface: simulate, train, predict, evaluate,
inspect-weights, verify.

Exit codes: 0 success, 1 usage error, 2 data error, 3 model-file error,
4 I/O failure. Every failure prints a single-line diagnostic to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .checks import run_arcsine_suite, run_joint_oracle_suite
from .classifier import ModelBundle, load_model, save_model, train_on_dataset
from .errors import DataError, MixedNBError, ModelFormatError
from .evaluation import evaluate
from .schema import Dataset, infer_schema, parse_csv, parse_schema_file, schema_to_text
from .simulate import default_plan, generate

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_MODEL = 3
EXIT_IO = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_dataset(data_path: str, schema_path: str | None, infer: bool) -> Dataset:
    text = _read_text(data_path)
    if schema_path:
        schema = parse_schema_file(_read_text(schema_path))
    elif infer:
        schema = infer_schema(text)
    else:
        raise DataError("either --schema or --infer-binary is required")
    return parse_csv(text, schema)


def _map_labels(dataset: Dataset, bundle: ModelBundle) -> np.ndarray:
    """Map a dataset's label tokens onto the model's class indices."""
    index = {tok: k + 1 for k, tok in enumerate(bundle.label_names)}
    try:
        return np.array([index[dataset.label_names[v - 1]] for v in dataset.y], dtype=int)
    except KeyError as exc:
        raise DataError(f"label {exc.args[0]!r} was not seen at training time") from None


def _resolve_normal_class(token: str | None, bundle: ModelBundle) -> int:
    if token is None:
        return 1
    if token in bundle.label_names:
        return bundle.label_names.index(token) + 1
    raise DataError(f"unknown --normal-class label {token!r}")


def cmd_simulate(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    plan = default_plan(seed=args.seed, samples_per_condition=args.samples)
    train, test = generate(plan)
    comment = f"seed={plan.seed} generator=numpy-pcg64"
    (out / "train.csv").write_text(train.to_csv(comment=comment), encoding="utf-8")
    (out / "test.csv").write_text(test.to_csv(comment=comment), encoding="utf-8")
    (out / "schema.csv").write_text(schema_to_text(train.schema), encoding="utf-8")
    print(f"wrote {out / 'train.csv'}, {out / 'test.csv'}, {out / 'schema.csv'}")
    return 0


def cmd_train(args) -> int:
    dataset = _load_dataset(args.data, args.schema, args.infer_binary)
    bundle = train_on_dataset(
        dataset, xi=args.xi, truncation=args.truncation, sigmoid=args.sigmoid
    )
    save_model(args.out, bundle)
    print(f"wrote {args.out}")
    return 0


def cmd_predict(args) -> int:
    bundle = load_model(args.model)
    dataset = parse_csv(_read_text(args.data), bundle.schema)
    proba = bundle.clf.predict_proba(dataset.X)
    labels = bundle.predict_tokens(dataset.X)
    K = bundle.clf.class_count_
    lines = ["row_index,predicted_label," + ",".join(f"posterior_{k + 1}" for k in range(K))]
    for i, lab in enumerate(labels):
        lines.append(f"{i},{lab}," + ",".join(repr(float(v)) for v in proba[i]))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_evaluate(args) -> int:
    bundle = load_model(args.model)
    dataset = parse_csv(_read_text(args.data), bundle.schema)
    true = _map_labels(dataset, bundle)
    pred = bundle.clf.predict(dataset.X)
    normal = _resolve_normal_class(args.normal_class, bundle)
    report = evaluate(pred, true, normal_class=normal)
    print(report.summary_line())
    if args.per_row:
        lines = ["index,true,pred"]
        for i in range(dataset.n):
            lines.append(
                f"{i},{bundle.label_names[true[i] - 1]},{bundle.label_names[pred[i] - 1]}"
            )
        Path(args.per_row).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return 0


def cmd_inspect_weights(args) -> int:
    bundle = load_model(args.model)
    report = bundle.clf.weight_report_
    if report is None:
        raise ModelFormatError("model carries no feature-weight report")
    text = report.to_csv()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    ok = True
    print("check                         value        expected     status")
    worst, passed = run_joint_oracle_suite(seed=args.seed)
    ok &= passed
    print(f"joint-estimator oracle        {worst:<12.3e} <=1e-12      {'PASS' if passed else 'FAIL'}")
    for res, passed in run_arcsine_suite(seed=args.seed):
        ok &= passed
        print(
            f"arcsine law rho={res.rho:+.1f}          "
            f"{res.empirical_binary_corr:<12.4f} {res.predicted:<12.4f} "
            f"{'PASS' if passed else 'FAIL'}"
        )
    return 0 if ok else EXIT_DATA


def build_parser() -> _Parser:
    parser = _Parser(prog="mixednb", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="write the synthetic benchmark CSVs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1500, help="rows per condition")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("train", help="train a model from a labeled CSV")
    p.add_argument("data", help="training CSV")
    p.add_argument("--schema", help="sidecar schema file (name,kind per line)")
    p.add_argument("--infer-binary", action="store_true",
                   help="infer kinds from data: all-0/1 columns become two-valued")
    p.add_argument("--out", required=True, help="model JSON path")
    p.add_argument("--xi", type=float, default=1e-6)
    p.add_argument("--truncation", choices=["clamp-all", "literal"], default="clamp-all")
    p.add_argument("--sigmoid", choices=["literal", "increasing"], default="literal")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="label rows with a trained model")
    p.add_argument("model")
    p.add_argument("data")
    p.add_argument("--out", help="predictions CSV (default stdout)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="score a labeled CSV against a model")
    p.add_argument("model")
    p.add_argument("data")
    p.add_argument("--normal-class", help="label token of the normal class (default: first)")
    p.add_argument("--per-row", help="optional per-row (index,true,pred) CSV")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("inspect-weights", help="dump a model's feature weights as CSV")
    p.add_argument("model")
    p.add_argument("--out", help="output CSV (default stdout)")
    p.set_defaults(func=cmd_inspect_weights)

    p = sub.add_parser("verify", help="run the statistical verification checks")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ModelFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except (DataError, MixedNBError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
