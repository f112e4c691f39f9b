"""Command-line interface: run benchmarks, validate data, recompute ranks.

Subcommands
    run            run the configured experiment grid and write reports
    validate-data  check every manifest entry against its expected shape
    rank           recompute mean/stddev/rank tables from a results CSV
    make-data      write the bundled benchmark CSVs plus their manifest

Configuration for ``run`` can come from an INI file (section
``[experiment]``, keys named like the long flags); command-line flags
override file values, which override built-in defaults.

Exit codes: 0 success, 1 configuration error, 2 data error,
3 runtime error.
"""

from __future__ import annotations

import argparse
import configparser
import sys
from pathlib import Path

import numpy as np

from .bench import (
    WEIGHT_BOUND,
    AlgorithmSpec,
    CellResult,
    ExperimentConfig,
    RunReport,
    emit_report,
    render_results_table,
    run_experiment,
)
from .data import load_dataset, load_manifest
from .datasets import materialize

__all__ = ["main", "build_parser", "ALGORITHM_PRESETS"]

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATA = 2
EXIT_RUNTIME = 3

# Algorithm entries selectable by name from the command line. Custom
# combinations (ablations, parameter overrides) are available through the
# library's AlgorithmSpec.
ALGORITHM_PRESETS = {
    "cende-dobl": AlgorithmSpec("cende-dobl", variant="cende"),
    "de": AlgorithmSpec("de", variant="de"),
    "de-best": AlgorithmSpec("de-best", variant="de", mutation="local_to_best"),
}

_DEFAULTS = {
    "manifest": "data/manifest.ini",
    "out": "results",
    "datasets": None,  # None -> every dataset in the manifest
    "algorithms": "cende-dobl,de",
    "k": 10,
    "repetitions": 1,
    "seed": 0,
    "budget": 25000,
    "pop": 50,
    "f": 0.5,
    "cr": 0.9,
    "jr": 0.3,
    "nbest": 3,
    "weight_bound": WEIGHT_BOUND,
    "threads": 1,
    "per_fold_normalization": False,
}


class _UsageError(Exception):
    """Bad command line; reported as a configuration error (exit 1)."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we classify instead
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="cende-dobl",
        description="Benchmark a centroid/quasi-opposition DE neural-network "
        "trainer against a plain DE baseline.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the experiment grid and write reports")
    run.add_argument("--config", type=str, default=None, metavar="PATH",
                     help="INI file with an [experiment] section")
    run.add_argument("--manifest", type=str, default=None, metavar="PATH",
                     help="dataset manifest (INI)")
    run.add_argument("--datasets", type=str, default=None, metavar="LIST",
                     help="comma-separated dataset names (default: all in manifest)")
    run.add_argument("--algorithms", type=str, default=None, metavar="LIST",
                     help="comma-separated algorithm names: "
                     + ", ".join(sorted(ALGORITHM_PRESETS)))
    run.add_argument("--seed", type=int, default=None, help="root seed")
    run.add_argument("--budget", type=int, default=None,
                     help="objective evaluations per run")
    run.add_argument("--pop", type=int, default=None, help="population size")
    run.add_argument("--k", type=int, default=None, help="cross-validation folds")
    run.add_argument("--repetitions", type=int, default=None,
                     help="independent cross-validation passes")
    run.add_argument("--jr", type=float, default=None, help="jumping rate")
    run.add_argument("--nbest", type=int, default=None,
                     help="individuals averaged into the centroid")
    run.add_argument("--f", type=float, default=None, help="mutation scale factor")
    run.add_argument("--cr", type=float, default=None, help="crossover rate")
    run.add_argument("--weight-bound", type=float, default=None, dest="weight_bound",
                     help="half-width of the weight search interval")
    run.add_argument("--per-fold-normalization", action="store_true", default=None,
                     dest="per_fold_normalization",
                     help="scale features by training-fold statistics instead of "
                     "the full dataset")
    run.add_argument("--out", type=str, default=None, metavar="DIR",
                     help="output directory for results.csv/report.md")
    run.add_argument("--threads", type=int, default=None,
                     help="parallel workers (-1 = all cores)")
    run.set_defaults(handler=_cmd_run)

    validate = sub.add_parser("validate-data",
                              help="check manifest entries against expected shapes")
    validate.add_argument("--manifest", type=str, default=_DEFAULTS["manifest"],
                          metavar="PATH")
    validate.set_defaults(handler=_cmd_validate_data)

    rank = sub.add_parser("rank", help="recompute rank tables from a results CSV")
    rank.add_argument("--csv", type=str, required=True, metavar="PATH",
                      help="results.csv produced by the run subcommand")
    rank.set_defaults(handler=_cmd_rank)

    make = sub.add_parser("make-data", help="write bundled benchmark CSVs + manifest")
    make.add_argument("--out", type=str, default="data", metavar="DIR")
    make.set_defaults(handler=_cmd_make_data)

    return parser


def _merged_settings(args) -> dict:
    """Defaults <- config file <- command-line flags, later wins."""
    merged = dict(_DEFAULTS)
    if args.config is not None:
        parser = configparser.ConfigParser()
        if not parser.read(args.config):
            raise _UsageError(f"cannot read config file {args.config}")
        if not parser.has_section("experiment"):
            raise _UsageError(f"{args.config} has no [experiment] section")
        section = parser["experiment"]
        unknown = set(section) - set(_DEFAULTS)
        if unknown:
            raise _UsageError(f"unknown config keys: {sorted(unknown)}")
        try:
            for key in section:
                if key in ("datasets", "algorithms", "manifest", "out"):
                    merged[key] = section.get(key)
                elif key in ("f", "cr", "jr", "weight_bound"):
                    merged[key] = section.getfloat(key)
                elif key == "per_fold_normalization":
                    merged[key] = section.getboolean(key)
                else:
                    merged[key] = section.getint(key)
        except ValueError as exc:
            raise _UsageError(f"config key {key!r}: {exc}") from exc
    for key in _DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None:
            merged[key] = flag
    return merged


def _split_list(raw: str) -> tuple[str, ...]:
    items = tuple(part.strip() for part in raw.split(",") if part.strip())
    if not items:
        raise _UsageError(f"empty list value: {raw!r}")
    return items


def _experiment_config(args) -> ExperimentConfig:
    merged = _merged_settings(args)
    if merged["datasets"] is None:
        # Default to every dataset the manifest lists, in manifest order.
        try:
            names = tuple(e.name for e in load_manifest(merged["manifest"]))
        except (OSError, ValueError) as exc:
            raise _UsageError(
                f"--datasets not given and manifest unreadable: {exc}"
            ) from exc
        merged["datasets"] = names
    elif isinstance(merged["datasets"], str):
        merged["datasets"] = _split_list(merged["datasets"])
    if isinstance(merged["algorithms"], str):
        merged["algorithms"] = _split_list(merged["algorithms"])
    specs = []
    for name in merged["algorithms"]:
        if name not in ALGORITHM_PRESETS:
            raise _UsageError(
                f"unknown algorithm {name!r}; available: "
                + ", ".join(sorted(ALGORITHM_PRESETS))
            )
        specs.append(ALGORITHM_PRESETS[name])
    try:
        return ExperimentConfig(
            manifest_path=merged["manifest"],
            output_dir=merged["out"],
            datasets=merged["datasets"],
            algorithms=tuple(specs),
            k=merged["k"],
            repetitions=merged["repetitions"],
            root_seed=merged["seed"],
            pop_size=merged["pop"],
            max_evals=merged["budget"],
            f=merged["f"],
            cr=merged["cr"],
            jumping_rate=merged["jr"],
            n_best=merged["nbest"],
            weight_bound=merged["weight_bound"],
            threads=merged["threads"],
            per_fold_normalization=bool(merged["per_fold_normalization"]),
        )
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def _cmd_run(args) -> int:
    cfg = _experiment_config(args)
    try:
        report = run_experiment(cfg)
    except ValueError as exc:
        # Only ingestion raises ValueError past config validation.
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # genuinely unexpected: optimizer/runtime
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        paths = emit_report(report, cfg.output_dir)
    except OSError as exc:
        print(f"runtime error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    for diag in report.diagnostics:
        print(f"warning: skipped dataset {diag}", file=sys.stderr)
    print(render_results_table(report))
    for kind, path in sorted(paths.items()):
        print(f"wrote {kind}: {path}")
    return EXIT_OK


def _cmd_validate_data(args) -> int:
    try:
        entries = load_manifest(args.manifest)
    except (OSError, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    base_dir = Path(args.manifest).parent
    failures = 0
    for entry in entries:
        try:
            ds = load_dataset(entry, base_dir)
        except (OSError, ValueError) as exc:
            print(f"{entry.name}: FAIL ({exc})")
            failures += 1
            continue
        print(
            f"{entry.name}: OK ({ds.n} samples, {ds.feature_count} features, "
            f"{ds.class_count} classes, {ds.dropped_rows} rows dropped)"
        )
    if failures:
        print(f"data error: {failures} dataset(s) failed validation", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def _read_results_csv(path) -> RunReport:
    """Rebuild a minimal report (cells only) from the long-form CSV."""
    import csv as _csv

    algorithms: list[str] = []
    datasets: list[str] = []
    cells = []
    with open(path, newline="") as fh:
        reader = _csv.DictReader(fh)
        required = {"algorithm", "dataset", "fold", "accuracy", "seed"}
        if reader.fieldnames is None or not required <= set(reader.fieldnames):
            raise ValueError(
                f"{path}: expected columns {sorted(required)}, "
                f"found {reader.fieldnames}"
            )
        for row in reader:
            if row["algorithm"] not in algorithms:
                algorithms.append(row["algorithm"])
            if row["dataset"] not in datasets:
                datasets.append(row["dataset"])
            cells.append(
                CellResult(
                    algorithm=row["algorithm"],
                    dataset=row["dataset"],
                    repetition=0,
                    fold=int(row["fold"]),
                    seed=int(row["seed"]),
                    accuracy=float(row["accuracy"]),
                    train_error=np.nan,
                    evaluations=0,
                )
            )
    if not cells:
        raise ValueError(f"{path}: no result rows")
    k = max(c.fold for c in cells) + 1
    return RunReport(
        algorithms=tuple(algorithms),
        datasets=tuple(datasets),
        k=k,
        repetitions=1,
        root_seed=0,
        cells=tuple(cells),
        dataset_info=(),
    )


def _cmd_rank(args) -> int:
    try:
        report = _read_results_csv(args.csv)
    except (OSError, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    print(render_results_table(report))
    return EXIT_OK


def _cmd_make_data(args) -> int:
    try:
        manifest = materialize(args.out)
    except OSError as exc:
        print(f"runtime error: cannot write datasets: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"wrote manifest: {manifest}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except _UsageError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
