"""CSV ingestion, min-max normalisation, and stratified k-fold planning.

Rows whose feature cells fail to parse as numbers are dropped and counted
rather than imputed; labels become dense integer indices in order of first
appearance, so ingestion is a pure function of the file bytes plus schema.
A manifest (INI format) pins each benchmark file's path, schema, and
expected shape so ingestion drift is caught before any optimisation runs.
"""

from __future__ import annotations

import configparser
import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import make_rng


@dataclass(frozen=True)
class Dataset:
    """Numeric feature matrix plus dense integer labels.

    ``dropped_rows`` records how many file rows were discarded during
    ingestion; ``label_names`` keeps the original label strings by class
    index for reporting.
    """

    name: str
    features: np.ndarray
    labels: np.ndarray
    class_count: int
    feature_names: tuple[str, ...] = ()
    label_names: tuple[str, ...] = ()
    dropped_rows: int = 0

    def __post_init__(self):
        feats = np.array(self.features, dtype=float, copy=True)
        labs = np.array(self.labels, dtype=int, copy=True)
        if feats.ndim != 2 or feats.shape[0] == 0:
            raise ValueError(f"{self.name}: features must be a non-empty 2-D matrix")
        if labs.shape != (feats.shape[0],):
            raise ValueError(f"{self.name}: labels must align with feature rows")
        if self.class_count < 2:
            raise ValueError(f"{self.name}: need at least two classes")
        if labs.min() < 0 or labs.max() >= self.class_count:
            raise ValueError(f"{self.name}: labels must lie in [0, {self.class_count})")
        feats.flags.writeable = False
        labs.flags.writeable = False
        object.__setattr__(self, "features", feats)
        object.__setattr__(self, "labels", labs)
        if not self.feature_names:
            object.__setattr__(
                self, "feature_names", tuple(f"f{j}" for j in range(feats.shape[1]))
            )

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def feature_count(self) -> int:
        return self.features.shape[1]

    def class_sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.class_count)


@dataclass(frozen=True)
class FoldPlan:
    """Fold index per sample; a deterministic function of (dataset, k, seed)."""

    k: int
    assignments: np.ndarray

    def __post_init__(self):
        assign = np.array(self.assignments, dtype=int, copy=True)
        if self.k < 2:
            raise ValueError("need at least two folds")
        if assign.min() < 0 or assign.max() >= self.k:
            raise ValueError(f"fold indices must lie in [0, {self.k})")
        if len(np.unique(assign)) != self.k:
            raise ValueError("every fold must receive at least one sample")
        assign.flags.writeable = False
        object.__setattr__(self, "assignments", assign)


def load_csv(
    path,
    label_column: int = -1,
    delimiter: str = ",",
    header: bool = False,
    name: str = "",
) -> Dataset:
    """Read a delimiter-separated file into a Dataset.

    Every cell except the label column must parse as a float; rows that
    fail (missing markers like '?', stray text, wrong column count) are
    dropped and counted. Label strings map to dense class indices in order
    of first appearance.
    """
    path = Path(path)
    rows: list[list[str]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        for row in reader:
            if row and any(cell.strip() for cell in row):
                rows.append([cell.strip() for cell in row])
    feature_names: tuple[str, ...] = ()
    if header:
        if not rows:
            raise ValueError(f"{path}: empty file")
        head = rows.pop(0)
        idx = label_column % len(head)
        feature_names = tuple(h for j, h in enumerate(head) if j != idx)

    if not rows:
        raise ValueError(f"{path}: no data rows")
    width = len(rows[0])
    label_idx = label_column % width

    features: list[list[float]] = []
    raw_labels: list[str] = []
    dropped = 0
    for row in rows:
        if len(row) != width:
            dropped += 1
            continue
        try:
            feats = [float(cell) for j, cell in enumerate(row) if j != label_idx]
        except ValueError:
            dropped += 1
            continue
        features.append(feats)
        raw_labels.append(row[label_idx])

    if not features:
        raise ValueError(f"{path}: no parseable data rows")

    mapping: dict[str, int] = {}
    labels = []
    for lab in raw_labels:
        if lab not in mapping:
            mapping[lab] = len(mapping)
        labels.append(mapping[lab])

    return Dataset(
        name=name or path.stem,
        features=np.array(features),
        labels=np.array(labels),
        class_count=len(mapping),
        feature_names=feature_names,
        label_names=tuple(mapping),
        dropped_rows=dropped,
    )


def normalize_minmax(ds: Dataset) -> Dataset:
    """Scale every feature column into [0, 1]; constant columns map to 0."""
    lo = ds.features.min(axis=0)
    hi = ds.features.max(axis=0)
    span = hi - lo
    safe = np.where(span > 0, span, 1.0)
    scaled = np.where(span > 0, (ds.features - lo) / safe, 0.0)
    return Dataset(
        name=ds.name,
        features=scaled,
        labels=ds.labels,
        class_count=ds.class_count,
        feature_names=ds.feature_names,
        label_names=ds.label_names,
        dropped_rows=ds.dropped_rows,
    )


def normalize_train_test(train: Dataset, test: Dataset) -> tuple[Dataset, Dataset]:
    """Leakage-free variant: scale both partitions by the training min/max."""
    lo = train.features.min(axis=0)
    hi = train.features.max(axis=0)
    span = hi - lo
    safe = np.where(span > 0, span, 1.0)

    def apply(ds: Dataset) -> Dataset:
        scaled = np.where(span > 0, (ds.features - lo) / safe, 0.0)
        return Dataset(
            name=ds.name,
            features=scaled,
            labels=ds.labels,
            class_count=ds.class_count,
            feature_names=ds.feature_names,
            label_names=ds.label_names,
            dropped_rows=ds.dropped_rows,
        )

    return apply(train), apply(test)


def stratified_kfold(ds: Dataset, k: int, seed: int) -> FoldPlan:
    """Assign folds per class: seeded shuffle within each class, then a
    round-robin counter running across classes, so fold sizes differ by at
    most one globally and within every class.

    Classes smaller than ``k`` force a plain (non-stratified) split, with a
    warning.
    """
    if k > ds.n:
        raise ValueError(f"k={k} exceeds {ds.n} samples")
    rng = make_rng(seed)
    assignments = np.empty(ds.n, dtype=int)
    if ds.class_sizes().min() < k:
        warnings.warn(
            f"{ds.name}: some class has fewer than {k} members; "
            "falling back to a non-stratified split",
            stacklevel=2,
        )
        order = rng.permutation(ds.n)
        assignments[order] = np.arange(ds.n) % k
        return FoldPlan(k=k, assignments=assignments)
    counter = 0
    for cls in range(ds.class_count):
        idx = np.flatnonzero(ds.labels == cls)
        idx = idx[rng.permutation(idx.shape[0])]
        for i in idx:
            assignments[i] = counter % k
            counter += 1
    return FoldPlan(k=k, assignments=assignments)


def fold_split(ds: Dataset, plan: FoldPlan, test_fold: int) -> tuple[Dataset, Dataset]:
    """Partition into (train, test) by fold index; class_count is inherited
    even if a class is absent from the small side."""
    if not 0 <= test_fold < plan.k:
        raise ValueError(f"test fold {test_fold} out of range [0, {plan.k})")
    if plan.assignments.shape[0] != ds.n:
        raise ValueError("fold plan covers a different number of samples")
    mask = plan.assignments == test_fold

    def subset(keep: np.ndarray) -> Dataset:
        return Dataset(
            name=ds.name,
            features=ds.features[keep],
            labels=ds.labels[keep],
            class_count=ds.class_count,
            feature_names=ds.feature_names,
            label_names=ds.label_names,
            dropped_rows=ds.dropped_rows,
        )

    return subset(~mask), subset(mask)


@dataclass(frozen=True)
class ManifestEntry:
    """One dataset's file, schema, and expected shape for validation."""

    name: str
    path: str
    label_column: int = -1
    delimiter: str = ","
    header: bool = False
    expected_rows: int = 0
    expected_features: int = 0
    expected_classes: int = 0


def load_manifest(path) -> list[ManifestEntry]:
    """Parse the INI manifest into one entry per dataset section."""
    path = Path(path)
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ValueError(f"cannot read manifest {path}")
    entries = []
    for section in parser.sections():
        sec = parser[section]
        try:
            entries.append(
                ManifestEntry(
                    name=section,
                    path=sec.get("path", f"{section}.csv"),
                    label_column=sec.getint("label_column", -1),
                    delimiter=sec.get("delimiter", ","),
                    header=sec.getboolean("header", False),
                    expected_rows=sec.getint("rows", 0),
                    expected_features=sec.getint("features", 0),
                    expected_classes=sec.getint("classes", 0),
                )
            )
        except ValueError as exc:
            raise ValueError(f"manifest section [{section}]: {exc}") from exc
    if not entries:
        raise ValueError(f"manifest {path} lists no datasets")
    return entries


def load_dataset(entry: ManifestEntry, base_dir) -> Dataset:
    """Load one manifest entry and verify the realized shape against the
    manifest's expectations. Expected row counts are pre-drop file rows, so
    datasets with known unparseable cells still validate."""
    ds = load_csv(
        Path(base_dir) / entry.path,
        label_column=entry.label_column,
        delimiter=entry.delimiter,
        header=entry.header,
        name=entry.name,
    )
    problems = []
    if entry.expected_rows and ds.n + ds.dropped_rows != entry.expected_rows:
        problems.append(
            f"expected {entry.expected_rows} file rows, found {ds.n + ds.dropped_rows}"
        )
    if entry.expected_features and ds.feature_count != entry.expected_features:
        problems.append(
            f"expected {entry.expected_features} features, found {ds.feature_count}"
        )
    if entry.expected_classes and ds.class_count != entry.expected_classes:
        problems.append(
            f"expected {entry.expected_classes} classes, found {ds.class_count}"
        )
    if problems:
        raise ValueError(f"{entry.name}: " + "; ".join(problems))
    return ds
