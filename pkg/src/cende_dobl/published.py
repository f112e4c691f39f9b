"""Previously published 10-fold CV accuracies shipped for side-by-side display.

These numbers were reported by the study that introduced the centroid/
quasi-opposition DE trainer; they cover three comparison families (other
DE variants, conventional gradient-based trainers, and population-based
metaheuristics) on the six benchmark datasets. Nothing in this package
recomputes them — they are fixed constants, clearly labeled
"published, not reproduced", so locally produced tables can be read in
context without implementing two dozen foreign algorithms.

Each record keeps the mean, standard deviation, per-dataset rank, and the
average rank *exactly as printed* in the source tables. The printed values
are not always mutually consistent — the source apparently ranked on
unrounded data, so values tied at two decimals occasionally carry distinct
printed ranks. Every known divergence is listed in
``PRINT_INCONSISTENCIES``; everything else re-derives exactly from the
printed means. We store what was printed and leave arithmetic to callers.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "PUBLISHED_LABEL",
    "REFERENCE_DATASETS",
    "FAMILIES",
    "PRINT_INCONSISTENCIES",
    "PublishedRecord",
    "published_records",
    "published_record",
    "published_means",
]

PUBLISHED_LABEL = "published, not reproduced"

# Canonical dataset order used by every published table.
REFERENCE_DATASETS = ("iris", "cancer", "liver", "pima", "seed", "vertebral")

# Printed values that disagree with arithmetic on the printed tables
# themselves (two-decimal ties ranked as distinct, and averages computed
# from pre-rounding ranks). Recorded so tests can assert these are the
# *only* spots where re-derivation from the printed means fails.
PRINT_INCONSISTENCIES = (
    # de-variants, avg. rank column: the printed rank rows give QODE
    # (3+3+2+3+3.5+1.5)/6 = 2.67 and CenDE-DOBL (1+2+1+1+1+1.5)/6 = 1.25,
    # yet the printed averages are 2.58 and 1.33 — consistent with the
    # Vertebral tie (88.39 vs 88.39) broken in QODE's favour instead.
    ("de-variants", "avg_rank", ("QODE", "CenDE-DOBL")),
    # gradient, Pima rank column: CG-PBR and LM both print a 76.04 mean but
    # carry distinct ranks 7 and 8 (vs the tied 7.5/7.5 the means imply).
    ("gradient", "pima", ("CG-PBR", "LM")),
    # gradient, Seed rank column: CG-FR, BFGS, and OSS all print 86.67 but
    # carry ranks 5.5/5.5/7 (vs the three-way tie 6/6/6 the means imply).
    ("gradient", "seed", ("CG-FR", "BFGS", "OSS")),
    # population, Cancer rank column: PSO/ABC (both 97.95) print 6/5, and
    # GWO/ALO (both 98.10) print 2/3, instead of tied 5.5s and 2.5s.
    ("population", "cancer", ("PSO", "ABC", "GWO", "ALO")),
    # population, Seed rank column: PSO/GWO (both 78.10) print 6/5 instead
    # of tied 5.5s.
    ("population", "seed", ("PSO", "GWO")),
)

# Comparison families, in the order the source study presents them.
FAMILIES = ("de-variants", "gradient", "population")


@dataclass(frozen=True)
class PublishedRecord:
    """One algorithm's published row block: mean/stddev/rank per dataset.

    ``ranks`` and ``avg_rank`` are transcribed verbatim; ``avg_rank`` may
    differ from ``mean(ranks)`` where the source tables are internally
    inconsistent.
    """

    algorithm: str
    family: str
    means: tuple[float, ...]
    stddevs: tuple[float, ...]
    ranks: tuple[float, ...]
    avg_rank: float

    def __post_init__(self):
        n = len(REFERENCE_DATASETS)
        if not (len(self.means) == len(self.stddevs) == len(self.ranks) == n):
            raise ValueError(f"expected {n} values per row for {self.algorithm}")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    def mean_for(self, dataset: str) -> float:
        return self.means[REFERENCE_DATASETS.index(dataset)]


def _rec(family, algorithm, means, stddevs, ranks, avg_rank) -> PublishedRecord:
    return PublishedRecord(
        algorithm=algorithm,
        family=family,
        means=tuple(means),
        stddevs=tuple(stddevs),
        ranks=tuple(ranks),
        avg_rank=avg_rank,
    )


# Family 1: DE variants (the proposal's closest relatives).
_DE_VARIANTS = (
    _rec("de-variants", "DE",
         (92.00, 97.36, 67.81, 76.94, 70.00, 85.16),
         (5.26, 2.06, 8.21, 4.97, 11.01, 5.31),
         (4, 4, 4, 4, 2, 4), 3.67),
    _rec("de-variants", "QODE",
         (95.33, 98.10, 76.82, 79.55, 67.62, 88.39),
         (6.32, 0.99, 9.46, 4.95, 3.01, 8.76),
         (3, 3, 2, 3, 3.5, 1.5), 2.58),
    _rec("de-variants", "RDE-OP",
         (96.67, 98.82, 75.63, 80.21, 67.62, 86.77),
         (6.48, 1.67, 6.45, 5.73, 4.92, 4.42),
         (2, 1, 3, 2, 3.5, 3), 2.42),
    _rec("de-variants", "CenDE-DOBL",
         (98.67, 98.68, 78.79, 81.90, 90.95, 88.39),
         (2.81, 1.08, 8.64, 3.17, 10.15, 5.09),
         (1, 2, 1, 1, 1, 1.5), 1.33),
)

# Family 2: conventional gradient-based trainers.
_GRADIENT = (
    _rec("gradient", "GDM",
         (92.00, 92.99, 59.47, 67.98, 47.62, 76.13),
         (8.20, 7.60, 15.05, 13.03, 29.95, 9.15),
         (12, 11, 12, 13, 13, 12), 12.17),
    _rec("gradient", "GDA",
         (94.67, 95.90, 58.24, 75.91, 82.38, 80.65),
         (5.26, 2.04, 6.53, 4.52, 6.75, 5.27),
         (10, 10, 13, 9, 9.5, 10), 10.25),
    _rec("gradient", "GDMA",
         (82.67, 90.47, 60.66, 73.20, 80.00, 72.90),
         (16.98, 5.94, 13.99, 6.74, 16.47, 17.62),
         (13, 13, 11, 12, 12, 13), 12.33),
    _rec("gradient", "CG-FR",
         (95.33, 96.19, 60.86, 76.69, 86.67, 83.87),
         (4.50, 1.72, 8.29, 6.20, 9.73, 7.60),
         (7.5, 7, 10, 5, 5.5, 4), 6.50),
    _rec("gradient", "CG-PR",
         (96.00, 97.07, 65.18, 75.12, 85.24, 80.97),
         (6.44, 1.39, 8.47, 3.57, 9.90, 4.92),
         (4, 2, 8, 11, 8, 8.5), 6.92),
    _rec("gradient", "CG-PBR",
         (94.00, 96.49, 67.18, 76.04, 88.10, 82.90),
         (5.84, 2.95, 9.09, 5.06, 7.86, 6.09),
         (11, 5, 3, 7, 3.5, 6), 5.92),
    _rec("gradient", "BFGS",
         (95.33, 96.92, 65.22, 76.70, 86.67, 84.19),
         (4.50, 1.28, 7.06, 3.11, 9.73, 5.98),
         (7.5, 3, 7, 4, 5.5, 3), 5.00),
    _rec("gradient", "LM",
         (96.67, 96.04, 65.55, 76.04, 88.10, 83.55),
         (4.71, 2.51, 10.44, 4.66, 7.53, 7.04),
         (2, 9, 6, 8, 3.5, 5), 5.58),
    _rec("gradient", "OSS",
         (95.33, 96.34, 64.89, 76.58, 86.67, 80.97),
         (4.50, 2.21, 8.01, 4.30, 5.85, 8.93),
         (7.5, 6, 9, 6, 7, 8.5), 7.33),
    _rec("gradient", "RP",
         # The Cancer mean is printed with five decimals in the source table.
         (95.33, 96.05286, 65.82, 76.83, 80.48, 78.39),
         (5.49, 2.47, 5.21, 4.50, 9.38, 5.05),
         (7.5, 8, 5, 3, 11, 11), 7.58),
    _rec("gradient", "SCG",
         (96.00, 96.63, 66.97, 78.52, 82.38, 82.26),
         (8.43, 2.09, 9.60, 3.05, 9.54, 8.50),
         (4, 4, 4, 2, 9.5, 7), 5.08),
    _rec("gradient", "BR",
         (96.00, 91.81, 70.71, 75.89, 90.95, 84.52),
         (7.17, 3.82, 6.93, 5.37, 7.60, 6.94),
         (4, 12, 2, 10, 1.5, 2), 5.25),
    _rec("gradient", "CenDE-DOBL",
         (98.67, 98.68, 78.79, 81.90, 90.95, 88.39),
         (2.81, 1.08, 8.64, 3.17, 10.15, 5.09),
         (1, 1, 1, 1, 1.5, 1), 1.08),
)

# Family 3: population-based metaheuristic trainers.
_POPULATION = (
    _rec("population", "PSO",
         (96.00, 97.95, 73.36, 77.60, 78.10, 86.45),
         (5.62, 1.72, 6.28, 3.24, 11.92, 8.02),
         (5, 6, 3, 8, 6, 3), 5.17),
    _rec("population", "ABC",
         (84.67, 97.95, 70.75, 78.26, 72.38, 82.90),
         (9.45, 1.03, 6.47, 4.45, 8.03, 5.70),
         (12, 5, 7, 5, 8.5, 7), 7.42),
    _rec("population", "ICA",
         (96.67, 97.22, 72.39, 79.42, 84.76, 86.77),
         (4.71, 1.46, 11.99, 5.77, 10.24, 4.67),
         (4, 10, 5, 2, 2, 2), 4.17),
    _rec("population", "FA",
         (92.00, 97.66, 73.55, 78.90, 72.38, 85.81),
         (5.26, 1.97, 12.64, 4.35, 14.69, 6.12),
         (9, 8, 2, 4, 8.5, 4.5), 6.00),
    _rec("population", "GWO",
         (93.33, 98.10, 73.01, 67.45, 78.10, 81.94),
         (4.44, 1.39, 9.74, 2.79, 10.09, 7.93),
         (7, 2, 4, 12, 5, 10.5), 6.75),
    _rec("population", "ALO",
         (94.67, 98.10, 71.06, 78.12, 80.48, 85.48),
         (2.81, 0.99, 6.20, 5.89, 8.53, 4.37),
         (6, 3, 6, 6, 4, 6), 5.17),
    _rec("population", "DA",
         (92.67, 97.51, 70.42, 77.85, 70.48, 81.94),
         (5.84, 1.83, 7.01, 5.40, 7.03, 5.31),
         (8, 9, 9, 7, 11.5, 10.5), 9.17),
    _rec("population", "SCA",
         (90.67, 97.08, 65.50, 74.47, 71.43, 82.26),
         (7.83, 1.82, 5.96, 4.20, 8.98, 10.67),
         (10, 11, 11, 11, 10, 9), 10.33),
    _rec("population", "WOA",
         (87.33, 97.07, 62.87, 76.95, 70.48, 79.03),
         (8.58, 1.96, 6.40, 3.65, 8.92, 10.99),
         (11, 12, 12, 10, 11.5, 12), 11.42),
    _rec("population", "GOA",
         (98.00, 98.09, 70.73, 79.03, 84.29, 82.58),
         (3.22, 1.84, 6.45, 3.72, 12.10, 6.49),
         (2.5, 4, 8, 3, 3, 8), 4.75),
    _rec("population", "SSA",
         (98.00, 97.80, 69.85, 77.34, 77.62, 85.81),
         (3.22, 2.42, 7.78, 6.50, 9.27, 7.16),
         (2.5, 7, 10, 9, 7, 4.5), 6.67),
    _rec("population", "CenDE-DOBL",
         (98.67, 98.68, 78.79, 81.90, 90.95, 88.39),
         (2.81, 1.08, 8.64, 3.17, 10.15, 5.09),
         (1, 1, 1, 1, 1, 1), 1.00),
)

_ALL = _DE_VARIANTS + _GRADIENT + _POPULATION


def published_records(family: str | None = None) -> tuple[PublishedRecord, ...]:
    """All records, or only the named comparison family's, in table order."""
    if family is None:
        return _ALL
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    return tuple(r for r in _ALL if r.family == family)


def published_record(algorithm: str, family: str) -> PublishedRecord:
    """The single record for ``algorithm`` within ``family``."""
    for rec in published_records(family):
        if rec.algorithm == algorithm:
            return rec
    raise KeyError(f"no published record for {algorithm!r} in family {family!r}")


def published_means(family: str) -> dict[str, tuple[float, ...]]:
    """Mapping algorithm -> per-dataset mean accuracies for one family."""
    return {r.algorithm: r.means for r in published_records(family)}
