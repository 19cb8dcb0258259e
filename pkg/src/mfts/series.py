"""Time-series container, CSV ingest, and summary statistics."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["TimeSeries", "SummaryStats", "load_series", "write_series", "summarize"]

SOURCES = ("file", "synthetic", "surrogate", "bootstrap")


@dataclass(frozen=True)
class TimeSeries:
    """A validated 1-D float64 series.

    values is stored read-only so downstream stages can share it without
    copying. source records where the data came from; seed is kept for
    generated data so derived products stay reproducible.
    """

    values: np.ndarray
    name: str = "series"
    source: str = "file"
    seed: int | None = None

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64, copy=True)
        if arr.ndim != 1:
            raise ValueError(f"values must be 1-D, got shape {arr.shape}")
        if arr.size < 2:
            raise ValueError(f"series needs at least 2 samples, got {arr.size}")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0])
            raise ValueError(f"non-finite value at index {bad}")
        if self.source not in SOURCES:
            raise ValueError(f"source must be one of {SOURCES}, got {self.source!r}")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class SummaryStats:
    n: int
    mean: float
    variance: float
    minimum: float
    maximum: float


def summarize(series: TimeSeries) -> SummaryStats:
    """Basic moments in one sweep. Variance uses denominator n-1.

    Sums are taken of values shifted by the first element, which keeps the
    sum-of-squares form accurate enough to match a naive two-pass variance
    to about 1e-12 relative.
    """
    x = series.values
    n = x.size
    d = x - x[0]
    s1 = float(d.sum())
    s2 = float((d * d).sum())
    variance = (s2 - s1 * s1 / n) / (n - 1)
    return SummaryStats(
        n=n,
        mean=float(x[0] + s1 / n),
        variance=max(variance, 0.0),
        minimum=float(x.min()),
        maximum=float(x.max()),
    )


def load_series(
    path: str,
    column: int = 0,
    delimiter: str = ",",
    has_header: bool = False,
    name: str | None = None,
) -> TimeSeries:
    """Read one column of a delimited text file into a TimeSeries.

    Blank lines and lines starting with '#' are skipped. Error messages
    carry 1-based file line numbers and the offending column index.
    """
    if column < 0:
        raise ValueError(f"column must be non-negative, got {column}")
    values: list[float] = []
    with open(path, "r", newline="") as fh:
        reader = csv.reader(fh, delimiter=delimiter)
        header_skipped = not has_header
        for row in reader:
            line = reader.line_num
            if not row or all(cell.strip() == "" for cell in row):
                continue
            if row[0].lstrip().startswith("#"):
                continue
            if not header_skipped:
                header_skipped = True
                continue
            if column >= len(row):
                raise ValueError(
                    f"column {column} out of range at line {line}: "
                    f"row has {len(row)} columns"
                )
            cell = row[column].strip()
            try:
                v = float(cell)
            except ValueError:
                raise ValueError(
                    f"non-numeric cell {cell!r} at line {line}, column {column}"
                ) from None
            if not math.isfinite(v):
                raise ValueError(f"non-finite value {cell!r} at line {line}, column {column}")
            values.append(v)
    if len(values) < 2:
        raise ValueError(f"{path}: found {len(values)} samples, need at least 2")
    if name is None:
        name = path.rsplit("/", 1)[-1]
    return TimeSeries(values=np.asarray(values), name=name, source="file")


def write_series(series: TimeSeries, path: str) -> None:
    """Write a series as one value per line with a '#' metadata header.

    Values are written with repr(float), which round-trips float64 exactly,
    so load_series(write_series(s)) reproduces s.values bit for bit.
    """
    with open(path, "w", newline="") as fh:
        fh.write(f"# name={series.name}\n")
        fh.write(f"# source={series.source}\n")
        if series.seed is not None:
            fh.write(f"# seed={series.seed}\n")
        for v in series.values:
            fh.write(repr(float(v)))
            fh.write("\n")
