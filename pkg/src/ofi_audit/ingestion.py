"""CSV ingestion of (group, label, prediction) records and aggregation
into per-group confusion matrices.

Inputs are delimiter-separated text with a header row; labels and
predictions must be the literal strings "0" or "1" after trimming. Values
outside the binary domain are hard errors, never coerced, and records
with a blank group are rejected rather than pooled.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from operator import index
from typing import Iterable

from .metrics import BinaryConfusion


class SchemaError(ValueError):
    """A configured column is missing from the header."""


class RowValueError(ValueError):
    """A data row holds a value outside its domain."""

    def __init__(self, row: int, column: str, problem: str):
        self.row = row
        self.column = column
        super().__init__(f"row {row}, column {column!r}: {problem}")


class EmptyDatasetError(ValueError):
    """No data rows were found."""


@dataclass(frozen=True, slots=True)
class ColumnSchema:
    """Names of the group, label and prediction columns in the input."""

    group: str = "group"
    label: str = "label"
    prediction: str = "prediction"


@dataclass(frozen=True, slots=True)
class PredictionRecord:
    """One individual's group, ground label and model prediction."""

    group: str
    label: int
    prediction: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "group", self.group.strip())
        if not self.group:
            raise ValueError("group identifier is empty")
        for name in ("label", "prediction"):
            value = index(getattr(self, name))
            if value not in (0, 1):
                raise ValueError(f"{name} must be 0 or 1, got {value}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class GroupTable:
    """Per-group confusion matrices plus their cell-wise total."""

    groups: dict[str, BinaryConfusion]
    total: BinaryConfusion


def parse_records(
    source: Iterable[str],
    schema: ColumnSchema | None = None,
    delimiter: str = ",",
) -> list[PredictionRecord]:
    """Parse delimiter-separated text with a header row into records.

    ``source`` is any iterable of text lines (an open text file works).
    Row order is preserved. Raises SchemaError when a configured column is
    missing, RowValueError for a non-binary value, a missing cell or a
    blank group (carrying the 1-based data row number), and
    EmptyDatasetError when no data rows follow the header.
    """
    schema = schema or ColumnSchema()
    reader = csv.reader(source, delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("input is empty: no header row") from None

    positions: dict[str, int] = {}
    for pos, name in enumerate(header):
        positions.setdefault(name.strip(), pos)
    for column in (schema.group, schema.label, schema.prediction):
        if column not in positions:
            raise SchemaError(
                f"column {column!r} not found in header {[h.strip() for h in header]}"
            )

    records = []
    row_num = 0
    for row in reader:
        if not row:
            continue
        row_num += 1
        group = _cell(row, positions[schema.group], schema.group, row_num).strip()
        if not group:
            raise RowValueError(row_num, schema.group, "group identifier is empty")
        label = _binary(_cell(row, positions[schema.label], schema.label, row_num),
                        schema.label, row_num)
        prediction = _binary(_cell(row, positions[schema.prediction], schema.prediction, row_num),
                             schema.prediction, row_num)
        records.append(PredictionRecord(group, label, prediction))

    if not records:
        raise EmptyDatasetError("no data rows after the header")
    return records


def _cell(row: list[str], pos: int, column: str, row_num: int) -> str:
    if pos >= len(row):
        raise RowValueError(row_num, column, "missing value (short row)")
    return row[pos]


def _binary(raw: str, column: str, row_num: int) -> int:
    text = raw.strip()
    if text == "0":
        return 0
    if text == "1":
        return 1
    raise RowValueError(row_num, column, f"expected 0 or 1, got {raw!r}")


def flip_polarity(records: list[PredictionRecord]) -> list[PredictionRecord]:
    """Complement every record's label and prediction (0 <-> 1).

    Use this when the beneficial outcome is the negative label, e.g. to
    make a recidivism dataset's positive prediction mean "not a
    recidivist". Applying it twice restores the input.
    """
    return [
        PredictionRecord(r.group, 1 - r.label, 1 - r.prediction) for r in records
    ]


def aggregate(records: list[PredictionRecord]) -> GroupTable:
    """Aggregate records into one confusion matrix per group.

    Each record lands in tp/fn/fp/tn according to its (label, prediction)
    pair. The result is independent of record order; group identifiers
    compare case-sensitively after trimming (done at record construction).
    """
    if not records:
        raise EmptyDatasetError("cannot aggregate an empty record list")
    cells: dict[str, list[int]] = {}
    for r in records:
        quad = cells.setdefault(r.group, [0, 0, 0, 0])
        if r.label == 1 and r.prediction == 1:
            quad[0] += 1
        elif r.label == 1:
            quad[1] += 1
        elif r.prediction == 1:
            quad[2] += 1
        else:
            quad[3] += 1
    groups = {name: BinaryConfusion(*cells[name]) for name in sorted(cells)}
    total = BinaryConfusion(
        sum(q[0] for q in cells.values()),
        sum(q[1] for q in cells.values()),
        sum(q[2] for q in cells.values()),
        sum(q[3] for q in cells.values()),
    )
    return GroupTable(groups=groups, total=total)
