"""Delimited-text ingestion: schema binding, parsing, validation.

A dataset is parsed against an explicit :class:`DatasetSchema`; column
roles are never inferred from names. Parsed datasets are immutable and
safe to share across threads.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
from dataclasses import dataclass, field

from .errors import (
    BadLabelValue,
    BadScoreValue,
    DuplicateEntityId,
    EmptyDataset,
    InvalidConfig,
    MissingColumn,
    TooManyGroups,
)

# Categorical cells left empty map to this group value instead of the row
# being dropped; dropping would silently skew every count downstream.
UNKNOWN_GROUP = "UNKNOWN"

DEFAULT_TRUTHY = frozenset({"1", "true", "t", "yes"})
DEFAULT_FALSY = frozenset({"0", "false", "f", "no"})


@dataclass(frozen=True)
class ParseOptions:
    """Knobs for :func:`parse_csv`; defaults cover common CSV exports."""

    delimiter: str = ","
    truthy: frozenset[str] = DEFAULT_TRUTHY
    falsy: frozenset[str] = DEFAULT_FALSY
    # Attributes with more distinct values than this are almost certainly
    # continuous; the engine refuses them instead of producing a useless
    # one-group-per-row audit.
    distinct_value_cap: int = 50


@dataclass(frozen=True)
class DatasetSchema:
    """Column bindings for score, label, decision, id and attributes."""

    label_column: str
    attribute_columns: tuple[str, ...]
    score_column: str | None = None
    decision_column: str | None = None
    entity_id_column: str | None = None

    def __post_init__(self):
        if not self.attribute_columns:
            raise InvalidConfig("at least one attribute column is required")
        if self.score_column is None and self.decision_column is None:
            raise InvalidConfig("schema needs a score column or a decision column")
        reserved = {
            c
            for c in (
                self.score_column,
                self.label_column,
                self.decision_column,
                self.entity_id_column,
            )
            if c is not None
        }
        overlap = reserved.intersection(self.attribute_columns)
        if overlap:
            raise InvalidConfig(
                f"attribute columns overlap score/label/decision/id columns: {sorted(overlap)}"
            )
        if len(set(self.attribute_columns)) != len(self.attribute_columns):
            raise InvalidConfig("attribute columns contain duplicates")


@dataclass(frozen=True)
class EntityRecord:
    """One scored/labeled entity with its categorical attribute values."""

    entity_id: str
    label: int
    attributes: dict[str, str]
    score: float | None = None
    decision: int | None = None


@dataclass(frozen=True)
class Dataset:
    """Immutable parsed dataset; ``records`` preserve input row order."""

    schema: DatasetSchema
    records: tuple[EntityRecord, ...]

    @property
    def row_count(self) -> int:
        return len(self.records)

    def content_hash(self) -> str:
        """SHA-256 over the canonical serialization (timestamp-free)."""
        return "sha256:" + hashlib.sha256(serialize_csv(self)).hexdigest()


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding; ``severity`` is ``error`` or ``warning``."""

    severity: str
    code: str
    message: str
    attribute: str | None = None
    group: str | None = None
    metric: str | None = None


def _parse_binary(cell: str, options: ParseOptions) -> int | None:
    token = cell.strip().lower()
    if token in options.truthy:
        return 1
    if token in options.falsy:
        return 0
    return None


def parse_csv(
    raw_bytes: bytes, schema: DatasetSchema, options: ParseOptions | None = None
) -> Dataset:
    """Parse UTF-8 delimited text with a header row into a :class:`Dataset`.

    Raises :class:`MissingColumn`, :class:`BadLabelValue`,
    :class:`BadScoreValue`, :class:`DuplicateEntityId`,
    :class:`EmptyDataset` or :class:`TooManyGroups`. Row numbers in errors
    are 1-based data-row ordinals (the header is row 0).
    """
    options = options or ParseOptions()
    text = raw_bytes.decode("utf-8-sig")
    reader = csv.reader(io.StringIO(text, newline=""), delimiter=options.delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyDataset("input is empty") from None

    col_index: dict[str, int] = {}
    for i, name in enumerate(header):
        col_index.setdefault(name, i)
    needed = [schema.label_column, *schema.attribute_columns]
    for optional in (schema.score_column, schema.decision_column, schema.entity_id_column):
        if optional is not None:
            needed.append(optional)
    for name in needed:
        if name not in col_index:
            raise MissingColumn(name)

    def cell(row: list[str], name: str) -> str:
        idx = col_index[name]
        return row[idx] if idx < len(row) else ""

    records: list[EntityRecord] = []
    seen_ids: set[str] = set()
    for ordinal, row in enumerate(reader):
        if not row or all(v == "" for v in row):
            continue
        rownum = len(records) + 1

        if schema.entity_id_column is not None:
            entity_id = cell(row, schema.entity_id_column).strip()
        else:
            entity_id = str(ordinal)
        if entity_id in seen_ids:
            raise DuplicateEntityId(entity_id)
        seen_ids.add(entity_id)

        label = _parse_binary(cell(row, schema.label_column), options)
        if label is None:
            raise BadLabelValue(rownum, cell(row, schema.label_column))

        decision: int | None = None
        if schema.decision_column is not None:
            decision = _parse_binary(cell(row, schema.decision_column), options)
            if decision is None:
                raise BadLabelValue(rownum, cell(row, schema.decision_column))

        score: float | None = None
        if schema.score_column is not None:
            raw_score = cell(row, schema.score_column).strip()
            try:
                score = float(raw_score)
            except ValueError:
                raise BadScoreValue(rownum, raw_score) from None
            if not math.isfinite(score):
                raise BadScoreValue(rownum, raw_score)

        attributes = {}
        for attr in schema.attribute_columns:
            value = cell(row, attr).strip()
            attributes[attr] = value if value else UNKNOWN_GROUP

        records.append(
            EntityRecord(
                entity_id=entity_id,
                label=label,
                attributes=attributes,
                score=score,
                decision=decision,
            )
        )

    if not records:
        raise EmptyDataset()

    for attr in schema.attribute_columns:
        distinct = len({r.attributes[attr] for r in records})
        if distinct > options.distinct_value_cap:
            raise TooManyGroups(attr, distinct, options.distinct_value_cap)

    return Dataset(schema=schema, records=tuple(records))


def serialize_csv(dataset: Dataset, delimiter: str = ",") -> bytes:
    """Canonical CSV serialization; re-parsing yields an equal Dataset.

    Column order is pinned: id, score, decision, label, then attributes in
    schema order (absent roles are skipped). Floats use shortest
    round-trip formatting, so parse -> serialize -> parse is lossless.
    """
    schema = dataset.schema
    columns: list[str] = []
    if schema.entity_id_column is not None:
        columns.append(schema.entity_id_column)
    if schema.score_column is not None:
        columns.append(schema.score_column)
    if schema.decision_column is not None:
        columns.append(schema.decision_column)
    columns.append(schema.label_column)
    columns.extend(schema.attribute_columns)

    buf = io.StringIO(newline="")
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow(columns)
    for record in dataset.records:
        row: list[str] = []
        if schema.entity_id_column is not None:
            row.append(record.entity_id)
        if schema.score_column is not None:
            row.append(repr(record.score) if record.score is not None else "")
        if schema.decision_column is not None:
            row.append(str(record.decision) if record.decision is not None else "")
        row.append(str(record.label))
        row.extend(record.attributes[a] for a in schema.attribute_columns)
        writer.writerow(row)
    return buf.getvalue().encode("utf-8")


def validate(dataset: Dataset, min_group_size: int = 1) -> list[Diagnostic]:
    """Report conditions that will degrade or block an audit.

    Warnings flag single-valued attributes, undersized groups, and groups
    whose label mix forces an undefined FPR or FNR. Errors flag an empty
    dataset or a schema with no usable decision source.
    """
    diagnostics: list[Diagnostic] = []
    if dataset.row_count == 0:
        diagnostics.append(
            Diagnostic("error", "EmptyDataset", "dataset has zero rows")
        )
        return diagnostics
    schema = dataset.schema
    if schema.score_column is None and schema.decision_column is None:
        diagnostics.append(
            Diagnostic(
                "error",
                "NoDecisionSource",
                "schema has neither a score column nor a decision column",
            )
        )

    for attr in schema.attribute_columns:
        groups: dict[str, list[EntityRecord]] = {}
        for record in dataset.records:
            groups.setdefault(record.attributes[attr], []).append(record)

        if len(groups) == 1:
            only = next(iter(groups))
            diagnostics.append(
                Diagnostic(
                    "warning",
                    "SingleValuedAttribute",
                    f"attribute {attr!r} has the single value {only!r}; no disparity computable",
                    attribute=attr,
                )
            )

        for value in sorted(groups):
            members = groups[value]
            if len(members) < min_group_size:
                diagnostics.append(
                    Diagnostic(
                        "warning",
                        "SmallGroup",
                        f"group {attr}={value} has {len(members)} rows (minimum {min_group_size})",
                        attribute=attr,
                        group=value,
                    )
                )
            lp = sum(r.label for r in members)
            ln = len(members) - lp
            if lp == 0:
                diagnostics.append(
                    Diagnostic(
                        "warning",
                        "UndefinedMetricAhead",
                        f"group {attr}={value} has no positive labels; FNR will be undefined",
                        attribute=attr,
                        group=value,
                        metric="FNR",
                    )
                )
            if ln == 0:
                diagnostics.append(
                    Diagnostic(
                        "warning",
                        "UndefinedMetricAhead",
                        f"group {attr}={value} has no negative labels; FPR will be undefined",
                        attribute=attr,
                        group=value,
                        metric="FPR",
                    )
                )
    return diagnostics
