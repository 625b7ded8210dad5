"""Decision thresholding, per-attribute crosstabs, and group rates.

Counts are exact integers and are the source of truth; rates are derived
in double precision. A rate whose denominator is zero is ``None``
("undefined"), never 0.0 and never an exception: reporting zero would
fabricate a favorable rate for the group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidConfig, PolicyDatasetMismatch, UnknownAttribute
from .ingest import Dataset


class Metric(str, Enum):
    """The six group metrics that participate in disparity comparison."""

    PPREV = "PPrev"
    PPR = "PPR"
    FDR = "FDR"
    FOR = "FOR"
    FPR = "FPR"
    FNR = "FNR"

    @classmethod
    def parse(cls, name: str) -> "Metric":
        for metric in cls:
            if metric.value.lower() == name.strip().lower():
                return metric
        raise InvalidConfig(f"unknown metric {name!r}; expected one of "
                            + ", ".join(m.value for m in cls))


class TieMode(str, Enum):
    # exact_k keeps audits reproducible: exactly k entities are flagged,
    # ties broken by ascending entity id. include_all_ties follows the
    # literal "score >= kth score" rule and may flag more than k.
    EXACT_K = "exact_k"
    INCLUDE_ALL_TIES = "include_all_ties"


class PolicyKind(str, Enum):
    PRE_BINARIZED = "pre_binarized"
    TOP_K = "top_k"
    TOP_PERCENT = "top_percent"
    SCORE_CUTOFF = "score_cutoff"


@dataclass(frozen=True)
class ThresholdPolicy:
    """How scores become binary decisions."""

    kind: PolicyKind
    k: int | None = None
    p: float | None = None
    cutoff: float | None = None
    tie_mode: TieMode = TieMode.EXACT_K

    def __post_init__(self):
        if self.kind is PolicyKind.TOP_K:
            if self.k is None or self.k < 1:
                raise InvalidConfig("top-k policy requires k >= 1")
        elif self.kind is PolicyKind.TOP_PERCENT:
            if self.p is None or not (0.0 < self.p <= 1.0):
                raise InvalidConfig("top-percent policy requires p in (0, 1]")
        elif self.kind is PolicyKind.SCORE_CUTOFF:
            if self.cutoff is None or not math.isfinite(self.cutoff):
                raise InvalidConfig("score-cutoff policy requires a finite cutoff")

    @classmethod
    def pre_binarized(cls) -> "ThresholdPolicy":
        return cls(kind=PolicyKind.PRE_BINARIZED)

    @classmethod
    def top_k(cls, k: int, tie_mode: TieMode = TieMode.EXACT_K) -> "ThresholdPolicy":
        return cls(kind=PolicyKind.TOP_K, k=k, tie_mode=tie_mode)

    @classmethod
    def top_percent(cls, p: float, tie_mode: TieMode = TieMode.EXACT_K) -> "ThresholdPolicy":
        return cls(kind=PolicyKind.TOP_PERCENT, p=p, tie_mode=tie_mode)

    @classmethod
    def score_cutoff(cls, cutoff: float) -> "ThresholdPolicy":
        return cls(kind=PolicyKind.SCORE_CUTOFF, cutoff=cutoff)


@dataclass(frozen=True)
class BinarizationResult:
    """Per-entity decisions aligned to dataset row order."""

    decisions: tuple[int, ...]
    num_positive: int
    cutoff_score: float | None = None


@dataclass(frozen=True)
class GroupCounts:
    """Confusion and population counts for one attribute value."""

    attribute: str
    group_value: str
    size: int
    pp: int
    pn: int
    tp: int
    fp: int
    tn: int
    fn: int
    lp: int
    ln: int


@dataclass(frozen=True)
class AttributeCrosstab:
    """All groups of one attribute, ordered by size desc then value asc."""

    attribute: str
    groups: tuple[GroupCounts, ...]
    total_predicted_positive: int


@dataclass(frozen=True)
class GroupMetrics:
    """The seven group rates; ``None`` marks an undefined value."""

    attribute: str
    group_value: str
    prev: float | None
    pprev: float | None
    ppr: float | None
    fdr: float | None
    for_: float | None
    fpr: float | None
    fnr: float | None

    def value(self, metric: Metric) -> float | None:
        return {
            Metric.PPREV: self.pprev,
            Metric.PPR: self.ppr,
            Metric.FDR: self.fdr,
            Metric.FOR: self.for_,
            Metric.FPR: self.fpr,
            Metric.FNR: self.fnr,
        }[metric]


def _top_percent_k(p: float, n: int) -> int:
    # ceil(p*n) with a guard against float products landing a hair above
    # an integer (e.g. 0.07 * 100 == 7.000000000000001).
    k = math.ceil(p * n - 1e-9)
    return max(1, min(n, k))


def binarize(dataset: Dataset, policy: ThresholdPolicy) -> BinarizationResult:
    """Apply a threshold policy; deterministic for identical inputs.

    Top-k selection orders rows by score descending then entity id
    ascending. ``exact_k`` flags exactly min(k, n) rows; k > n clamps.
    ``include_all_ties`` additionally flags every row tied with the k-th
    score. Cutoff selection flags score >= cutoff (boundary inclusive).
    """
    records = dataset.records
    n = len(records)

    if policy.kind is PolicyKind.PRE_BINARIZED:
        if dataset.schema.decision_column is None:
            raise PolicyDatasetMismatch("pre-binarized policy needs a decision column")
        decisions = tuple(r.decision if r.decision is not None else 0 for r in records)
        return BinarizationResult(decisions=decisions, num_positive=sum(decisions))

    if dataset.schema.score_column is None:
        raise PolicyDatasetMismatch(f"{policy.kind.value} policy needs a score column")
    scores = [r.score for r in records]
    if any(s is None for s in scores):
        raise PolicyDatasetMismatch("every row needs a score for score-based policies")

    if policy.kind is PolicyKind.SCORE_CUTOFF:
        decisions = tuple(1 if s >= policy.cutoff else 0 for s in scores)
        return BinarizationResult(
            decisions=decisions, num_positive=sum(decisions), cutoff_score=policy.cutoff
        )

    if policy.kind is PolicyKind.TOP_K:
        k = min(policy.k, n)
    else:
        k = _top_percent_k(policy.p, n)

    order = sorted(range(n), key=lambda i: (-scores[i], records[i].entity_id))
    s_k = scores[order[k - 1]]
    positive = set(order[:k])
    if policy.tie_mode is TieMode.INCLUDE_ALL_TIES:
        positive.update(i for i in range(n) if scores[i] == s_k)
    decisions = tuple(1 if i in positive else 0 for i in range(n))
    return BinarizationResult(
        decisions=decisions, num_positive=len(positive), cutoff_score=s_k
    )


def crosstab(
    dataset: Dataset, decisions: BinarizationResult, attribute: str
) -> AttributeCrosstab:
    """Partition the dataset by one attribute and count every confusion cell."""
    if attribute not in dataset.schema.attribute_columns:
        raise UnknownAttribute(attribute)
    if len(decisions.decisions) != dataset.row_count:
        raise PolicyDatasetMismatch("decision vector is not aligned to the dataset")

    cells: dict[str, list[int]] = {}  # value -> [tp, fp, tn, fn]
    for record, decision in zip(dataset.records, decisions.decisions):
        cell = cells.setdefault(record.attributes[attribute], [0, 0, 0, 0])
        if decision == 1:
            if record.label == 1:
                cell[0] += 1
            else:
                cell[1] += 1
        else:
            if record.label == 0:
                cell[2] += 1
            else:
                cell[3] += 1

    groups = []
    for value, (tp, fp, tn, fn) in cells.items():
        groups.append(
            GroupCounts(
                attribute=attribute,
                group_value=value,
                size=tp + fp + tn + fn,
                pp=tp + fp,
                pn=tn + fn,
                tp=tp,
                fp=fp,
                tn=tn,
                fn=fn,
                lp=tp + fn,
                ln=tn + fp,
            )
        )
    groups.sort(key=lambda g: (-g.size, g.group_value))
    return AttributeCrosstab(
        attribute=attribute,
        groups=tuple(groups),
        total_predicted_positive=sum(g.pp for g in groups),
    )


def _ratio(numerator: int, denominator: int) -> float | None:
    return numerator / denominator if denominator > 0 else None


def compute_group_metrics(counts: GroupCounts, k_total: int) -> GroupMetrics:
    """Derive the seven group rates from integer counts.

    ``k_total`` is the crosstab-wide number of positive decisions (the
    PPR denominator shared by all groups of the attribute).
    """
    return GroupMetrics(
        attribute=counts.attribute,
        group_value=counts.group_value,
        prev=_ratio(counts.lp, counts.size),
        pprev=_ratio(counts.pp, counts.size),
        ppr=_ratio(counts.pp, k_total),
        fdr=_ratio(counts.fp, counts.pp),
        for_=_ratio(counts.fn, counts.pn),
        fpr=_ratio(counts.fp, counts.ln),
        fnr=_ratio(counts.fn, counts.lp),
    )


def group_metrics_table(xtab: AttributeCrosstab) -> list[GroupMetrics]:
    """Group metrics for every group of a crosstab, in crosstab order."""
    return [
        compute_group_metrics(g, xtab.total_predicted_positive) for g in xtab.groups
    ]


def undefined_reason(counts: GroupCounts, k_total: int, metric: Metric) -> str | None:
    """Human-readable reason a metric is undefined, or None if defined."""
    denominators = {
        Metric.PPREV: ("group size", counts.size),
        Metric.PPR: ("K", k_total),
        Metric.FDR: ("PP", counts.pp),
        Metric.FOR: ("PN", counts.pn),
        Metric.FPR: ("LN", counts.ln),
        Metric.FNR: ("LP", counts.lp),
    }
    name, value = denominators[metric]
    if value == 0:
        return f"denominator {name}=0"
    return None
