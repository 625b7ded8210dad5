"""Reference selection, pairwise disparity ratios, and the tau parity band.

A group's disparity on a metric is its rate divided by the reference
group's rate. The band check passes when tau <= ratio <= 1/tau, both ends
inclusive; tau = 0.8 encodes the classic 80% rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import FixedGroupAbsent, InvalidConfig, NoDefinedMetric
from .metrics import AttributeCrosstab, GroupMetrics, Metric

ALL_METRICS: tuple[Metric, ...] = (
    Metric.PPREV,
    Metric.PPR,
    Metric.FDR,
    Metric.FOR,
    Metric.FPR,
    Metric.FNR,
)


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INDETERMINATE = "indeterminate"
    REFERENCE = "reference"


class IndeterminatePolicy(str, Enum):
    TREAT_AS_FAIL = "treat_as_fail"
    TREAT_AS_PASS = "treat_as_pass"
    REPORT_ONLY = "report_only"


class ReferenceKind(str, Enum):
    MAJORITY = "majority"
    MIN_METRIC = "min_metric"
    FIXED = "fixed"


@dataclass(frozen=True)
class ReferenceStrategy:
    """How the comparison baseline is chosen for each attribute."""

    kind: ReferenceKind
    # Required for FIXED: attribute name -> group value.
    fixed_groups: dict[str, str] = field(default_factory=dict)

    @classmethod
    def majority(cls) -> "ReferenceStrategy":
        return cls(kind=ReferenceKind.MAJORITY)

    @classmethod
    def min_metric(cls) -> "ReferenceStrategy":
        return cls(kind=ReferenceKind.MIN_METRIC)

    @classmethod
    def fixed(cls, groups: dict[str, str]) -> "ReferenceStrategy":
        return cls(kind=ReferenceKind.FIXED, fixed_groups=dict(groups))


@dataclass(frozen=True)
class ParityConfig:
    """Band width, audited metric subset, and undefined-rate handling."""

    tau: float = 0.8
    metrics: tuple[Metric, ...] = ALL_METRICS
    indeterminate_policy: IndeterminatePolicy = IndeterminatePolicy.REPORT_ONLY

    def __post_init__(self):
        if not (0.0 < self.tau <= 1.0):
            raise InvalidConfig("tau must lie in (0, 1]")
        if not self.metrics:
            raise InvalidConfig("at least one metric must be selected")
        if len(set(self.metrics)) != len(self.metrics):
            raise InvalidConfig("metric list contains duplicates")


@dataclass(frozen=True)
class DisparityRow:
    """One (group, metric) comparison against its reference group.

    ``ratio`` is a finite float, ``math.inf`` (group suffers a rate the
    reference never does), or ``None`` (indeterminate: a side is
    undefined). ``direction`` says which side of 1 a defined ratio falls.
    """

    attribute: str
    group_value: str
    metric: Metric
    group_rate: float | None
    group_rate_reason: str | None
    ref_group: str
    ref_rate: float | None
    ref_rate_reason: str | None
    ratio: float | None
    direction: str | None
    verdict: Verdict


@dataclass(frozen=True)
class AttributeParitySummary:
    """Composite all-groups-pass verdicts for one attribute."""

    attribute: str
    statistical_parity: Verdict
    impact_parity: Verdict
    type1_parity: Verdict
    type2_parity: Verdict
    unsupervised: Verdict
    supervised: Verdict
    overall_for_selected_metrics: Verdict


def select_reference(
    xtab: AttributeCrosstab,
    metrics_table: list[GroupMetrics],
    strategy: ReferenceStrategy,
    metric: Metric,
) -> str:
    """Resolve the reference group value for one attribute and metric.

    Majority picks the largest group, min-metric the group with the
    smallest defined value of ``metric`` (undefined excluded), fixed the
    configured group. Ties break by ascending group value.
    """
    if strategy.kind is ReferenceKind.MAJORITY:
        # Crosstab groups are already ordered by size desc, value asc.
        return xtab.groups[0].group_value
    if strategy.kind is ReferenceKind.MIN_METRIC:
        defined = [
            (gm.value(metric), gm.group_value)
            for gm in metrics_table
            if gm.value(metric) is not None
        ]
        if not defined:
            raise NoDefinedMetric(xtab.attribute, metric.value)
        return min(defined)[1]
    configured = strategy.fixed_groups.get(xtab.attribute)
    if configured is None:
        raise InvalidConfig(
            f"fixed reference strategy has no group for attribute {xtab.attribute!r}"
        )
    if configured not in {g.group_value for g in xtab.groups}:
        raise FixedGroupAbsent(xtab.attribute, configured)
    return configured


def references_for(
    xtab: AttributeCrosstab,
    metrics_table: list[GroupMetrics],
    strategy: ReferenceStrategy,
    metrics: tuple[Metric, ...],
) -> dict[Metric, str]:
    """Reference group per metric; min-metric may differ across metrics."""
    return {
        metric: select_reference(xtab, metrics_table, strategy, metric)
        for metric in metrics
    }


def parity_test(
    ratio: float | None,
    tau: float,
    indeterminate_policy: IndeterminatePolicy = IndeterminatePolicy.REPORT_ONLY,
) -> Verdict:
    """Band check: pass when tau <= ratio <= 1/tau, inclusive both ends.

    Infinite disparity always fails; an indeterminate ratio resolves per
    the configured policy.
    """
    if ratio is None:
        return {
            IndeterminatePolicy.TREAT_AS_FAIL: Verdict.FAIL,
            IndeterminatePolicy.TREAT_AS_PASS: Verdict.PASS,
            IndeterminatePolicy.REPORT_ONLY: Verdict.INDETERMINATE,
        }[indeterminate_policy]
    if math.isinf(ratio):
        return Verdict.FAIL
    return Verdict.PASS if tau <= ratio <= 1.0 / tau else Verdict.FAIL


def _direction(ratio: float | None) -> str | None:
    if ratio is None:
        return None
    if ratio > 1.0:
        return "above"
    if ratio < 1.0:
        return "below"
    return "equal"


def compute_disparities(
    metrics_table: list[GroupMetrics],
    references: dict[Metric, str],
    config: ParityConfig,
    undefined_reasons: dict[tuple[str, Metric], str] | None = None,
) -> list[DisparityRow]:
    """One row per (group, selected metric), in table x config order.

    Ratio conventions: both rates defined with a positive reference give
    group/reference; 0 vs 0 is 1 (equally unaffected); positive vs 0 is
    infinite; an undefined side makes the ratio indeterminate. The
    reference group compares to itself with ratio exactly 1.
    """
    reasons = undefined_reasons or {}
    by_value = {gm.group_value: gm for gm in metrics_table}
    rows: list[DisparityRow] = []
    for gm in metrics_table:
        for metric in config.metrics:
            ref_group = references[metric]
            ref_metrics = by_value[ref_group]
            group_rate = gm.value(metric)
            ref_rate = ref_metrics.value(metric)

            if gm.group_value == ref_group:
                ratio: float | None = 1.0
                verdict = Verdict.REFERENCE
            elif group_rate is None or ref_rate is None:
                ratio = None
                verdict = parity_test(None, config.tau, config.indeterminate_policy)
            else:
                if ref_rate > 0.0:
                    ratio = group_rate / ref_rate
                elif group_rate == 0.0:
                    ratio = 1.0
                else:
                    ratio = math.inf
                verdict = parity_test(ratio, config.tau, config.indeterminate_policy)

            rows.append(
                DisparityRow(
                    attribute=gm.attribute,
                    group_value=gm.group_value,
                    metric=metric,
                    group_rate=group_rate,
                    group_rate_reason=reasons.get((gm.group_value, metric)),
                    ref_group=ref_group,
                    ref_rate=ref_rate,
                    ref_rate_reason=reasons.get((ref_group, metric)),
                    ratio=ratio,
                    direction=_direction(ratio),
                    verdict=verdict,
                )
            )
    return rows


def _all_pass(verdicts: list[Verdict]) -> Verdict:
    # Reference rows are the baseline itself and are excluded by callers.
    if any(v is Verdict.FAIL for v in verdicts):
        return Verdict.FAIL
    if all(v is Verdict.PASS for v in verdicts):
        return Verdict.PASS
    return Verdict.INDETERMINATE


def _conjunction(a: Verdict, b: Verdict) -> Verdict:
    if a is Verdict.FAIL or b is Verdict.FAIL:
        return Verdict.FAIL
    if a is Verdict.PASS and b is Verdict.PASS:
        return Verdict.PASS
    return Verdict.INDETERMINATE


def summarize_attribute(
    rows: list[DisparityRow], config: ParityConfig
) -> AttributeParitySummary:
    """Roll disparity rows up into composite parity verdicts.

    A composite is indeterminate when any of its constituent metrics was
    not part of the audited metric set.
    """
    if not rows:
        raise InvalidConfig("cannot summarize an empty disparity table")
    attribute = rows[0].attribute

    def composite(needed: tuple[Metric, ...]) -> Verdict:
        if not set(needed).issubset(config.metrics):
            return Verdict.INDETERMINATE
        verdicts = [
            r.verdict
            for r in rows
            if r.metric in needed and r.verdict is not Verdict.REFERENCE
        ]
        return _all_pass(verdicts)

    statistical = composite((Metric.PPR,))
    impact = composite((Metric.PPREV,))
    type1 = composite((Metric.FDR, Metric.FPR))
    type2 = composite((Metric.FOR, Metric.FNR))
    overall = _all_pass(
        [r.verdict for r in rows if r.verdict is not Verdict.REFERENCE]
    )
    return AttributeParitySummary(
        attribute=attribute,
        statistical_parity=statistical,
        impact_parity=impact,
        type1_parity=type1,
        type2_parity=type2,
        unsupervised=_conjunction(statistical, impact),
        supervised=_conjunction(type1, type2),
        overall_for_selected_metrics=overall,
    )
