"""End-to-end audit orchestration over a parsed dataset.

The CLI and the HTTP service both call :func:`run_audit` and serialize
the result with the shared renderers, so the two surfaces cannot drift.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._version import __version__
from .disparity import (
    AttributeParitySummary,
    DisparityRow,
    ParityConfig,
    ReferenceStrategy,
    Verdict,
    compute_disparities,
    references_for,
    summarize_attribute,
)
from .ingest import Dataset, Diagnostic, validate
from .metrics import (
    AttributeCrosstab,
    BinarizationResult,
    GroupMetrics,
    PolicyKind,
    ThresholdPolicy,
    binarize,
    crosstab,
    group_metrics_table,
    undefined_reason,
)


@dataclass(frozen=True)
class AuditConfig:
    """Everything an audit run depends on besides the dataset itself."""

    threshold: ThresholdPolicy
    reference: ReferenceStrategy
    parity: ParityConfig = field(default_factory=ParityConfig)
    # Echoed into the report when the metric set came from the interview.
    tree_path: tuple[str, ...] | None = None
    tree_rationale: str | None = None


@dataclass(frozen=True)
class AttributeAudit:
    """All audit outputs for one protected attribute."""

    attribute: str
    crosstab: AttributeCrosstab
    metrics: tuple[GroupMetrics, ...]
    disparities: tuple[DisparityRow, ...]
    summary: AttributeParitySummary


@dataclass(frozen=True)
class AuditReport:
    """Complete audit result; counts are the persisted source of truth."""

    dataset_row_count: int
    dataset_hash: str
    config: AuditConfig
    cutoff_score: float | None
    num_positive: int
    attributes: tuple[AttributeAudit, ...]
    diagnostics: tuple[Diagnostic, ...]
    overall_verdict: Verdict
    tool_version: str = __version__


def _overall_verdict(attributes: tuple[AttributeAudit, ...]) -> Verdict:
    verdicts = [
        row.verdict
        for attr in attributes
        for row in attr.disparities
        if row.verdict is not Verdict.REFERENCE
    ]
    if any(v is Verdict.FAIL for v in verdicts):
        return Verdict.FAIL
    if all(v is Verdict.PASS for v in verdicts):
        return Verdict.PASS
    return Verdict.INDETERMINATE


def run_audit(dataset: Dataset, config: AuditConfig) -> AuditReport:
    """Binarize, crosstab, rate, compare and summarize every attribute."""
    diagnostics = list(validate(dataset))
    policy = config.threshold
    if (
        policy.kind is PolicyKind.TOP_K
        and policy.k is not None
        and policy.k > dataset.row_count
    ):
        diagnostics.append(
            Diagnostic(
                severity="warning",
                code="KClampedToRows",
                message=(
                    f"top-k of {policy.k} exceeds the {dataset.row_count} rows; "
                    "every row is decided positive"
                ),
            )
        )

    result: BinarizationResult = binarize(dataset, policy)

    attribute_audits: list[AttributeAudit] = []
    for attribute in dataset.schema.attribute_columns:
        xtab = crosstab(dataset, result, attribute)
        table = group_metrics_table(xtab)
        references = references_for(xtab, table, config.reference, config.parity.metrics)
        reasons = {
            (g.group_value, metric): reason
            for g in xtab.groups
            for metric in config.parity.metrics
            if (reason := undefined_reason(g, xtab.total_predicted_positive, metric))
        }
        rows = compute_disparities(table, references, config.parity, reasons)
        summary = summarize_attribute(rows, config.parity)
        attribute_audits.append(
            AttributeAudit(
                attribute=attribute,
                crosstab=xtab,
                metrics=tuple(table),
                disparities=tuple(rows),
                summary=summary,
            )
        )

    attributes = tuple(attribute_audits)
    return AuditReport(
        dataset_row_count=dataset.row_count,
        dataset_hash=dataset.content_hash(),
        config=config,
        cutoff_score=result.cutoff_score,
        num_positive=result.num_positive,
        attributes=attributes,
        diagnostics=tuple(diagnostics),
        overall_verdict=_overall_verdict(attributes),
    )
