"""Report rendering: canonical JSON, Markdown, flat CSV, chart series.

The JSON layout is the cross-surface contract (CLI, HTTP service, web
console) and is versioned via ``report_version``; golden tests pin it.
Serialization is deterministic: sorted keys, fixed indentation, floats in
shortest round-trip form. The optional timestamp is excluded from the
report content hash.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass

from .audit import AuditReport
from .disparity import DisparityRow, ReferenceKind, Verdict
from .metrics import GroupCounts, Metric, PolicyKind

REPORT_VERSION = "1"

_VERDICT_COLOR = {
    Verdict.PASS: "green",
    Verdict.FAIL: "red",
    Verdict.INDETERMINATE: "gray",
    Verdict.REFERENCE: "reference",
}

CSV_COLUMNS = ("attribute", "group", "metric", "rate", "ref_group", "ref_rate", "ratio", "verdict")


@dataclass(frozen=True)
class ChartBar:
    group_value: str
    value: float | None
    color: str


@dataclass(frozen=True)
class ChartSeries:
    """Bars for one (attribute, metric), colored by parity verdict."""

    attribute: str
    metric: Metric
    bars: tuple[ChartBar, ...]


def canonical_json_bytes(payload: dict) -> bytes:
    """The one JSON encoding used everywhere a report crosses a boundary."""
    return (json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode(
        "utf-8"
    )


def _ratio_fields(row: DisparityRow) -> tuple[float | None, str]:
    if row.ratio is None:
        return None, "indeterminate"
    if math.isinf(row.ratio):
        return None, "infinite"
    return row.ratio, "finite"


def _counts_dict(g: GroupCounts) -> dict:
    return {
        "size": g.size,
        "pp": g.pp,
        "pn": g.pn,
        "tp": g.tp,
        "fp": g.fp,
        "tn": g.tn,
        "fn": g.fn,
        "lp": g.lp,
        "ln": g.ln,
    }


def report_to_dict(report: AuditReport) -> dict:
    """Plain-data form of a report, without timestamp or content hash."""
    config = report.config
    threshold = {
        "kind": config.threshold.kind.value,
        "k": config.threshold.k,
        "p": config.threshold.p,
        "cutoff": config.threshold.cutoff,
        "tie_mode": config.threshold.tie_mode.value,
    }
    reference = {
        "kind": config.reference.kind.value,
        "fixed_groups": dict(sorted(config.reference.fixed_groups.items())),
    }

    attributes = []
    for attr in report.attributes:
        groups = []
        for counts, gm in zip(attr.crosstab.groups, attr.metrics):
            rate_fields = {
                "prev": (gm.prev, "group size"),
                "pprev": (gm.pprev, "group size"),
                "ppr": (gm.ppr, "K"),
                "fdr": (gm.fdr, "PP"),
                "for": (gm.for_, "PN"),
                "fpr": (gm.fpr, "LN"),
                "fnr": (gm.fnr, "LP"),
            }
            metrics_payload = {
                name: {
                    "value": value,
                    "reason": f"denominator {denom}=0" if value is None else None,
                }
                for name, (value, denom) in rate_fields.items()
            }
            groups.append(
                {
                    "group_value": counts.group_value,
                    "counts": _counts_dict(counts),
                    "metrics": metrics_payload,
                }
            )

        disparities = []
        for row in attr.disparities:
            ratio, ratio_kind = _ratio_fields(row)
            disparities.append(
                {
                    "attribute": row.attribute,
                    "group_value": row.group_value,
                    "metric": row.metric.value,
                    "group_rate": row.group_rate,
                    "group_rate_reason": row.group_rate_reason,
                    "ref_group": row.ref_group,
                    "ref_rate": row.ref_rate,
                    "ref_rate_reason": row.ref_rate_reason,
                    "ratio": ratio,
                    "ratio_kind": ratio_kind,
                    "direction": row.direction,
                    "verdict": row.verdict.value,
                }
            )

        summary = attr.summary
        attributes.append(
            {
                "attribute": attr.attribute,
                "k_total": attr.crosstab.total_predicted_positive,
                "groups": groups,
                "disparities": disparities,
                "summary": {
                    "statistical_parity": summary.statistical_parity.value,
                    "impact_parity": summary.impact_parity.value,
                    "type1_parity": summary.type1_parity.value,
                    "type2_parity": summary.type2_parity.value,
                    "unsupervised": summary.unsupervised.value,
                    "supervised": summary.supervised.value,
                    "overall_for_selected_metrics": summary.overall_for_selected_metrics.value,
                },
            }
        )

    return {
        "report_version": REPORT_VERSION,
        "dataset": {
            "row_count": report.dataset_row_count,
            "content_hash": report.dataset_hash,
        },
        "config": {
            "threshold": threshold,
            "reference": reference,
            "tau": config.parity.tau,
            "metrics": [m.value for m in config.parity.metrics],
            "indeterminate_policy": config.parity.indeterminate_policy.value,
            "tree_path": list(config.tree_path) if config.tree_path is not None else None,
            "tree_rationale": config.tree_rationale,
        },
        "binarization": {
            "cutoff_score": report.cutoff_score,
            "num_positive": report.num_positive,
        },
        "attributes": attributes,
        "diagnostics": [
            {
                "severity": d.severity,
                "code": d.code,
                "message": d.message,
                "attribute": d.attribute,
                "group": d.group,
                "metric": d.metric,
            }
            for d in report.diagnostics
        ],
        "overall_verdict": report.overall_verdict.value,
        "tool_version": report.tool_version,
    }


def report_hash(payload: dict) -> str:
    """Content hash over everything except the timestamp and hash fields."""
    hashable = {k: v for k, v in payload.items() if k not in ("generated_at", "report_hash")}
    digest = hashlib.sha256(
        json.dumps(hashable, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode(
            "utf-8"
        )
    ).hexdigest()
    return "sha256:" + digest


def render_json(report: AuditReport, timestamp: str | None = None) -> bytes:
    """Canonical JSON document; byte-stable for identical inputs."""
    payload = report_to_dict(report)
    payload["report_hash"] = report_hash(payload)
    if timestamp is not None:
        payload["generated_at"] = timestamp
    return canonical_json_bytes(payload)


_RATE_NAMES = ("prev", "pprev", "ppr", "fdr", "for", "fpr", "fnr")


def _fmt_rate(value: float | None) -> str:
    return f"{value:.4f}" if value is not None else "undefined"


def _fmt_ratio(row: DisparityRow) -> str:
    if row.ratio is None:
        return "undefined"
    if math.isinf(row.ratio):
        return "inf"
    return f"{row.ratio:.4f}"


def _describe_threshold(report: AuditReport) -> str:
    policy = report.config.threshold
    if policy.kind is PolicyKind.PRE_BINARIZED:
        return "pre-binarized decision column"
    if policy.kind is PolicyKind.SCORE_CUTOFF:
        return f"score >= {policy.cutoff:g}"
    ties = "exactly k" if policy.tie_mode.value == "exact_k" else "all ties included"
    if policy.kind is PolicyKind.TOP_K:
        return f"top {policy.k} by score ({ties})"
    return f"top {policy.p:g} fraction by score ({ties})"


def _describe_reference(report: AuditReport) -> str:
    ref = report.config.reference
    if ref.kind is ReferenceKind.FIXED:
        pairs = ", ".join(f"{a}={g}" for a, g in sorted(ref.fixed_groups.items()))
        return f"fixed ({pairs})"
    return {"majority": "majority group", "min_metric": "minimum-metric group"}[ref.kind.value]


def render_markdown(report: AuditReport) -> str:
    """Human-readable report: one section per attribute."""
    config = report.config
    lines = [
        "# Bias audit report",
        "",
        f"- rows: {report.dataset_row_count}",
        f"- dataset hash: {report.dataset_hash}",
        f"- decision rule: {_describe_threshold(report)}",
        f"- positive decisions: {report.num_positive}",
        f"- reference strategy: {_describe_reference(report)}",
        f"- tau: {config.parity.tau:g} (band {config.parity.tau:g} to {1.0 / config.parity.tau:g})",
        f"- metrics: {', '.join(m.value for m in config.parity.metrics)}",
        f"- overall verdict: **{report.overall_verdict.value.upper()}**",
    ]
    if config.tree_path:
        lines.append(f"- interview path: {' > '.join(config.tree_path)}")
    if config.tree_rationale:
        lines.append(f"- interview rationale: {config.tree_rationale}")

    for attr in report.attributes:
        lines += ["", f"## {attr.attribute}", "", "### Group metrics", ""]
        lines.append("| group | size | " + " | ".join(_RATE_NAMES) + " |")
        lines.append("|---|---:|" + "---:|" * len(_RATE_NAMES))
        for counts, gm in zip(attr.crosstab.groups, attr.metrics):
            rates = [gm.prev, gm.pprev, gm.ppr, gm.fdr, gm.for_, gm.fpr, gm.fnr]
            cells = " | ".join(_fmt_rate(v) for v in rates)
            lines.append(f"| {counts.group_value} | {counts.size} | {cells} |")

        lines += ["", "### Disparities", ""]
        lines.append("| group | metric | rate | ref group | ref rate | ratio | verdict |")
        lines.append("|---|---|---:|---|---:|---:|---|")
        for row in attr.disparities:
            lines.append(
                f"| {row.group_value} | {row.metric.value} | {_fmt_rate(row.group_rate)} "
                f"| {row.ref_group} | {_fmt_rate(row.ref_rate)} | {_fmt_ratio(row)} "
                f"| {row.verdict.value.upper()} |"
            )

        summary = attr.summary
        lines += [
            "",
            "### Parity summary",
            "",
            f"- statistical parity (PPR): {summary.statistical_parity.value.upper()}",
            f"- impact parity (PPrev): {summary.impact_parity.value.upper()}",
            f"- type I parity (FDR, FPR): {summary.type1_parity.value.upper()}",
            f"- type II parity (FOR, FNR): {summary.type2_parity.value.upper()}",
            f"- unsupervised: {summary.unsupervised.value.upper()}",
            f"- supervised: {summary.supervised.value.upper()}",
            f"- selected metrics overall: {summary.overall_for_selected_metrics.value.upper()}",
        ]

    if report.diagnostics:
        lines += ["", "## Diagnostics", ""]
        for d in report.diagnostics:
            lines.append(f"- {d.severity}: {d.message}")

    return "\n".join(lines) + "\n"


def render_csv(report: AuditReport) -> str:
    """Flat disparity-row export with a pinned column order."""
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for attr in report.attributes:
        for row in attr.disparities:
            if row.ratio is None:
                ratio = ""
            elif math.isinf(row.ratio):
                ratio = "inf"
            else:
                ratio = repr(row.ratio)
            writer.writerow(
                [
                    row.attribute,
                    row.group_value,
                    row.metric.value,
                    repr(row.group_rate) if row.group_rate is not None else "",
                    row.ref_group,
                    repr(row.ref_rate) if row.ref_rate is not None else "",
                    ratio,
                    row.verdict.value,
                ]
            )
    return buf.getvalue()


def chart_data(report: AuditReport) -> list[ChartSeries]:
    """One series per (attribute, selected metric); bars follow crosstab order."""
    series: list[ChartSeries] = []
    for attr in report.attributes:
        for metric in report.config.parity.metrics:
            bars = tuple(
                ChartBar(
                    group_value=row.group_value,
                    value=row.group_rate,
                    color=_VERDICT_COLOR[row.verdict],
                )
                for row in attr.disparities
                if row.metric is metric
            )
            series.append(ChartSeries(attribute=attr.attribute, metric=metric, bars=bars))
    return series
