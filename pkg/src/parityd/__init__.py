"""parityd: group fairness audits over binary decision systems.

Parse a scored or pre-decided population CSV, binarize with a threshold
policy, compute per-group confusion rates, compare each group to a
reference group, and test every disparity against a tau parity band.
"""

from ._version import __version__
from .audit import AttributeAudit, AuditConfig, AuditReport, run_audit
from .disparity import (
    ALL_METRICS,
    AttributeParitySummary,
    DisparityRow,
    IndeterminatePolicy,
    ParityConfig,
    ReferenceKind,
    ReferenceStrategy,
    Verdict,
    compute_disparities,
    parity_test,
    references_for,
    select_reference,
    summarize_attribute,
)
from .errors import (
    AlreadyTerminal,
    AuditError,
    BadLabelValue,
    BadScoreValue,
    DuplicateEntityId,
    EmptyDataset,
    FixedGroupAbsent,
    InvalidAnswer,
    InvalidConfig,
    MissingColumn,
    NoDefinedMetric,
    NotTerminal,
    PolicyDatasetMismatch,
    TooManyGroups,
    UnknownAttribute,
)
from .ingest import (
    Dataset,
    DatasetSchema,
    Diagnostic,
    EntityRecord,
    ParseOptions,
    UNKNOWN_GROUP,
    parse_csv,
    serialize_csv,
    validate,
)
from .metrics import (
    AttributeCrosstab,
    BinarizationResult,
    GroupCounts,
    GroupMetrics,
    Metric,
    PolicyKind,
    ThresholdPolicy,
    TieMode,
    binarize,
    compute_group_metrics,
    crosstab,
    group_metrics_table,
)
from .report import (
    CSV_COLUMNS,
    REPORT_VERSION,
    ChartBar,
    ChartSeries,
    canonical_json_bytes,
    chart_data,
    render_csv,
    render_json,
    render_markdown,
    report_hash,
    report_to_dict,
)
from .tree import FairnessTree, Terminal, TreeAnswer, TreeQuestion, TreeState, default_tree

__all__ = [
    "__version__",
    "ALL_METRICS",
    "AlreadyTerminal",
    "AttributeAudit",
    "AttributeCrosstab",
    "AttributeParitySummary",
    "AuditConfig",
    "AuditError",
    "AuditReport",
    "BadLabelValue",
    "BadScoreValue",
    "BinarizationResult",
    "CSV_COLUMNS",
    "ChartBar",
    "ChartSeries",
    "Dataset",
    "DatasetSchema",
    "Diagnostic",
    "DisparityRow",
    "DuplicateEntityId",
    "EmptyDataset",
    "EntityRecord",
    "FairnessTree",
    "FixedGroupAbsent",
    "GroupCounts",
    "GroupMetrics",
    "IndeterminatePolicy",
    "InvalidAnswer",
    "InvalidConfig",
    "Metric",
    "MissingColumn",
    "NoDefinedMetric",
    "NotTerminal",
    "ParityConfig",
    "ParseOptions",
    "PolicyDatasetMismatch",
    "PolicyKind",
    "REPORT_VERSION",
    "ReferenceKind",
    "ReferenceStrategy",
    "Terminal",
    "ThresholdPolicy",
    "TieMode",
    "TooManyGroups",
    "TreeAnswer",
    "TreeQuestion",
    "TreeState",
    "UNKNOWN_GROUP",
    "UnknownAttribute",
    "Verdict",
    "binarize",
    "canonical_json_bytes",
    "chart_data",
    "compute_disparities",
    "compute_group_metrics",
    "crosstab",
    "default_tree",
    "group_metrics_table",
    "parity_test",
    "parse_csv",
    "references_for",
    "render_csv",
    "render_json",
    "render_markdown",
    "report_hash",
    "report_to_dict",
    "run_audit",
    "select_reference",
    "serialize_csv",
    "summarize_attribute",
    "validate",
]
