// Wire types for the /v1 API. These mirror the server's JSON shapes and
// are the only contract the console depends on.

export type Verdict = "pass" | "fail" | "indeterminate" | "reference";
export type RatioKind = "finite" | "infinite" | "indeterminate";
export type IndeterminatePolicy = "treat_as_fail" | "treat_as_pass" | "report_only";

export type MetricName = "PPrev" | "PPR" | "FDR" | "FOR" | "FPR" | "FNR";

export interface GroupCounts {
  size: number;
  pp: number;
  pn: number;
  tp: number;
  fp: number;
  tn: number;
  fn: number;
  lp: number;
  ln: number;
}

export interface MetricCell {
  value: number | null;
  // Set exactly when value is null, e.g. "denominator PP=0".
  reason: string | null;
}

export interface GroupEntry {
  group_value: string;
  counts: GroupCounts;
  metrics: Record<string, MetricCell>;
}

export interface DisparityRow {
  attribute: string;
  group_value: string;
  metric: MetricName;
  group_rate: number | null;
  group_rate_reason: string | null;
  ref_group: string;
  ref_rate: number | null;
  ref_rate_reason: string | null;
  ratio: number | null;
  ratio_kind: RatioKind;
  direction: "above" | "below" | "equal" | null;
  verdict: Verdict;
}

export interface AttributeSummary {
  statistical_parity: Verdict;
  impact_parity: Verdict;
  type1_parity: Verdict;
  type2_parity: Verdict;
  unsupervised: Verdict;
  supervised: Verdict;
  overall_for_selected_metrics: Verdict;
}

export interface AttributeReport {
  attribute: string;
  k_total: number;
  groups: GroupEntry[];
  disparities: DisparityRow[];
  summary: AttributeSummary;
}

export interface Diagnostic {
  severity: string;
  code: string;
  message: string;
  attribute: string | null;
  group: string | null;
  metric: string | null;
}

export interface ThresholdConfig {
  kind: "pre_binarized" | "top_k" | "top_percent" | "score_cutoff";
  k: number | null;
  p: number | null;
  cutoff: number | null;
  tie_mode: "exact_k" | "include_all_ties";
}

export interface ReferenceConfig {
  kind: "majority" | "min_metric" | "fixed";
  fixed_groups: Record<string, string>;
}

export interface ReportConfig {
  threshold: ThresholdConfig;
  reference: ReferenceConfig;
  tau: number;
  metrics: MetricName[];
  indeterminate_policy: IndeterminatePolicy;
  tree_path: string[] | null;
  tree_rationale: string | null;
}

export interface Report {
  report_version: string;
  dataset: { row_count: number; content_hash: string };
  config: ReportConfig;
  binarization: { cutoff_score: number | null; num_positive: number };
  attributes: AttributeReport[];
  diagnostics: Diagnostic[];
  overall_verdict: Verdict;
  report_hash: string;
  tool_version: string;
  generated_at?: string;
}

export interface UploadResult {
  dataset_id: string;
  row_count: number;
  content_hash: string;
  diagnostics: Diagnostic[];
}

export interface DatasetSchemaPayload {
  label_column: string;
  attribute_columns: string[];
  score_column?: string;
  decision_column?: string;
  entity_id_column?: string;
}

// Audit request body; omitted fields take server defaults.
export interface AuditRequest {
  threshold?: Partial<ThresholdConfig> & { kind: ThresholdConfig["kind"] };
  reference?: { kind: ReferenceConfig["kind"]; fixed_groups?: Record<string, string> };
  tau?: number;
  metrics?: MetricName[];
  tree_path?: string[];
  indeterminate_policy?: IndeterminatePolicy;
}

// The served fairness-tree definition, walked verbatim by the wizard.
export interface TreeAnswer {
  id: string;
  text: string;
  next: string; // "question:<id>" or "terminal:<id>"
}

export interface TreeQuestion {
  text: string;
  answers: TreeAnswer[];
}

export interface TreeTerminal {
  metrics: MetricName[];
  rationale: string;
}

export interface TreeDefinition {
  version: string;
  root: string;
  questions: Record<string, TreeQuestion>;
  terminals: Record<string, TreeTerminal>;
}
