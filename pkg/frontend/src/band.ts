// The tau band, re-applied to server-provided ratios for the what-if
// slider. This is the only piece of audit math that runs in the browser;
// both sides evaluate it in IEEE doubles, so preview and committed
// verdicts agree bit for bit.

import type { DisparityRow, IndeterminatePolicy, Report, Verdict } from "./types";

export function bandVerdict(
  row: Pick<DisparityRow, "ratio" | "ratio_kind">,
  tau: number,
  policy: IndeterminatePolicy = "report_only",
): Exclude<Verdict, "reference"> {
  if (row.ratio_kind === "indeterminate") {
    if (policy === "treat_as_fail") return "fail";
    if (policy === "treat_as_pass") return "pass";
    return "indeterminate";
  }
  if (row.ratio_kind === "infinite") return "fail";
  const ratio = row.ratio as number;
  return tau <= ratio && ratio <= 1 / tau ? "pass" : "fail";
}

export function previewVerdict(row: DisparityRow, tau: number, policy?: IndeterminatePolicy): Verdict {
  if (row.verdict === "reference") return "reference";
  return bandVerdict(row, tau, policy);
}

export function rowKey(row: Pick<DisparityRow, "attribute" | "group_value" | "metric">): string {
  return `${row.attribute}\u0000${row.group_value}\u0000${row.metric}`;
}

// Recolor a whole report at tau-prime without touching the server.
export function previewReport(report: Report, tau: number): Map<string, Verdict> {
  const verdicts = new Map<string, Verdict>();
  const policy = report.config.indeterminate_policy;
  for (const attribute of report.attributes) {
    for (const row of attribute.disparities) {
      verdicts.set(rowKey(row), previewVerdict(row, tau, policy));
    }
  }
  return verdicts;
}
