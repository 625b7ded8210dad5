import type { ParitydClient } from "../api";
import { ApiError } from "../api";
import { store } from "../store";
import type { AuditRequest, MetricName } from "../types";

type ThresholdRequest = NonNullable<AuditRequest["threshold"]>;
type ReferenceRequest = NonNullable<AuditRequest["reference"]>;

const METRICS: MetricName[] = ["PPrev", "PPR", "FDR", "FOR", "FPR", "FNR"];

// Client-side guard mirroring the server's 422 rules, so most mistakes
// never leave the browser.
export function draftProblems(draft: AuditRequest, hasDecisionColumn: boolean): string[] {
  const problems: string[] = [];
  if (draft.tau !== undefined && !(draft.tau > 0 && draft.tau <= 1)) {
    problems.push("tau must lie in (0, 1]");
  }
  if (draft.metrics && draft.tree_path) {
    problems.push("pick metrics manually or from the interview, not both");
  }
  if (draft.metrics && draft.metrics.length === 0) {
    problems.push("select at least one metric");
  }
  if (!draft.threshold && !hasDecisionColumn) {
    problems.push("dataset has no decision column; choose a threshold policy");
  }
  if (draft.threshold) {
    const t = draft.threshold;
    if (t.kind === "top_k" && !(Number.isInteger(t.k) && (t.k as number) > 0)) {
      problems.push("top-k needs a positive integer k");
    }
    if (t.kind === "top_percent" && !((t.p as number) > 0 && (t.p as number) <= 1)) {
      problems.push("top-percent needs p in (0, 1]");
    }
    if (t.kind === "score_cutoff" && typeof t.cutoff !== "number") {
      problems.push("score-cutoff needs a numeric cutoff");
    }
  }
  if (draft.reference?.kind === "fixed") {
    const groups = draft.reference.fixed_groups ?? {};
    if (Object.keys(groups).length === 0) {
      problems.push("fixed reference needs attribute=group pairs");
    }
  }
  return problems;
}

// "race=Caucasian, sex=Male" -> {race: "Caucasian", sex: "Male"}; null on junk.
export function parseFixedGroups(text: string): Record<string, string> | null {
  const out: Record<string, string> = {};
  for (const piece of text.split(",")) {
    const pair = piece.trim();
    if (pair === "") continue;
    const eq = pair.indexOf("=");
    if (eq <= 0 || eq === pair.length - 1) return null;
    out[pair.slice(0, eq).trim()] = pair.slice(eq + 1).trim();
  }
  return Object.keys(out).length > 0 ? out : null;
}

function thresholdFromControls(kind: string, value: string): ThresholdRequest | undefined {
  switch (kind) {
    case "decision column":
      return undefined;
    case "pre_binarized":
      return { kind: "pre_binarized" };
    case "top_k":
      return { kind: "top_k", k: Number(value) };
    case "top_percent":
      return { kind: "top_percent", p: Number(value) };
    case "score_cutoff":
      return { kind: "score_cutoff", cutoff: Number(value) };
    default:
      return undefined;
  }
}

export function renderConfig(
  root: HTMLElement,
  client: ParitydClient,
  hasDecisionColumn: () => boolean,
): void {
  const section = document.createElement("section");
  section.className = "panel";
  const heading = document.createElement("h2");
  heading.textContent = "3. Audit configuration";
  section.appendChild(heading);

  const patchDraft = (mutate: (draft: AuditRequest) => void): void => {
    const draft = { ...store.get().configDraft };
    mutate(draft);
    store.set({ configDraft: draft });
  };

  const metricBoxes = new Map<MetricName, HTMLInputElement>();
  const metricRow = document.createElement("div");
  metricRow.className = "metric-row";
  for (const metric of METRICS) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.value = metric;
    box.addEventListener("change", () => {
      const picked = METRICS.filter((m) => metricBoxes.get(m)!.checked);
      patchDraft((draft) => {
        delete draft.tree_path;
        if (picked.length > 0) {
          draft.metrics = picked;
        } else {
          delete draft.metrics;
        }
      });
    });
    metricBoxes.set(metric, box);
    label.append(box, document.createTextNode(metric));
    metricRow.appendChild(label);
  }

  const field = (caption: string, control: HTMLElement): HTMLLabelElement => {
    const label = document.createElement("label");
    label.className = "field";
    const span = document.createElement("span");
    span.textContent = caption;
    label.append(span, control);
    return label;
  };

  const thresholdKind = document.createElement("select");
  for (const option of ["decision column", "pre_binarized", "top_k", "top_percent", "score_cutoff"]) {
    const el = document.createElement("option");
    el.value = option;
    el.textContent = option;
    thresholdKind.appendChild(el);
  }
  const thresholdValue = document.createElement("input");
  thresholdValue.type = "number";
  thresholdValue.step = "any";
  thresholdValue.placeholder = "k / p / cutoff";
  const onThresholdChange = (): void => {
    const needsValue = ["top_k", "top_percent", "score_cutoff"].includes(thresholdKind.value);
    thresholdValue.disabled = !needsValue;
    patchDraft((draft) => {
      const threshold = thresholdFromControls(thresholdKind.value, thresholdValue.value);
      if (threshold) {
        draft.threshold = threshold;
      } else {
        delete draft.threshold;
      }
    });
  };
  thresholdKind.addEventListener("change", onThresholdChange);
  thresholdValue.addEventListener("change", onThresholdChange);
  thresholdValue.disabled = true;

  const referenceKind = document.createElement("select");
  for (const option of ["majority", "min_metric", "fixed"]) {
    const el = document.createElement("option");
    el.value = option;
    el.textContent = option;
    referenceKind.appendChild(el);
  }
  const fixedGroups = document.createElement("input");
  fixedGroups.type = "text";
  fixedGroups.placeholder = "attr=group, attr=group";
  fixedGroups.disabled = true;
  const onReferenceChange = (): void => {
    fixedGroups.disabled = referenceKind.value !== "fixed";
    patchDraft((draft) => {
      if (referenceKind.value === "majority") {
        delete draft.reference;
        return;
      }
      const ref: ReferenceRequest = { kind: referenceKind.value as ReferenceRequest["kind"] };
      if (referenceKind.value === "fixed") {
        ref.fixed_groups = parseFixedGroups(fixedGroups.value) ?? {};
      }
      draft.reference = ref;
    });
  };
  referenceKind.addEventListener("change", onReferenceChange);
  fixedGroups.addEventListener("change", onReferenceChange);

  const tau = document.createElement("input");
  tau.type = "number";
  tau.min = "0.01";
  tau.max = "1";
  tau.step = "0.01";
  tau.value = "0.8";
  tau.addEventListener("change", () => {
    patchDraft((draft) => {
      draft.tau = Number(tau.value);
    });
  });

  const problems = document.createElement("ul");
  problems.className = "problems";

  const run = document.createElement("button");
  run.textContent = "Run audit";
  run.addEventListener("click", async () => {
    const state = store.get();
    if (!state.datasetId) {
      store.set({ error: "upload a dataset first" });
      return;
    }
    const found = draftProblems(state.configDraft, hasDecisionColumn());
    if (found.length > 0) {
      store.set({ error: found.join("; ") });
      return;
    }
    store.set({ busy: true, error: null });
    try {
      const report = await client.createAudit(state.datasetId, state.configDraft);
      store.set({ busy: false, report, tauPreview: null });
    } catch (err) {
      const message =
        err instanceof ApiError ? `${err.code}: ${err.message}` : "audit failed; is the service up?";
      store.set({ busy: false, error: message });
    }
  });

  section.append(
    field("metrics", metricRow),
    field("threshold", thresholdKind),
    field("value", thresholdValue),
    field("reference", referenceKind),
    field("fixed groups", fixedGroups),
    field("tau", tau),
    run,
    problems,
  );
  root.appendChild(section);

  store.subscribe((state) => {
    const fromTree = state.configDraft.tree_path !== undefined;
    for (const [metric, box] of metricBoxes) {
      box.disabled = fromTree;
      box.checked = !fromTree && (state.configDraft.metrics?.includes(metric) ?? false);
    }
    problems.innerHTML = "";
    for (const problem of draftProblems(state.configDraft, hasDecisionColumn())) {
      const item = document.createElement("li");
      item.textContent = problem;
      problems.appendChild(item);
    }
  });
}
