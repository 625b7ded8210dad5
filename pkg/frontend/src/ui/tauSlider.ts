import type { ParitydClient } from "../api";
import { ApiError } from "../api";
import { store } from "../store";
import type { AuditRequest, Report } from "../types";

// Rebuild the request that produced `report`, swapping only tau, so a
// committed re-audit differs from the preview in nothing but the band.
export function requestForTau(report: Report, tau: number): AuditRequest {
  const cfg = report.config;
  const request: AuditRequest = {
    tau,
    threshold: cfg.threshold,
    reference: cfg.reference,
    indeterminate_policy: cfg.indeterminate_policy,
  };
  if (cfg.tree_path !== null) {
    request.tree_path = cfg.tree_path;
  } else {
    request.metrics = cfg.metrics;
  }
  return request;
}

export function renderTauSlider(root: HTMLElement, client: ParitydClient): void {
  const section = document.createElement("section");
  section.className = "panel tau-panel";
  const heading = document.createElement("h2");
  heading.textContent = "5. Band width";
  section.appendChild(heading);

  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = "0.05";
  slider.max = "1";
  slider.step = "0.05";
  slider.value = "0.8";

  const readout = document.createElement("span");
  readout.className = "tau-readout";

  // Preview recolors the stored ratios in the browser; nothing is recomputed
  // server-side until Commit.
  slider.addEventListener("input", () => {
    store.set({ tauPreview: Number(slider.value) });
  });

  const commit = document.createElement("button");
  commit.textContent = "Commit";
  commit.addEventListener("click", async () => {
    const { report, datasetId, tauPreview } = store.get();
    if (!report || !datasetId || tauPreview === null) return;
    store.set({ busy: true, error: null });
    try {
      const next = await client.createAudit(datasetId, requestForTau(report, tauPreview));
      store.set({ busy: false, report: next, tauPreview: null });
    } catch (err) {
      const message =
        err instanceof ApiError ? `${err.code}: ${err.message}` : "re-audit failed; is the service up?";
      store.set({ busy: false, error: message });
    }
  });

  const reset = document.createElement("button");
  reset.textContent = "Discard preview";
  reset.addEventListener("click", () => {
    store.set({ tauPreview: null });
  });

  section.append(slider, readout, commit, reset);
  root.appendChild(section);

  store.subscribe((state) => {
    const committed = state.report?.config.tau;
    const shown = state.tauPreview ?? committed;
    if (shown !== undefined && Number(slider.value) !== shown) {
      slider.value = String(shown);
    }
    readout.textContent =
      committed === undefined
        ? "no report yet"
        : state.tauPreview === null
          ? `tau=${committed} (committed)`
          : `previewing tau=${state.tauPreview}, committed ${committed}`;
    const enabled = state.report !== null && state.tauPreview !== null && !state.busy;
    commit.disabled = !enabled;
    reset.disabled = state.tauPreview === null;
    slider.disabled = state.report === null;
  });
}
