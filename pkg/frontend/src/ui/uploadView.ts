import type { ParitydClient } from "../api";
import { ApiError } from "../api";
import { store } from "../store";
import type { DatasetSchemaPayload } from "../types";

function field(label: string, input: HTMLElement): HTMLElement {
  const wrap = document.createElement("label");
  wrap.className = "field";
  const caption = document.createElement("span");
  caption.textContent = label;
  wrap.append(caption, input);
  return wrap;
}

function textInput(id: string, placeholder: string, value = ""): HTMLInputElement {
  const input = document.createElement("input");
  input.type = "text";
  input.id = id;
  input.placeholder = placeholder;
  input.value = value;
  return input;
}

export function renderUpload(root: HTMLElement, client: ParitydClient): void {
  const section = document.createElement("section");
  section.className = "panel";
  const heading = document.createElement("h2");
  heading.textContent = "1. Population";
  section.appendChild(heading);

  const file = document.createElement("input");
  file.type = "file";
  file.accept = ".csv,text/csv";

  const label = textInput("label-col", "label column", "label");
  const attrs = textInput("attr-cols", "protected attributes, comma separated");
  const score = textInput("score-col", "score column (optional)");
  const decision = textInput("decision-col", "decision column (optional)");
  const entity = textInput("id-col", "entity id column (optional)");

  const submit = document.createElement("button");
  submit.textContent = "Upload";
  submit.addEventListener("click", async () => {
    const chosen = file.files?.[0];
    if (!chosen) {
      store.set({ error: "choose a CSV file first" });
      return;
    }
    const schema: DatasetSchemaPayload = {
      label_column: label.value.trim(),
      attribute_columns: attrs.value.split(",").map((a) => a.trim()).filter(Boolean),
    };
    if (score.value.trim()) schema.score_column = score.value.trim();
    if (decision.value.trim()) schema.decision_column = decision.value.trim();
    if (entity.value.trim()) schema.entity_id_column = entity.value.trim();

    store.set({ busy: true, error: null });
    try {
      const result = await client.uploadDataset(chosen, chosen.name, schema);
      store.set({
        busy: false,
        datasetId: result.dataset_id,
        rowCount: result.row_count,
        hasDecisionColumn: schema.decision_column !== undefined,
        diagnostics: result.diagnostics,
        report: null,
        tauPreview: null,
      });
    } catch (err) {
      const message =
        err instanceof ApiError ? `${err.code}: ${err.message}` : "upload failed; is the service up?";
      store.set({ busy: false, error: message });
    }
  });

  section.append(
    field("CSV file", file),
    field("Label column", label),
    field("Attributes", attrs),
    field("Score column", score),
    field("Decision column", decision),
    field("Entity id column", entity),
    submit,
  );

  const status = document.createElement("p");
  status.className = "status";
  section.appendChild(status);

  store.subscribe((state) => {
    if (state.datasetId) {
      status.textContent = `dataset ${state.datasetId} (${state.rowCount} rows, ${state.diagnostics.length} diagnostics)`;
    } else {
      status.textContent = "no dataset uploaded yet";
    }
  });

  root.appendChild(section);
}
