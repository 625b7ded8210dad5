// Typed client for the /v1 API. Errors carry the server's envelope so
// views can show the machine code next to the human message.

import type {
  AuditRequest,
  DatasetSchemaPayload,
  Report,
  TreeDefinition,
  UploadResult,
} from "./types";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly detail: string | null = null,
  ) {
    super(message);
  }
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let code = "HttpError";
  let message = `request failed with status ${response.status}`;
  let detail: string | null = null;
  try {
    const body = await response.json();
    if (typeof body.code === "string") code = body.code;
    if (typeof body.message === "string") message = body.message;
    if (typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body; keep the generic message
  }
  throw new ApiError(response.status, code, message, detail);
}

export class ParitydClient {
  private tree: { etag: string | null; definition: TreeDefinition } | null = null;

  constructor(readonly baseUrl: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async fetchTree(): Promise<TreeDefinition> {
    const headers: Record<string, string> = {};
    if (this.tree?.etag) headers["If-None-Match"] = this.tree.etag;
    const response = await fetch(this.url("/v1/fairness-tree"), { headers });
    if (response.status === 304 && this.tree) {
      return this.tree.definition;
    }
    await raiseForStatus(response);
    const definition = (await response.json()) as TreeDefinition;
    this.tree = { etag: response.headers.get("ETag"), definition };
    return definition;
  }

  async uploadDataset(
    file: Blob,
    filename: string,
    schema: DatasetSchemaPayload,
  ): Promise<UploadResult> {
    const form = new FormData();
    form.append("file", file, filename);
    form.append("schema", JSON.stringify(schema));
    const response = await fetch(this.url("/v1/datasets"), {
      method: "POST",
      body: form,
    });
    await raiseForStatus(response);
    return (await response.json()) as UploadResult;
  }

  async createAudit(datasetId: string, config: AuditRequest = {}): Promise<Report> {
    const response = await fetch(this.url(`/v1/datasets/${datasetId}/audits`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(config),
    });
    await raiseForStatus(response);
    return (await response.json()) as Report;
  }

  async auditHistory(datasetId: string): Promise<{ dataset_id: string; reports: Report[] }> {
    const response = await fetch(this.url(`/v1/datasets/${datasetId}/audits`));
    await raiseForStatus(response);
    return (await response.json()) as { dataset_id: string; reports: Report[] };
  }
}
