// Minimal observable console state; views re-render on every set().

import type { AuditRequest, Diagnostic, Report, TreeDefinition } from "./types";
import type { WizardState } from "./wizard";

export interface ConsoleState {
  datasetId: string | null;
  rowCount: number | null;
  hasDecisionColumn: boolean;
  diagnostics: Diagnostic[];
  tree: TreeDefinition | null;
  wizard: WizardState | null;
  configDraft: AuditRequest;
  report: Report | null;
  tauPreview: number | null;
  busy: boolean;
  error: string | null;
}

const initial: ConsoleState = {
  datasetId: null,
  rowCount: null,
  hasDecisionColumn: false,
  diagnostics: [],
  tree: null,
  wizard: null,
  configDraft: {},
  report: null,
  tauPreview: null,
  busy: false,
  error: null,
};

type Listener = (state: ConsoleState) => void;

class Store {
  private state: ConsoleState = initial;
  private listeners: Listener[] = [];

  get(): ConsoleState {
    return this.state;
  }

  set(patch: Partial<ConsoleState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}

export const store = new Store();
