// Wizard over the served tree definition. The console has no tree logic
// of its own: every step resolves against the JSON the service returned,
// so the browser and the engine cannot disagree about where a path lands.

import type { MetricName, TreeDefinition, TreeQuestion, TreeTerminal } from "./types";

export interface WizardState {
  answered: Array<[question: string, answer: string]>;
  node: string; // "question:<id>" or "terminal:<id>"
}

export class WizardError extends Error {}

function resolve(
  tree: TreeDefinition,
  node: string,
): { kind: "question"; id: string; question: TreeQuestion } | { kind: "terminal"; id: string; terminal: TreeTerminal } {
  const [kind, id] = splitRef(node);
  if (kind === "question") {
    const question = tree.questions[id];
    if (question) return { kind, id, question };
  }
  if (kind === "terminal") {
    const terminal = tree.terminals[id];
    if (terminal) return { kind, id, terminal };
  }
  throw new WizardError(`dangling tree reference ${node}`);
}

function splitRef(node: string): [string, string] {
  const sep = node.indexOf(":");
  return sep < 0 ? [node, ""] : [node.slice(0, sep), node.slice(sep + 1)];
}

export function startWizard(tree: TreeDefinition): WizardState {
  const node = `question:${tree.root}`;
  resolve(tree, node); // reject a definition whose root is unknown
  return { answered: [], node };
}

export function isTerminal(state: WizardState): boolean {
  return state.node.startsWith("terminal:");
}

export function currentQuestion(
  tree: TreeDefinition,
  state: WizardState,
): { id: string; question: TreeQuestion } | null {
  const resolved = resolve(tree, state.node);
  return resolved.kind === "question" ? { id: resolved.id, question: resolved.question } : null;
}

export function currentTerminal(
  tree: TreeDefinition,
  state: WizardState,
): { id: string; terminal: TreeTerminal } | null {
  const resolved = resolve(tree, state.node);
  return resolved.kind === "terminal" ? { id: resolved.id, terminal: resolved.terminal } : null;
}

export function answerWizard(
  tree: TreeDefinition,
  state: WizardState,
  answerId: string,
): WizardState {
  const here = resolve(tree, state.node);
  if (here.kind !== "question") {
    throw new WizardError("the interview already reached a recommendation");
  }
  const chosen = here.question.answers.find((a) => a.id === answerId);
  if (!chosen) {
    throw new WizardError(`answer '${answerId}' is not valid for question '${here.id}'`);
  }
  resolve(tree, chosen.next);
  return {
    answered: [...state.answered, [here.id, answerId]],
    node: chosen.next,
  };
}

export function replayWizard(tree: TreeDefinition, answers: string[]): WizardState {
  let state = startWizard(tree);
  for (const answerId of answers) {
    state = answerWizard(tree, state, answerId);
  }
  return state;
}

export function wizardMetrics(tree: TreeDefinition, state: WizardState): MetricName[] {
  const terminal = currentTerminal(tree, state);
  if (!terminal) {
    throw new WizardError("the interview has not reached a recommendation yet");
  }
  return [...terminal.terminal.metrics];
}

export interface WizardPath {
  answers: string[];
  terminalId: string;
  metrics: MetricName[];
  rationale: string;
}

export function enumerateWizardPaths(tree: TreeDefinition): WizardPath[] {
  const paths: WizardPath[] = [];
  const walk = (node: string, answers: string[], seen: Set<string>) => {
    const resolved = resolve(tree, node);
    if (resolved.kind === "terminal") {
      paths.push({
        answers,
        terminalId: resolved.id,
        metrics: [...resolved.terminal.metrics],
        rationale: resolved.terminal.rationale,
      });
      return;
    }
    if (seen.has(resolved.id)) {
      throw new WizardError(`tree revisits question '${resolved.id}'`);
    }
    const nextSeen = new Set(seen).add(resolved.id);
    for (const answer of resolved.question.answers) {
      walk(answer.next, [...answers, answer.id], nextSeen);
    }
  };
  walk(`question:${tree.root}`, [], new Set());
  return paths;
}
