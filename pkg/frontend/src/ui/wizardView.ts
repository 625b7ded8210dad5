import { store } from "../store";
import {
  answerWizard,
  currentQuestion,
  currentTerminal,
  startWizard,
  wizardMetrics,
} from "../wizard";

// Walks the served tree. Answers advance exactly as the engine would;
// the terminal rationale is shown verbatim.
export function renderWizard(root: HTMLElement): void {
  const section = document.createElement("section");
  section.className = "panel";
  const heading = document.createElement("h2");
  heading.textContent = "2. Which metrics matter?";
  const body = document.createElement("div");
  section.append(heading, body);
  root.appendChild(section);

  function sync(): void {
    const { tree, wizard } = store.get();
    body.innerHTML = "";

    if (!tree) {
      const note = document.createElement("p");
      note.textContent = "fairness tree not loaded";
      body.appendChild(note);
      return;
    }

    if (!wizard) {
      const start = document.createElement("button");
      start.textContent = "Start the interview";
      start.addEventListener("click", () => store.set({ wizard: startWizard(tree) }));
      const skip = document.createElement("p");
      skip.className = "hint";
      skip.textContent = "Optional: skip it and pick metrics manually below.";
      body.append(start, skip);
      return;
    }

    const question = currentQuestion(tree, wizard);
    if (question) {
      const text = document.createElement("p");
      text.className = "question";
      text.textContent = question.question.text;
      body.appendChild(text);
      for (const answer of question.question.answers) {
        const choice = document.createElement("button");
        choice.className = "answer";
        choice.textContent = answer.text;
        choice.addEventListener("click", () =>
          store.set({ wizard: answerWizard(tree, wizard, answer.id) }),
        );
        body.appendChild(choice);
      }
    } else {
      const terminal = currentTerminal(tree, wizard)!;
      const metrics = wizardMetrics(tree, wizard);
      const result = document.createElement("p");
      result.className = "recommendation";
      result.textContent = `Recommended metrics: ${metrics.join(", ")}`;
      const rationale = document.createElement("p");
      rationale.className = "rationale";
      rationale.textContent = terminal.terminal.rationale;
      const adopt = document.createElement("button");
      adopt.textContent = "Use these metrics";
      adopt.addEventListener("click", () => {
        const path = wizard.answered.map(([, answerId]) => answerId);
        const draft = { ...store.get().configDraft };
        delete draft.metrics;
        store.set({ configDraft: { ...draft, tree_path: path } });
      });
      body.append(result, rationale, adopt);
    }

    const restart = document.createElement("button");
    restart.className = "secondary";
    restart.textContent = "Restart";
    restart.addEventListener("click", () => {
      const draft = { ...store.get().configDraft };
      delete draft.tree_path;
      store.set({ wizard: null, configDraft: draft });
    });
    body.appendChild(restart);
  }

  sync();
  store.subscribe(sync);
}
