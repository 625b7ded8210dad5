"""Metric-selection interview: a deterministic question/answer tree.

The tree maps a decision maker's intervention context (are labels
reliable, does selection help or hurt, how many people does it reach) to
the metric subset an audit should weigh. The node structure lives in a
versioned JSON document so the HTTP service can serve the identical tree
to browser clients; this module only walks it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .errors import AlreadyTerminal, InvalidAnswer, InvalidConfig, NotTerminal
from .metrics import Metric


@dataclass(frozen=True)
class TreeAnswer:
    id: str
    text: str
    next_node: str  # "question:<id>" or "terminal:<id>"


@dataclass(frozen=True)
class TreeQuestion:
    id: str
    text: str
    answers: tuple[TreeAnswer, ...]


@dataclass(frozen=True)
class Terminal:
    id: str
    metrics: tuple[Metric, ...]
    rationale: str


@dataclass(frozen=True)
class TreeState:
    """Position in the interview: the path taken plus the current node."""

    answered: tuple[tuple[str, str], ...]
    current: TreeQuestion | Terminal

    @property
    def is_terminal(self) -> bool:
        return isinstance(self.current, Terminal)


def _load_definition() -> dict:
    raw = resources.files("parityd").joinpath("_data/fairness_tree.json").read_text("utf-8")
    return json.loads(raw)


class FairnessTree:
    """Immutable interview engine over one tree definition."""

    def __init__(self, definition: dict | None = None):
        self.definition = definition if definition is not None else _load_definition()
        self.version: str = self.definition["version"]
        self._questions: dict[str, TreeQuestion] = {}
        self._terminals: dict[str, Terminal] = {}
        for qid, node in self.definition["questions"].items():
            answers = tuple(
                TreeAnswer(id=a["id"], text=a["text"], next_node=a["next"])
                for a in node["answers"]
            )
            ids = [a.id for a in answers]
            if len(set(ids)) != len(ids):
                raise InvalidConfig(f"question {qid!r} has duplicate answer ids")
            self._questions[qid] = TreeQuestion(id=qid, text=node["text"], answers=answers)
        for tid, node in self.definition["terminals"].items():
            metrics = tuple(Metric.parse(m) for m in node["metrics"])
            if not metrics:
                raise InvalidConfig(f"terminal {tid!r} resolves to no metrics")
            self._terminals[tid] = Terminal(id=tid, metrics=metrics, rationale=node["rationale"])
        self._root = self.definition["root"]
        if self._root not in self._questions:
            raise InvalidConfig("tree root is not a known question")
        self._check_finite()

    def _resolve(self, ref: str) -> TreeQuestion | Terminal:
        kind, _, node_id = ref.partition(":")
        if kind == "question" and node_id in self._questions:
            return self._questions[node_id]
        if kind == "terminal" and node_id in self._terminals:
            return self._terminals[node_id]
        raise InvalidConfig(f"dangling tree reference {ref!r}")

    def _check_finite(self) -> None:
        # Walk every edge once; a revisited question means a cycle.
        seen: set[str] = set()
        stack = [self._root]
        while stack:
            qid = stack.pop()
            if qid in seen:
                raise InvalidConfig(f"tree revisits question {qid!r}; must be acyclic")
            seen.add(qid)
            for ans in self._questions[qid].answers:
                node = self._resolve(ans.next_node)
                if isinstance(node, TreeQuestion):
                    stack.append(node.id)

    def start(self) -> TreeState:
        """Fresh interview positioned at the root question."""
        return TreeState(answered=(), current=self._questions[self._root])

    def answer(self, state: TreeState, answer_id: str) -> TreeState:
        """Advance one step; raises on terminal states and unknown answers."""
        if state.is_terminal:
            raise AlreadyTerminal()
        question = state.current
        assert isinstance(question, TreeQuestion)
        for candidate in question.answers:
            if candidate.id == answer_id:
                return TreeState(
                    answered=state.answered + ((question.id, answer_id),),
                    current=self._resolve(candidate.next_node),
                )
        raise InvalidAnswer(question.id, answer_id)

    def replay(self, answer_ids: list[str]) -> TreeState:
        """Apply a whole answer path from the root."""
        state = self.start()
        for answer_id in answer_ids:
            state = self.answer(state, answer_id)
        return state

    def recommended_metrics(self, state: TreeState) -> tuple[Metric, ...]:
        """Metric set of a terminal state; raises :class:`NotTerminal` otherwise."""
        if not state.is_terminal:
            raise NotTerminal()
        terminal = state.current
        assert isinstance(terminal, Terminal)
        return terminal.metrics

    def enumerate_paths(self) -> list[tuple[tuple[str, ...], Terminal]]:
        """Every root-to-terminal answer path; finite by construction."""
        paths: list[tuple[tuple[str, ...], Terminal]] = []

        def walk(qid: str, prefix: tuple[str, ...]) -> None:
            for ans in self._questions[qid].answers:
                node = self._resolve(ans.next_node)
                path = prefix + (ans.id,)
                if isinstance(node, Terminal):
                    paths.append((path, node))
                else:
                    walk(node.id, path)

        walk(self._root, ())
        return paths


_default_tree: FairnessTree | None = None


def default_tree() -> FairnessTree:
    """The packaged tree definition, loaded once."""
    global _default_tree
    if _default_tree is None:
        _default_tree = FairnessTree()
    return _default_tree
