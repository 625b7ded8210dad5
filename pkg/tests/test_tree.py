import copy

import pytest

from parityd import (
    AlreadyTerminal,
    FairnessTree,
    InvalidAnswer,
    InvalidConfig,
    Metric,
    NotTerminal,
    Terminal,
    default_tree,
)

# Pinned contract: each full answer path and the metric set it must land on.
EXPECTED_LEAVES = {
    ("no-labels-used",): {Metric.PPREV, Metric.PPR},
    ("uses-labels", "assistive", "small-fraction"): {Metric.FOR},
    ("uses-labels", "assistive", "full-population"): {Metric.FNR, Metric.FOR},
    ("uses-labels", "punitive", "small-fraction"): {Metric.FDR},
    ("uses-labels", "punitive", "full-population"): {Metric.FPR},
    ("uses-labels", "both"): {Metric.FDR, Metric.FOR},
}


def test_packaged_tree_version():
    assert default_tree().version == "1"


def test_enumerates_exactly_six_paths():
    paths = default_tree().enumerate_paths()
    assert len(paths) == 6
    assert {p for p, _ in paths} == set(EXPECTED_LEAVES)


@pytest.mark.parametrize("path", sorted(EXPECTED_LEAVES), ids="/".join)
def test_each_path_lands_on_its_metric_set(path):
    tree = default_tree()
    state = tree.replay(list(path))
    assert state.is_terminal
    assert set(tree.recommended_metrics(state)) == EXPECTED_LEAVES[path]


def test_terminal_metrics_are_a_subset_of_the_audit_metrics():
    for _, terminal in default_tree().enumerate_paths():
        assert set(terminal.metrics) <= set(Metric)
        assert terminal.rationale.strip()


def test_start_is_fresh_and_deterministic():
    tree = default_tree()
    a, b = tree.start(), tree.start()
    assert a == b
    assert a.answered == ()
    assert not a.is_terminal
    assert a.current.id == "labels"


def test_answer_does_not_mutate_prior_state():
    tree = default_tree()
    start = tree.start()
    advanced = tree.answer(start, "uses-labels")
    assert start.answered == ()
    assert advanced.answered == (("labels", "uses-labels"),)
    assert advanced.current.id == "intervention"


def test_replaying_a_states_own_path_reproduces_it():
    tree = default_tree()
    for path in EXPECTED_LEAVES:
        state = tree.replay(list(path))
        again = tree.replay([aid for _, aid in state.answered])
        assert again == state


def test_unknown_answer_raises_with_context():
    tree = default_tree()
    with pytest.raises(InvalidAnswer) as exc:
        tree.answer(tree.start(), "bogus")
    assert "bogus" in str(exc.value)
    assert "labels" in str(exc.value)


def test_answer_after_terminal_raises():
    tree = default_tree()
    state = tree.replay(["no-labels-used"])
    with pytest.raises(AlreadyTerminal):
        tree.answer(state, "uses-labels")


def test_metrics_of_non_terminal_state_raises():
    tree = default_tree()
    with pytest.raises(NotTerminal):
        tree.recommended_metrics(tree.start())
    with pytest.raises(NotTerminal):
        tree.recommended_metrics(tree.replay(["uses-labels"]))


TINY_DEFINITION = {
    "version": "test",
    "root": "q1",
    "questions": {
        "q1": {
            "text": "?",
            "answers": [
                {"id": "yes", "text": "y", "next": "terminal:t1"},
                {"id": "no", "text": "n", "next": "terminal:t2"},
            ],
        }
    },
    "terminals": {
        "t1": {"metrics": ["FDR"], "rationale": "r1"},
        "t2": {"metrics": ["FOR"], "rationale": "r2"},
    },
}


def broken(mutate):
    definition = copy.deepcopy(TINY_DEFINITION)
    mutate(definition)
    return definition


def test_custom_definition_walks():
    tree = FairnessTree(TINY_DEFINITION)
    state = tree.replay(["yes"])
    assert tree.recommended_metrics(state) == (Metric.FDR,)
    assert isinstance(state.current, Terminal)


def test_duplicate_answer_ids_rejected():
    definition = broken(
        lambda d: d["questions"]["q1"]["answers"].append(
            {"id": "yes", "text": "again", "next": "terminal:t2"}
        )
    )
    with pytest.raises(InvalidConfig):
        FairnessTree(definition)


def test_dangling_reference_rejected():
    definition = broken(
        lambda d: d["questions"]["q1"]["answers"].__setitem__(
            0, {"id": "yes", "text": "y", "next": "terminal:nowhere"}
        )
    )
    with pytest.raises(InvalidConfig):
        FairnessTree(definition)


def test_unknown_root_rejected():
    definition = broken(lambda d: d.__setitem__("root", "missing"))
    with pytest.raises(InvalidConfig):
        FairnessTree(definition)


def test_terminal_without_metrics_rejected():
    definition = broken(lambda d: d["terminals"]["t1"].__setitem__("metrics", []))
    with pytest.raises(InvalidConfig):
        FairnessTree(definition)


def test_unparseable_metric_name_rejected():
    definition = broken(
        lambda d: d["terminals"]["t1"].__setitem__("metrics", ["Accuracy"])
    )
    with pytest.raises(InvalidConfig):
        FairnessTree(definition)


def test_cycle_rejected():
    def add_cycle(d):
        d["questions"]["q2"] = {
            "text": "loop",
            "answers": [{"id": "back", "text": "b", "next": "question:q1"}],
        }
        d["questions"]["q1"]["answers"][0] = {
            "id": "yes",
            "text": "y",
            "next": "question:q2",
        }

    with pytest.raises(InvalidConfig):
        FairnessTree(broken(add_cycle))


def test_packaged_definition_is_served_verbatim():
    # The HTTP layer ships tree.definition to browsers; it must stay the
    # parsed JSON document, not a transformed copy.
    tree = default_tree()
    assert tree.definition["root"] == "labels"
    assert set(tree.definition["questions"]) == {
        "labels", "intervention", "assistive-scope", "punitive-scope",
    }
    assert len(tree.definition["terminals"]) == 6
