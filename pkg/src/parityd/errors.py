"""Exception types shared across the audit engine.

Every error carries a stable ``code`` string so the CLI and the HTTP
service can surface machine-readable failures without string matching.
"""

from __future__ import annotations


class AuditError(Exception):
    """Base class for all engine errors."""

    code = "AuditError"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class MissingColumn(AuditError):
    code = "MissingColumn"

    def __init__(self, name: str):
        super().__init__(f"column {name!r} not found in header")
        self.name = name


class BadLabelValue(AuditError):
    code = "BadLabelValue"

    def __init__(self, row: int, cell: str):
        super().__init__(f"row {row}: cannot read {cell!r} as a binary label")
        self.row = row
        self.cell = cell


class BadScoreValue(AuditError):
    code = "BadScoreValue"

    def __init__(self, row: int, cell: str):
        super().__init__(f"row {row}: cannot read {cell!r} as a finite score")
        self.row = row
        self.cell = cell


class DuplicateEntityId(AuditError):
    code = "DuplicateEntityId"

    def __init__(self, entity_id: str):
        super().__init__(f"duplicate entity id {entity_id!r}")
        self.entity_id = entity_id


class EmptyDataset(AuditError):
    code = "EmptyDataset"

    def __init__(self, message: str = "input contains no data rows"):
        super().__init__(message)


class TooManyGroups(AuditError):
    code = "TooManyGroups"

    def __init__(self, attribute: str, distinct: int, cap: int):
        super().__init__(
            f"attribute {attribute!r} has {distinct} distinct values (cap {cap}); "
            "bucket continuous attributes before auditing"
        )
        self.attribute = attribute
        self.distinct = distinct
        self.cap = cap


class UnknownAttribute(AuditError):
    code = "UnknownAttribute"

    def __init__(self, attribute: str):
        super().__init__(f"attribute {attribute!r} is not in the dataset schema")
        self.attribute = attribute


class PolicyDatasetMismatch(AuditError):
    code = "PolicyDatasetMismatch"

    def __init__(self, message: str):
        super().__init__(message)


class FixedGroupAbsent(AuditError):
    code = "FixedGroupAbsent"

    def __init__(self, attribute: str, group_value: str):
        super().__init__(
            f"fixed reference group {group_value!r} does not exist for attribute {attribute!r}"
        )
        self.attribute = attribute
        self.group_value = group_value


class NoDefinedMetric(AuditError):
    code = "NoDefinedMetric"

    def __init__(self, attribute: str, metric: str):
        super().__init__(
            f"cannot pick a minimum-{metric} reference for {attribute!r}: "
            "the metric is undefined for every group"
        )
        self.attribute = attribute
        self.metric = metric


class InvalidAnswer(AuditError):
    code = "InvalidAnswer"

    def __init__(self, question_id: str, answer_id: str):
        super().__init__(f"answer {answer_id!r} is not valid for question {question_id!r}")
        self.question_id = question_id
        self.answer_id = answer_id


class AlreadyTerminal(AuditError):
    code = "AlreadyTerminal"

    def __init__(self):
        super().__init__("the interview already reached a terminal node")


class NotTerminal(AuditError):
    code = "NotTerminal"

    def __init__(self):
        super().__init__("the interview has not reached a terminal node yet")


class InvalidConfig(AuditError):
    code = "InvalidConfig"

    def __init__(self, message: str):
        super().__init__(message)
