# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import logging
from typing import List, NamedTuple, Sequence

from beartype import beartype

from .. import preconditions
from ..retrieval import EvalRecord
from .tags import group_records

__all__ = [
    "SUFFICIENT",
    "INSUFFICIENT",
    "INDETERMINATE",
    "INTERSECTION",
    "STRICT",
    "MATCH_RULES",
    "ComparisonSummary",
    "context_comparison",
    "compare_contexts",
    "summarize_comparisons",
]

_logger = logging.getLogger(__name__)

SUFFICIENT = "sufficient"
INSUFFICIENT = "insufficient"
INDETERMINATE = "indeterminate"

INTERSECTION = "intersection"
STRICT = "strict"
MATCH_RULES = (INTERSECTION, STRICT)


class ComparisonSummary(NamedTuple):
    sufficient: int
    insufficient: int
    indeterminate: int
    disagreements: int


def _matches(target: frozenset, candidate: frozenset, rule: str) -> bool:
    if rule == STRICT:
        return target == candidate
    return len(target & candidate) > 0


@beartype
def context_comparison(
    target: EvalRecord,
    group_records: Sequence[EvalRecord],
    rule: str = INTERSECTION,
) -> str:
    """
    Decides whether retrieval gave ``target`` enough context, by comparing its
    retrieved documents with those of the correctly answered members of its group.

    With the ``intersection`` rule the target is sufficient when it shares a document
    with some correct member; with ``strict`` its document set must equal one. A
    correct target is always sufficient, even without retrieved documents. A group
    without a correct member is indeterminate.

    >>> from ragologic.judges import Judgement
    >>> from ragologic.schema import make_answer
    >>> def record(verdict, documents):
    ...     return EvalRecord("q", "g", "long", make_answer([("a",)]), "",
    ...                       Judgement(verdict, "normalized_match", ""), documents)
    >>> target = record("Incorrect", (4, 9))
    >>> context_comparison(target, [target, record("Correct", (9, 2))])
    'sufficient'
    >>> context_comparison(target, [target, record("Correct", (9, 2))], "strict")
    'insufficient'
    >>> context_comparison(target, [target])
    'indeterminate'
    """
    preconditions.check_argument(
        rule in MATCH_RULES, f"rule must be one of {list(MATCH_RULES)}"
    )
    preconditions.check_argument(
        all(record.group_id == target.group_id for record in group_records),
        f"every record must belong to group {target.group_id}",
    )
    candidates = [
        frozenset(record.retrieved_document_ids)
        for record in [target, *group_records]
        if record.correct
    ]
    if not candidates:
        return INDETERMINATE
    if target.correct:
        return SUFFICIENT
    documents = frozenset(target.retrieved_document_ids)
    if any(_matches(documents, candidate, rule) for candidate in candidates):
        return SUFFICIENT
    return INSUFFICIENT


@beartype
def compare_contexts(
    records: Sequence[EvalRecord], rule: str = INTERSECTION
) -> List[EvalRecord]:
    """
    Sets ``retrieval_judgement`` on every record, comparing within its group.

    Records carrying an error marker are returned unchanged. The number of records
    on which the two match rules disagree is logged.
    """
    groups = group_records([record for record in records if record.error is None])
    compared = []
    for record in records:
        if record.error is not None:
            compared.append(record)
            continue
        members = groups[record.group_id]
        compared.append(
            record._replace(
                retrieval_judgement=context_comparison(record, members, rule)
            )
        )
    summary = summarize_comparisons(compared)
    if summary.disagreements:
        _logger.info(
            f"intersection and strict matching disagree on "
            f"{summary.disagreements} records"
        )
    return compared


def summarize_comparisons(compared: Sequence[EvalRecord]) -> ComparisonSummary:
    """Counts of the comparison outcomes and of the rule disagreements."""
    groups = group_records([record for record in compared if record.error is None])
    counts = {SUFFICIENT: 0, INSUFFICIENT: 0, INDETERMINATE: 0}
    disagreements = 0
    for record in compared:
        if record.retrieval_judgement is None:
            continue
        counts[record.retrieval_judgement] += 1
        members = groups[record.group_id]
        if context_comparison(record, members, INTERSECTION) != context_comparison(
            record, members, STRICT
        ):
            disagreements += 1
    return ComparisonSummary(
        counts[SUFFICIENT], counts[INSUFFICIENT], counts[INDETERMINATE], disagreements
    )
