# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Group tags and the accuracies derived from them.

A semantic group is a ``Gap`` group when every one of its text queries was answered
incorrectly, ``Robust`` when every one was answered correctly and ``NonRobust``
otherwise. Gap groups point at knowledge missing from the retrieval database; the
other failures are failures of the retriever or the language model.

With ``Acc`` the plain accuracy, ``lambda`` the share of queries that belong to Gap
groups and ``R`` the accuracy over the remaining queries, ``Acc = R * (1 - lambda)``.
"""

import logging
from collections import OrderedDict
from typing import Dict, List, NamedTuple, Sequence

import numpy as np
from beartype import beartype

from ..errors import AllGroupsGap, EmptyTagList, UnjudgedRecord
from ..retrieval import EvalRecord

__all__ = [
    "GAP",
    "ROBUST",
    "NON_ROBUST",
    "TAGS",
    "GroupTag",
    "Accuracy",
    "usable_records",
    "group_records",
    "tag_groups",
    "tag_counts",
    "gap_group_ids",
    "acc_retrieval_db",
    "refined_accuracy",
]

_logger = logging.getLogger(__name__)

GAP = "Gap"
ROBUST = "Robust"
NON_ROBUST = "NonRobust"
TAGS = (GAP, ROBUST, NON_ROBUST)


class GroupTag(NamedTuple):
    group_id: str
    tag: str


class Accuracy(NamedTuple):
    accuracy: float
    refined: float
    gap_ratio: float


def usable_records(records: Sequence[EvalRecord]) -> List[EvalRecord]:
    """Records without an error marker; the others take no part in any metric."""
    usable = [record for record in records if record.error is None]
    if len(usable) != len(records):
        _logger.warning(
            f"{len(records) - len(usable)} records with errors are left out"
        )
    return usable


def group_records(records: Sequence[EvalRecord]) -> Dict[str, List[EvalRecord]]:
    """Records by group id, groups in order of first appearance."""
    groups: Dict[str, List[EvalRecord]] = OrderedDict()
    for record in records:
        groups.setdefault(record.group_id, []).append(record)
    return groups


@beartype
def tag_groups(records: Sequence[EvalRecord]) -> List[GroupTag]:
    """
    Tags every group of ``records``.

    >>> from ragologic.judges import Judgement
    >>> from ragologic.schema import make_answer
    >>> def record(group, verdict):
    ...     return EvalRecord("q", group, "short", make_answer([("a",)]), "",
    ...                       Judgement(verdict, "normalized_match", ""))
    >>> tags = tag_groups([record("g1", "Incorrect"), record("g1", "Incorrect"),
    ...                    record("g2", "Correct"), record("g3", "Incorrect"),
    ...                    record("g3", "Correct")])
    >>> [(entry.group_id, entry.tag) for entry in tags]
    [('g1', 'Gap'), ('g2', 'Robust'), ('g3', 'NonRobust')]

    Raises
    ------
    UnjudgedRecord
        If a record without an error marker carries no judgement.
    """
    tags = []
    for group_id, members in group_records(usable_records(records)).items():
        for member in members:
            if member.judgement is None:
                raise UnjudgedRecord(
                    f"{member.query!r} of group {group_id} is unjudged"
                )
        correct = sum(1 for member in members if member.correct)
        if correct == 0:
            tag = GAP
        elif correct == len(members):
            tag = ROBUST
        else:
            tag = NON_ROBUST
        tags.append(GroupTag(group_id, tag))
    return tags


def tag_counts(tags: Sequence[GroupTag]) -> Dict[str, int]:
    counts = {tag: 0 for tag in TAGS}
    for entry in tags:
        counts[entry.tag] += 1
    return counts


def gap_group_ids(tags: Sequence[GroupTag]) -> frozenset:
    return frozenset(entry.group_id for entry in tags if entry.tag == GAP)


@beartype
def acc_retrieval_db(tags: Sequence[GroupTag]) -> float:
    """
    The share of groups that are not Gap groups.

    >>> acc_retrieval_db([GroupTag("a", "Gap"), GroupTag("b", "Robust"),
    ...                   GroupTag("c", "NonRobust"), GroupTag("d", "Robust")])
    0.75

    Raises
    ------
    EmptyTagList
    """
    if len(tags) == 0:
        raise EmptyTagList("no groups to measure the retrieval database with")
    gaps = sum(1 for entry in tags if entry.tag == GAP)
    return 1.0 - gaps / len(tags)


@beartype
def refined_accuracy(
    records: Sequence[EvalRecord], tags: Sequence[GroupTag]
) -> Accuracy:
    """
    Plain accuracy, refined accuracy and gap ratio of ``records``.

    Returns
    -------
    Accuracy
        ``(accuracy, refined, gap_ratio)`` with
        ``accuracy == refined * (1 - gap_ratio)``.

    Raises
    ------
    AllGroupsGap
        If every query lies in a Gap group, leaving the refined accuracy undefined.
    """
    usable = usable_records(records)
    if len(usable) == 0:
        raise EmptyTagList("no records to measure")
    gaps = gap_group_ids(tags)
    correct = np.array([record.correct for record in usable])
    in_gap = np.array([record.group_id in gaps for record in usable])
    total = len(usable)
    gap_instances = int(np.sum(in_gap))
    if gap_instances == total:
        raise AllGroupsGap("every query belongs to a Gap group")
    hits = int(np.sum(correct))
    return Accuracy(hits / total, hits / (total - gap_instances), gap_instances / total)
