# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import logging
from typing import List, Sequence

from beartype import beartype

from ..errors import MisalignedInputs
from ..judges import Judgement
from ..retrieval import EvalRecord

__all__ = ["open_domain_groups", "filter_open_domain"]

_logger = logging.getLogger(__name__)


@beartype
def open_domain_groups(
    records: Sequence[EvalRecord], llm_only_answers: Sequence[Judgement]
) -> frozenset:
    """
    Ids of the groups that a system without retrieval answers at least once.

    Raises
    ------
    MisalignedInputs
        If ``llm_only_answers`` does not hold one judgement per record.
    """
    if len(records) != len(llm_only_answers):
        raise MisalignedInputs(
            f"{len(records)} records but {len(llm_only_answers)} LLM-only answers"
        )
    return frozenset(
        record.group_id
        for record, judgement in zip(records, llm_only_answers)
        if judgement.correct
    )


@beartype
def filter_open_domain(
    records: Sequence[EvalRecord], llm_only_answers: Sequence[Judgement]
) -> List[EvalRecord]:
    """
    The closed-domain subset of ``records``.

    A group is open-domain when the LLM-only system answers any of its queries
    correctly: whether the retrieval database holds its fact can no longer be read
    from its tag, so the whole group is dropped.

    >>> from ragologic.schema import make_answer
    >>> def record(group):
    ...     return EvalRecord("q", group, "short", make_answer([("a",)]), "")
    >>> correct = Judgement("Correct", "normalized_match", "")
    >>> incorrect = Judgement("Incorrect", "normalized_match", "")
    >>> kept = filter_open_domain([record("g1"), record("g1"), record("g2")],
    ...                           [incorrect, correct, incorrect])
    >>> [entry.group_id for entry in kept]
    ['g2']

    Raises
    ------
    MisalignedInputs
    """
    open_domain = open_domain_groups(records, llm_only_answers)
    kept = [record for record in records if record.group_id not in open_domain]
    _logger.info(
        f"removed {len(open_domain)} open-domain groups, "
        f"{len(records) - len(kept)} of {len(records)} records"
    )
    return kept
