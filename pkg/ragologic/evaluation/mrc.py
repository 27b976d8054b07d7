# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Data-quality check by machine reading comprehension.

Every text query is answered with its group's gold documents as the only context.
A generator that reads well fails here only where the gold documents do not state
the answer, which flags groups whose expected knowledge is missing from the corpus.
"""

import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

from beartype import beartype
from joblib import Parallel, delayed

from .. import preconditions
from ..backends import CompletionBackend
from ..errors import EmptyTagList, RagologicError
from ..generation import Dataset, SemanticGroup, TextQuery
from ..judges import SELFCHECK_JUDGE, JudgeConfig, judge
from ..prompts import PromptCatalog
from ..retrieval import CHUNK_SEPARATOR, AnswerGenerator, Corpus, EvalRecord
from .tags import gap_group_ids, tag_groups

__all__ = ["MrcFailure", "MrcReport", "gold_context", "mrc_check"]

_logger = logging.getLogger(__name__)


class MrcFailure(NamedTuple):
    query: str
    group_id: str
    response: str
    in_gap_group: Optional[bool] = None


class MrcReport(NamedTuple):
    """
    ``accuracy`` is over the answered queries; ``skipped`` counts the queries of
    groups without gold documents. ``gap_overlap`` is the share of failures that
    belong to a Gap group of the compared results, when results were given.
    """

    accuracy: float
    total: int
    correct: int
    skipped: int
    failures: Tuple[MrcFailure, ...]
    gap_overlap: Optional[float] = None


def gold_context(group: SemanticGroup, corpus: Corpus) -> Optional[str]:
    """The bodies of the group's gold documents present in ``corpus``, in id order."""
    if not group.gold_document_ids:
        return None
    known = {document.doc_id for document in corpus}
    bodies = [
        corpus.document(doc_id).body
        for doc_id in sorted(group.gold_document_ids)
        if doc_id in known
    ]
    if not bodies:
        return None
    return CHUNK_SEPARATOR.join(bodies)


def _answer_one(
    group: SemanticGroup,
    query: TextQuery,
    context: str,
    generator: AnswerGenerator,
    config: JudgeConfig,
    backend: Optional[CompletionBackend],
    catalog: Optional[PromptCatalog],
) -> Tuple[str, bool]:
    try:
        response = generator.answer(query.text, context, group)
        judgement = judge(
            config,
            query.text,
            group.answer,
            response,
            context,
            backend=backend,
            catalog=catalog,
        )
    except RagologicError as error:
        _logger.warning(f"reading check of {query.text!r} failed: {error}")
        return f"{type(error).__name__}: {error}", False
    return response, judgement.correct


@beartype
def mrc_check(
    dataset: Dataset,
    corpus: Corpus,
    generator: AnswerGenerator,
    config: JudgeConfig = JudgeConfig(),
    backend: Optional[CompletionBackend] = None,
    results: Optional[Sequence[EvalRecord]] = None,
    catalog: Optional[PromptCatalog] = None,
    n_jobs: int = 1,
) -> MrcReport:
    """
    Answers every query from its gold documents and reports the failures.

    Parameters
    ----------
    dataset : Dataset
        Groups with provenance attached; the others are skipped.
    corpus : Corpus
        The documents the gold ids refer to.
    generator : AnswerGenerator
    config : JudgeConfig
        ``selfcheck`` is not available without a retrieval pipeline.
    backend : Optional[CompletionBackend]
    results : Optional[Sequence[EvalRecord]]
        Judged results of a retrieval run; when given every failure is marked with
        whether its group is a Gap group there.
    catalog : Optional[PromptCatalog]
    n_jobs : int, optional (default=1)

    Raises
    ------
    EmptyTagList
        If no group has gold documents.
    """
    preconditions.check_argument(
        config.method != SELFCHECK_JUDGE,
        "the reading check cannot regenerate responses for selfcheck",
    )
    tasks: List[Tuple[SemanticGroup, TextQuery, str]] = []
    skipped = 0
    for group in dataset:
        context = gold_context(group, corpus)
        if context is None:
            skipped += len(group.text_queries)
            continue
        tasks.extend((group, query, context) for query in group.text_queries)
    if not tasks:
        raise EmptyTagList("no group has gold documents to read")
    outcomes = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_answer_one)(group, query, context, generator, config, backend, catalog)
        for group, query, context in tasks
    )
    gaps = None if results is None else gap_group_ids(tag_groups(results))
    failures = tuple(
        MrcFailure(
            query.text,
            group.group_id,
            response,
            None if gaps is None else group.group_id in gaps,
        )
        for (group, query, _), (response, correct) in zip(tasks, outcomes)
        if not correct
    )
    correct = len(tasks) - len(failures)
    overlap = None
    if gaps is not None and failures:
        overlap = sum(1 for failure in failures if failure.in_gap_group) / len(
            failures
        )
    if skipped:
        _logger.warning(f"{skipped} queries have no gold documents and were skipped")
    _logger.info(f"reading check answered {correct} of {len(tasks)} queries correctly")
    return MrcReport(
        correct / len(tasks), len(tasks), correct, skipped, failures, overlap
    )
