# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import logging
from typing import Callable, List, NamedTuple, Optional, Tuple

from beartype import beartype
from joblib import Parallel, delayed

from .. import preconditions
from ..errors import RagologicError
from ..generation import Dataset, SemanticGroup, TextQuery
from ..judges import Judgement
from ..schema import Answer
from .generators import AnswerGenerator
from .index import SparseIndex
from .retrievers import KEYWORD, RETRIEVERS, RetrievalResult, retrieve

__all__ = ["EvalRecord", "RagPipeline", "run_pipeline"]

_logger = logging.getLogger(__name__)


class EvalRecord(NamedTuple):
    """
    The evaluation trace of one text query.

    Records are immutable; judging and context comparison return updated copies.
    ``error`` marks a record whose response could not be produced.
    """

    query: str
    group_id: str
    linguistic_attr: str
    answer: Answer
    response: str
    judgement: Optional[Judgement] = None
    retrieved_document_ids: Tuple[int, ...] = ()
    true_document_ids: Optional[Tuple[int, ...]] = None
    retrieval_judgement: Optional[str] = None
    retrieved_chunk_ids: Tuple[int, ...] = ()
    context: str = ""
    template: str = ""
    error: Optional[str] = None

    @property
    def correct(self) -> bool:
        return self.judgement is not None and self.judgement.correct


class RagPipeline:
    """
    Retrieval followed by answer generation.

    Parameters
    ----------
    index : Optional[SparseIndex]
        May be ``None`` only for a generator that does not use retrieval.
    generator : AnswerGenerator
    retriever : str, optional (default="keyword")
        ``"keyword"`` or ``"tfidf"``.
    k : int, optional (default=4)
        Chunks retrieved before the budget is applied.
    budget : int, optional (default=512)
        Context budget in tokens.
    """

    @beartype
    def __init__(
        self,
        index: Optional[SparseIndex],
        generator: AnswerGenerator,
        retriever: str = KEYWORD,
        k: int = 4,
        budget: int = 512,
    ):
        preconditions.check_argument(
            retriever in RETRIEVERS,
            f"unknown retriever '{retriever}', expected one of {sorted(RETRIEVERS)}",
        )
        preconditions.check_argument(
            index is not None or not generator.uses_retrieval,
            "an index is required for a generator that uses retrieval",
        )
        self._index = index
        self._generator = generator
        self._retriever = retriever
        self._k = k
        self._budget = budget

    @property
    def retriever(self) -> str:
        return self._retriever

    @property
    def generator(self) -> AnswerGenerator:
        return self._generator

    def retrieve(self, query: str) -> Optional[RetrievalResult]:
        if not self._generator.uses_retrieval or self._index is None:
            return None
        return retrieve(self._retriever, query, self._index, self._k, self._budget)

    def respond(
        self,
        query: str,
        group: SemanticGroup,
        temperature: Optional[float] = None,
        sample: int = 0,
    ) -> Tuple[Optional[RetrievalResult], str]:
        result = self.retrieve(query)
        context = "" if result is None else result.assembled_context
        response = self._generator.answer(query, context, group, temperature, sample)
        return result, response

    def regenerator(
        self, query: str, group: SemanticGroup
    ) -> Callable[[float, int], str]:
        """A ``(temperature, sample) -> response`` callable for ``query``."""

        def _regenerate(temperature: float, sample: int) -> str:
            return self.respond(query, group, temperature, sample)[1]

        return _regenerate


def _run(pipeline: RagPipeline, group: SemanticGroup, query: TextQuery) -> EvalRecord:
    true_ids = (
        None
        if group.gold_document_ids is None
        else tuple(sorted(group.gold_document_ids))
    )
    record = EvalRecord(
        query.text,
        group.group_id,
        query.linguistic_attr,
        group.answer,
        "",
        true_document_ids=true_ids,
        template=query.template,
    )
    try:
        result, response = pipeline.respond(query.text, group)
    except RagologicError as error:
        _logger.warning(f"no response for {query.text!r}: {error}")
        return record._replace(error=f"{type(error).__name__}: {error}")
    if result is None:
        return record._replace(response=response)
    return record._replace(
        response=response,
        retrieved_document_ids=result.document_ids,
        retrieved_chunk_ids=result.ranked_chunk_ids,
        context=result.assembled_context,
    )


@beartype
def run_pipeline(
    dataset: Dataset, pipeline: RagPipeline, n_jobs: int = 1
) -> List[EvalRecord]:
    """
    Answers every text query of ``dataset`` through ``pipeline``.

    Records come back in dataset order. A query whose response fails is kept with
    its ``error`` set so the rest of the run proceeds.
    """
    preconditions.check_argument(len(dataset) > 0, "dataset must not be empty")
    records = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_run)(pipeline, group, query)
        for group in dataset
        for query in group.text_queries
    )
    failed = sum(1 for record in records if record.error is not None)
    if failed:
        _logger.warning(f"{failed} of {len(records)} queries failed")
    _logger.info(
        f"answered {len(records) - failed} queries with the {pipeline.retriever} "
        f"retriever"
    )
    return list(records)
