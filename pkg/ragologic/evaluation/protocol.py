# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import logging
from typing import List, NamedTuple, Optional, Sequence

from beartype import beartype

from .. import preconditions
from ..backends import CompletionBackend
from ..generation import Dataset
from ..judges import (
    INCORRECT,
    LLM,
    LLM_JUDGE,
    MATCH,
    NORMALIZED_MATCH,
    RAGAS,
    RAGAS_FACT,
    SELFCHECK,
    SELFCHECK_JUDGE,
    JudgeConfig,
    Judgement,
)
from ..prompts import PromptCatalog
from ..retrieval import (
    KEYWORD,
    AnswerGenerator,
    Corpus,
    EvalRecord,
    RagPipeline,
    attach_provenance,
    build_index,
    run_pipeline,
)
from .context import INTERSECTION, compare_contexts
from .judging import judge_records
from .open_domain import filter_open_domain, open_domain_groups
from .report import ModularReport, build_report
from .strategies import GAP_STRATEGIES, RETRIEVAL_STRATEGIES

__all__ = ["EvalConfig", "EvalOutcome", "evaluate", "closed_book_judgements"]

_logger = logging.getLogger(__name__)

_METHODS = {
    MATCH: NORMALIZED_MATCH,
    LLM: LLM_JUDGE,
    RAGAS: RAGAS_FACT,
    SELFCHECK_JUDGE: SELFCHECK,
}


class EvalConfig(NamedTuple):
    retriever: str = KEYWORD
    k: int = 4
    budget: int = 512
    chunk_size: int = 128
    judge: JudgeConfig = JudgeConfig()
    gap_strategies: Sequence[str] = GAP_STRATEGIES
    retrieval_strategies: Sequence[str] = RETRIEVAL_STRATEGIES
    seed: int = 0
    rule: str = INTERSECTION
    n_jobs: int = 1


class EvalOutcome(NamedTuple):
    records: List[EvalRecord]
    report: ModularReport
    closed_book: Optional[List[EvalRecord]] = None


@beartype
def closed_book_judgements(
    dataset: Dataset,
    generator: AnswerGenerator,
    config: JudgeConfig = JudgeConfig(),
    backend: Optional[CompletionBackend] = None,
    catalog: Optional[PromptCatalog] = None,
    n_jobs: int = 1,
) -> List[EvalRecord]:
    """
    Judged answers of a system without retrieval, one per text query in dataset
    order. A failed answer counts as incorrect.
    """
    preconditions.check_argument(
        not generator.uses_retrieval, "the closed-book generator must not retrieve"
    )
    pipeline = RagPipeline(None, generator)
    records = run_pipeline(dataset, pipeline, n_jobs)
    judged = judge_records(records, dataset, config, backend, pipeline, catalog, n_jobs)
    failed = Judgement(INCORRECT, _METHODS[config.method], "")
    return [
        record if record.judgement is not None else record._replace(judgement=failed)
        for record in judged
    ]


@beartype
def evaluate(
    dataset: Dataset,
    corpus: Corpus,
    generator: AnswerGenerator,
    config: EvalConfig = EvalConfig(),
    backend: Optional[CompletionBackend] = None,
    closed_book: Optional[AnswerGenerator] = None,
    catalog: Optional[PromptCatalog] = None,
) -> EvalOutcome:
    """
    Runs the modular evaluation of ``generator`` over ``corpus``.

    Gold provenance is attached first when the dataset carries none. Every text
    query is answered through the retrieval pipeline and judged, context
    comparison is applied, and the report is built. With a ``closed_book``
    generator, groups it answers correctly are removed as open-domain before the
    report is built; the returned records still cover the whole dataset.

    Parameters
    ----------
    dataset : Dataset
    corpus : Corpus
    generator : AnswerGenerator
    config : EvalConfig
    backend : Optional[CompletionBackend]
        Used by the judges that need one.
    closed_book : Optional[AnswerGenerator]
        A generator without retrieval for open-domain filtering.
    catalog : Optional[PromptCatalog]
    """
    if all(group.gold_document_ids is None for group in dataset):
        dataset = attach_provenance(dataset, corpus)
    index = build_index(corpus, config.chunk_size)
    pipeline = RagPipeline(index, generator, config.retriever, config.k, config.budget)
    records = run_pipeline(dataset, pipeline, config.n_jobs)
    records = judge_records(
        records, dataset, config.judge, backend, pipeline, catalog, config.n_jobs
    )
    records = compare_contexts(records, config.rule)
    scored = records
    removed = 0
    closed_records = None
    if closed_book is not None:
        closed_records = closed_book_judgements(
            dataset, closed_book, config.judge, backend, catalog, config.n_jobs
        )
        answers = [record.judgement for record in closed_records]
        removed = len(open_domain_groups(records, answers))
        scored = filter_open_domain(records, answers)
    report = build_report(
        scored,
        config.gap_strategies,
        config.retrieval_strategies,
        config.seed,
        config.rule,
        removed,
    )
    _logger.info(
        f"evaluated {len(records)} text queries of {len(dataset)} groups with the "
        f"{config.retriever} retriever"
    )
    return EvalOutcome(records, report, closed_records)
