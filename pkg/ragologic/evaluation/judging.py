# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import logging
from typing import List, Optional, Sequence

from beartype import beartype
from joblib import Parallel, delayed

from ..backends import CompletionBackend
from ..errors import RagologicError
from ..generation import Dataset
from ..judges import SELFCHECK_JUDGE, JudgeConfig, judge
from ..prompts import PromptCatalog
from ..retrieval import EvalRecord, RagPipeline

__all__ = ["judge_records"]

_logger = logging.getLogger(__name__)


def _judge_one(
    record: EvalRecord,
    dataset: Dataset,
    config: JudgeConfig,
    backend: Optional[CompletionBackend],
    pipeline: Optional[RagPipeline],
    catalog: Optional[PromptCatalog],
) -> EvalRecord:
    if record.error is not None:
        return record
    regenerate = None
    if config.method == SELFCHECK_JUDGE and pipeline is not None:
        regenerate = pipeline.regenerator(
            record.query, dataset.group(record.group_id)
        )
    try:
        judgement = judge(
            config,
            record.query,
            record.answer,
            record.response,
            record.context,
            regenerate,
            backend,
            catalog,
        )
    except RagologicError as error:
        _logger.warning(f"could not judge {record.query!r}: {error}")
        return record._replace(error=f"{type(error).__name__}: {error}")
    return record._replace(judgement=judgement)


@beartype
def judge_records(
    records: Sequence[EvalRecord],
    dataset: Dataset,
    config: JudgeConfig = JudgeConfig(),
    backend: Optional[CompletionBackend] = None,
    pipeline: Optional[RagPipeline] = None,
    catalog: Optional[PromptCatalog] = None,
    n_jobs: int = 1,
) -> List[EvalRecord]:
    """
    Judges every record with the configured method.

    Records that already carry an error are passed through. A record whose judge
    fails keeps no judgement and gets an error marker instead, so a single
    unparseable reply does not stop the run.

    Parameters
    ----------
    records : Sequence[EvalRecord]
    dataset : Dataset
        The dataset the records were answered from; ``selfcheck`` regenerates
        responses for its groups.
    config : JudgeConfig
    backend : Optional[CompletionBackend]
        Required by every method but ``match``.
    pipeline : Optional[RagPipeline]
        Required by ``selfcheck``.
    catalog : Optional[PromptCatalog]
    n_jobs : int, optional (default=1)
        Concurrent judge calls.
    """
    judged = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_judge_one)(record, dataset, config, backend, pipeline, catalog)
        for record in records
    )
    correct = sum(1 for record in judged if record.correct)
    _logger.info(
        f"judged {len(judged)} records with '{config.method}', {correct} correct"
    )
    return list(judged)
