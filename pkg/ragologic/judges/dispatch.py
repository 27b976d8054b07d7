# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from typing import NamedTuple, Optional

from beartype import beartype

from .. import preconditions
from ..backends import CompletionBackend
from ..prompts import PromptCatalog
from ..schema import Answer
from .classes import Judgement
from .ragas import ragas_fact
from .reference import judge_match, judge_reference
from .selfcheck import SELFCHECK_SAMPLES, SELFCHECK_TEMPERATURE, Regenerate, selfcheck

__all__ = ["MATCH", "LLM", "RAGAS", "SELFCHECK_JUDGE", "JUDGES", "JudgeConfig", "judge"]

MATCH = "match"
LLM = "llm"
RAGAS = "ragas"
SELFCHECK_JUDGE = "selfcheck"
JUDGES = (MATCH, LLM, RAGAS, SELFCHECK_JUDGE)


class JudgeConfig(NamedTuple):
    method: str = MATCH
    threshold: float = 0.5
    samples: int = SELFCHECK_SAMPLES
    temperature: float = SELFCHECK_TEMPERATURE


@beartype
def judge(
    config: JudgeConfig,
    query: str,
    truth: Answer,
    response: str,
    context: str = "",
    regenerate: Optional[Regenerate] = None,
    backend: Optional[CompletionBackend] = None,
    catalog: Optional[PromptCatalog] = None,
) -> Judgement:
    """
    Judges one response with the configured method.

    ``match`` compares matching forms only and needs no backend. ``llm`` adds the
    reference judge prompt, ``ragas`` scores faithfulness to ``context`` and
    ``selfcheck`` compares against regenerations drawn through ``regenerate``;
    ``ragas`` and ``selfcheck`` never look at ``truth``.
    """
    preconditions.check_argument(
        config.method in JUDGES,
        f"unknown judge '{config.method}', expected one of {list(JUDGES)}",
    )
    if config.method == MATCH:
        return judge_match(truth, response)
    preconditions.check_argument(
        backend is not None, f"the '{config.method}' judge needs a backend"
    )
    if config.method == LLM:
        return judge_reference(query, truth, response, backend, catalog)
    if config.method == RAGAS:
        _, judgement = ragas_fact(
            context, response, backend, query, config.threshold, catalog
        )
        return judgement
    preconditions.check_argument(
        regenerate is not None, "the 'selfcheck' judge needs a pipeline to regenerate"
    )
    return selfcheck(
        query,
        response,
        regenerate,
        backend,
        config.samples,
        config.temperature,
        catalog,
    )
