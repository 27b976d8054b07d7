# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import logging
from typing import Optional

from beartype import beartype

from ..backends import CompletionBackend
from ..errors import JudgeParseFailure
from ..prompts import REFERENCE_JUDGE, PromptCatalog, default_catalog
from ..schema import Answer, normalize_answer
from .classes import (
    CORRECT,
    INCORRECT,
    LLM_JUDGE,
    NORMALIZED_MATCH,
    Judgement,
    first_token,
)

__all__ = ["judge_match", "judge_reference"]

_logger = logging.getLogger(__name__)


@beartype
def judge_match(truth: Answer, response: str) -> Judgement:
    """
    Compares the matching forms of the ground truth and the response.

    >>> from ragologic.schema import make_answer
    >>> judge_match(make_answer([("Maldives",)]), "Maldives").verdict
    'Correct'
    >>> judge_match(make_answer([("Maldives",)]), "I don't know").verdict
    'Incorrect'
    """
    expected = normalize_answer(truth.text)
    given = normalize_answer(response)
    verdict = CORRECT if expected and expected == given else INCORRECT
    return Judgement(verdict, NORMALIZED_MATCH, f"{expected!r} vs {given!r}")


@beartype
def judge_reference(
    query: str,
    truth: Answer,
    response: str,
    backend: CompletionBackend,
    catalog: Optional[PromptCatalog] = None,
) -> Judgement:
    """
    Judges a response against the ground truth answer.

    A response whose matching form equals the truth's is correct without consulting
    the backend. Otherwise the reference judge prompt is sent and the first
    ``Correct`` or ``Incorrect`` in the reply, in any case, is the verdict.

    Raises
    ------
    JudgeParseFailure
        If the reply contains neither verdict.
    BackendUnavailable
    """
    matched = judge_match(truth, response)
    if matched.correct:
        return matched
    catalog = catalog or default_catalog()
    prompt = catalog.render(
        REFERENCE_JUDGE,
        query=query,
        true_answer=truth.text,
        given_response=response,
    )
    reply = backend.complete(prompt)
    verdict = first_token(reply, CORRECT, INCORRECT)
    if verdict is None:
        _logger.warning(f"unparseable judge reply for {query!r}: {reply!r}")
        raise JudgeParseFailure(f"judge reply has no verdict: {reply!r}")
    return Judgement(verdict, LLM_JUDGE, reply)
