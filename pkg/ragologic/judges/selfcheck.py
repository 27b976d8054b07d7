# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import json
import logging
from typing import Callable, Optional

from beartype import beartype

from .. import preconditions
from ..backends import CompletionBackend
from ..errors import ComparisonParseFailure
from ..prompts import SELFCHECK_QA, PromptCatalog, default_catalog
from .classes import CORRECT, INCORRECT, SELFCHECK, Judgement, first_token

__all__ = ["SELFCHECK_SAMPLES", "SELFCHECK_TEMPERATURE", "selfcheck"]

_logger = logging.getLogger(__name__)

SELFCHECK_SAMPLES = 4
SELFCHECK_TEMPERATURE = 1.0

Regenerate = Callable[[float, int], str]


@beartype
def selfcheck(
    query: str,
    primary_response: str,
    regenerate: Regenerate,
    backend: CompletionBackend,
    samples: int = SELFCHECK_SAMPLES,
    temperature: float = SELFCHECK_TEMPERATURE,
    catalog: Optional[PromptCatalog] = None,
) -> Judgement:
    """
    Judges a response by its agreement with stochastic regenerations.

    ``regenerate(temperature, sample)`` answers ``query`` again through the pipeline
    under test; samples ``1..samples`` are drawn at ``temperature``. Every
    (primary, sample) pair is compared with the self-check QA prompt and the response
    is correct only when every comparison answers ``Yes``.

    Raises
    ------
    ComparisonParseFailure
        If a comparison reply contains neither ``Yes`` nor ``No``.
    BackendUnavailable
    """
    preconditions.check_argument(samples >= 1, "samples must be at least 1")
    catalog = catalog or default_catalog()
    agreements = []
    for sample in range(1, samples + 1):
        stochastic = regenerate(temperature, sample)
        reply = backend.complete(
            catalog.render(
                SELFCHECK_QA,
                query=query,
                answer=primary_response,
                stochastic_answer=stochastic,
            )
        )
        token = first_token(reply, "Yes", "No")
        if token is None:
            raise ComparisonParseFailure(
                f"self-check reply for sample {sample} has no Yes/No: {reply!r}"
            )
        agreements.append(
            {"sample": sample, "response": stochastic, "agrees": token == "Yes"}
        )
    agreed = sum(1 for entry in agreements if entry["agrees"])
    _logger.info(f"self-check {agreed}/{samples} agreements for {query!r}")
    verdict = CORRECT if agreed == samples else INCORRECT
    return Judgement(
        verdict, SELFCHECK, json.dumps(agreements, ensure_ascii=False), agreed / samples
    )
