# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import json
import logging
import re
from typing import List, Optional, Tuple

from beartype import beartype

from .. import preconditions
from ..backends import CompletionBackend
from ..errors import JudgeParseFailure, NoStatementsExtracted
from ..prompts import RAGAS_NLI, STATEMENT_DECOMPOSITION, PromptCatalog, default_catalog
from .classes import CORRECT, INCORRECT, RAGAS_FACT, Judgement, first_token

__all__ = ["SUPPORTED", "UNSUPPORTED", "NULL", "decompose", "ragas_fact"]

_logger = logging.getLogger(__name__)

SUPPORTED = "Yes"
UNSUPPORTED = "No"
NULL = "Null"

_NUMERIC = {"1": SUPPORTED, "0": UNSUPPORTED, "-1": NULL}
_ENUMERATION = re.compile(r"^\s*(?:[-*•]|\d+[.)]|statement\s*\d*\s*:)\s*", re.I)


@beartype
def decompose(
    question: str,
    response: str,
    backend: CompletionBackend,
    catalog: Optional[PromptCatalog] = None,
) -> List[str]:
    """
    Breaks ``response`` into atomic statements, one backend call.

    Raises
    ------
    NoStatementsExtracted
        If the reply holds no statement.
    """
    catalog = catalog or default_catalog()
    reply = backend.complete(
        catalog.render(STATEMENT_DECOMPOSITION, question=question, answer=response)
    )
    statements = []
    for line in reply.splitlines():
        statement = _ENUMERATION.sub("", line).strip()
        if statement:
            statements.append(statement)
    if not statements:
        raise NoStatementsExtracted(f"no statements in {response!r}")
    return statements


def _nli_verdict(reply: str) -> str:
    verdict = first_token(reply, SUPPORTED, UNSUPPORTED, NULL, "1", "0", "-1")
    if verdict is None:
        raise JudgeParseFailure(f"natural language inference reply {reply!r}")
    return _NUMERIC.get(verdict, verdict)


@beartype
def ragas_fact(
    context: str,
    response: str,
    backend: CompletionBackend,
    question: str = "",
    threshold: float = 0.5,
    catalog: Optional[PromptCatalog] = None,
) -> Tuple[float, Judgement]:
    """
    Faithfulness of ``response`` to ``context``: the share of its atomic statements
    the context supports.

    Each statement is checked with the natural language inference prompt; ``Null``
    verdicts count as unsupported. The response is judged correct when its
    faithfulness reaches ``threshold``.

    Parameters
    ----------
    context : str
    response : str
    backend : CompletionBackend
    question : str, optional (default="")
        Passed to the statement decomposition prompt.
    threshold : float, optional (default=0.5)
    catalog : Optional[PromptCatalog]

    Returns
    -------
    Tuple[float, Judgement]
        The faithfulness and the verdict derived from it.

    Raises
    ------
    NoStatementsExtracted
    JudgeParseFailure
        If a statement verdict cannot be read.
    BackendUnavailable
    """
    preconditions.check_argument(response.strip() != "", "response must not be empty")
    preconditions.check_argument(
        preconditions.is_probability(threshold), "threshold must be within [0, 1]"
    )
    catalog = catalog or default_catalog()
    statements = decompose(question, response, backend, catalog)
    verdicts = []
    for statement in statements:
        reply = backend.complete(
            catalog.render(RAGAS_NLI, context=context, statement=statement)
        )
        verdicts.append({"statement": statement, "verdict": _nli_verdict(reply)})
    supported = sum(1 for entry in verdicts if entry["verdict"] == SUPPORTED)
    faithfulness = supported / len(statements)
    _logger.info(f"faithfulness {supported}/{len(statements)} for {response!r}")
    verdict = CORRECT if faithfulness >= threshold else INCORRECT
    evidence = json.dumps(verdicts, ensure_ascii=False)
    return faithfulness, Judgement(verdict, RAGAS_FACT, evidence, faithfulness)
