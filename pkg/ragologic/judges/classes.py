# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import re
from typing import NamedTuple, Optional

__all__ = [
    "CORRECT",
    "INCORRECT",
    "VERDICTS",
    "NORMALIZED_MATCH",
    "LLM_JUDGE",
    "RAGAS_FACT",
    "SELFCHECK",
    "METHODS",
    "Judgement",
    "first_token",
]

CORRECT = "Correct"
INCORRECT = "Incorrect"
VERDICTS = (CORRECT, INCORRECT)

NORMALIZED_MATCH = "normalized_match"
LLM_JUDGE = "llm_judge"
RAGAS_FACT = "ragas_fact"
SELFCHECK = "selfcheck"
METHODS = (NORMALIZED_MATCH, LLM_JUDGE, RAGAS_FACT, SELFCHECK)


class Judgement(NamedTuple):
    """
    One correctness decision.

    ``raw_evidence`` keeps what the decision was made from verbatim: the judge reply,
    the per-statement verdicts, or the per-sample agreements. ``score`` is the
    faithfulness for ``ragas_fact``, the agreement rate for ``selfcheck`` and
    ``None`` otherwise.
    """

    verdict: str
    method: str
    raw_evidence: str
    score: Optional[float] = None

    @property
    def correct(self) -> bool:
        return self.verdict == CORRECT


def first_token(reply: str, *tokens: str) -> Optional[str]:
    """
    The first of ``tokens`` that occurs in ``reply`` as a whole word, ignoring case,
    returned in the spelling given in ``tokens``.

    >>> first_token("The answer is incorrect, not Correct.", CORRECT, INCORRECT)
    'Incorrect'
    >>> first_token("maybe", "Yes", "No") is None
    True
    """
    alternatives = "|".join(re.escape(token) for token in tokens)
    match = re.search(
        rf"(?<![\w-])({alternatives})(?![\w-])", reply, flags=re.IGNORECASE
    )
    if match is None:
        return None
    found = match.group(1).casefold()
    for token in tokens:
        if token.casefold() == found:
            return token
    return None
