# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from .classes import (
    CORRECT,
    INCORRECT,
    LLM_JUDGE,
    METHODS,
    NORMALIZED_MATCH,
    RAGAS_FACT,
    SELFCHECK,
    VERDICTS,
    Judgement,
    first_token,
)
from .dispatch import JUDGES, LLM, MATCH, RAGAS, SELFCHECK_JUDGE, JudgeConfig, judge
from .ragas import decompose, ragas_fact
from .reference import judge_match, judge_reference
from .reliability import (
    WALD,
    WILSON,
    ReliabilityReport,
    confusion_counts,
    proportion_interval,
    reliability,
)
from .selfcheck import SELFCHECK_SAMPLES, SELFCHECK_TEMPERATURE, selfcheck

__all__ = [
    "CORRECT",
    "INCORRECT",
    "JUDGES",
    "JudgeConfig",
    "Judgement",
    "LLM",
    "LLM_JUDGE",
    "MATCH",
    "METHODS",
    "NORMALIZED_MATCH",
    "RAGAS",
    "RAGAS_FACT",
    "ReliabilityReport",
    "SELFCHECK",
    "SELFCHECK_JUDGE",
    "SELFCHECK_SAMPLES",
    "SELFCHECK_TEMPERATURE",
    "VERDICTS",
    "WALD",
    "WILSON",
    "confusion_counts",
    "decompose",
    "first_token",
    "judge",
    "judge_match",
    "judge_reference",
    "proportion_interval",
    "ragas_fact",
    "reliability",
    "selfcheck",
]
