# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Evaluators as binary classifiers.

An evaluator saying ``Correct`` is the positive prediction and a gold ``Correct`` the
positive class. Low precision means the evaluator accepts wrong responses, an
optimistic bias; low recall means it rejects right ones.
"""

from typing import NamedTuple, Sequence, Tuple, Union

import numpy as np
from beartype import beartype
from scipy import stats

from .. import preconditions
from ..errors import MisalignedInputs, UndefinedPrecision, UndefinedRecall
from .classes import CORRECT, VERDICTS, Judgement

__all__ = [
    "WALD",
    "WILSON",
    "ReliabilityReport",
    "proportion_interval",
    "confusion_counts",
    "reliability",
]

WALD = "wald"
WILSON = "wilson"


class ReliabilityReport(NamedTuple):
    tp: int
    fp: int
    fn: int
    tn: int
    precision: float
    recall: float
    precision_ci: Tuple[float, float]
    recall_ci: Tuple[float, float]
    n: int
    interval: str = WALD
    confidence: float = 0.95


@beartype
def proportion_interval(
    successes: int, trials: int, confidence: float = 0.95, method: str = WALD
) -> Tuple[float, float]:
    """
    A normal approximation confidence interval of a binomial proportion, clipped to
    ``[0, 1]``.

    >>> low, high = proportion_interval(19, 100)
    >>> round(low, 3), round(high, 3)
    (0.113, 0.267)

    Parameters
    ----------
    successes : int
    trials : int
    confidence : float, optional (default=0.95)
    method : str, optional (default="wald")
        ``"wald"`` for ``p +/- z * sqrt(p * (1 - p) / n)`` or ``"wilson"`` for the
        Wilson score interval.
    """
    preconditions.check_argument(trials > 0, "trials must be positive")
    preconditions.check_argument(
        0 <= successes <= trials, "successes must be within [0, trials]"
    )
    preconditions.check_argument(
        0.0 < confidence < 1.0, "confidence must be within (0, 1)"
    )
    preconditions.check_argument(
        method in (WALD, WILSON), f"method must be '{WALD}' or '{WILSON}'"
    )
    z = stats.norm.ppf((1.0 + confidence) / 2.0)
    p = successes / trials
    if method == WALD:
        half_width = z * np.sqrt(p * (1.0 - p) / trials)
        low, high = p - half_width, p + half_width
    else:
        denominator = 1.0 + z**2 / trials
        centre = (p + z**2 / (2.0 * trials)) / denominator
        half_width = (
            z * np.sqrt(p * (1.0 - p) / trials + z**2 / (4.0 * trials**2)) / denominator
        )
        low, high = centre - half_width, centre + half_width
    return float(max(0.0, low)), float(min(1.0, high))


def _verdict(value: Union[Judgement, str]) -> str:
    verdict = value.verdict if isinstance(value, Judgement) else value
    preconditions.check_argument(
        verdict in VERDICTS, f"unknown verdict {verdict!r}, expected one of {VERDICTS}"
    )
    return verdict


@beartype
def confusion_counts(
    evaluator_verdicts: Sequence[Union[Judgement, str]], gold: Sequence[str]
) -> Tuple[int, int, int, int]:
    """
    ``(tp, fp, fn, tn)`` of the evaluator against the gold verdicts.

    >>> confusion_counts(["Correct", "Correct", "Incorrect"],
    ...                  ["Correct", "Incorrect", "Correct"])
    (1, 1, 1, 0)
    """
    if len(evaluator_verdicts) != len(gold):
        raise MisalignedInputs(
            f"{len(evaluator_verdicts)} evaluator verdicts for {len(gold)} gold labels"
        )
    predicted = np.array([_verdict(value) == CORRECT for value in evaluator_verdicts])
    actual = np.array([_verdict(value) == CORRECT for value in gold])
    tp = int(np.sum(predicted & actual))
    fp = int(np.sum(predicted & ~actual))
    fn = int(np.sum(~predicted & actual))
    tn = int(np.sum(~predicted & ~actual))
    return tp, fp, fn, tn


@beartype
def reliability(
    evaluator_verdicts: Sequence[Union[Judgement, str]],
    gold: Sequence[str],
    confidence: float = 0.95,
    interval: str = WALD,
) -> ReliabilityReport:
    """
    Precision and recall of an evaluator with confidence intervals.

    The precision interval uses the number of positive predictions as its sample
    size and the recall interval the number of gold positives.

    Raises
    ------
    MisalignedInputs
        If the lists differ in length.
    UndefinedPrecision
        If the evaluator never says ``Correct``.
    UndefinedRecall
        If no gold label is ``Correct``.
    """
    preconditions.check_argument(len(gold) > 0, "gold must not be empty")
    tp, fp, fn, tn = confusion_counts(evaluator_verdicts, gold)
    if tp + fp == 0:
        raise UndefinedPrecision("the evaluator made no positive prediction")
    if tp + fn == 0:
        raise UndefinedRecall("the gold labels contain no positive")
    return ReliabilityReport(
        tp,
        fp,
        fn,
        tn,
        tp / (tp + fp),
        tp / (tp + fn),
        proportion_interval(tp, tp + fp, confidence, interval),
        proportion_interval(tp, tp + fn, confidence, interval),
        tp + fp + fn + tn,
        interval,
        confidence,
    )
