# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import unittest

from ragologic.judges import (
    LLM,
    LLM_JUDGE,
    NORMALIZED_MATCH,
    RAGAS,
    RAGAS_FACT,
    SELFCHECK,
    SELFCHECK_JUDGE,
    JudgeConfig,
    judge,
)
from ragologic.schema import make_answer

from ..utils import ScriptedBackend

_TRUTH = make_answer([("Maldives",)])


class TestJudge(unittest.TestCase):
    def test_match_needs_no_backend(self):
        judgement = judge(JudgeConfig(), "Where?", _TRUTH, "Maldives")
        self.assertEqual(NORMALIZED_MATCH, judgement.method)
        self.assertTrue(judgement.correct)

    def test_methods(self):
        cases = [
            (JudgeConfig(LLM), ["Incorrect"], LLM_JUDGE),
            (JudgeConfig(RAGAS), ["- Nairobi.", "No"], RAGAS_FACT),
            (JudgeConfig(SELFCHECK_JUDGE, samples=1), ["Yes"], SELFCHECK),
        ]
        for config, replies, method in cases:
            judgement = judge(
                config,
                "Where?",
                _TRUTH,
                "Nairobi",
                context="Blue Horizon Hotels is based in the Maldives.",
                regenerate=lambda temperature, sample: "Nairobi",
                backend=ScriptedBackend(replies),
            )
            self.assertEqual(method, judgement.method)

    def test_truth_is_ignored_by_reference_free_judges(self):
        config = JudgeConfig(SELFCHECK_JUDGE, samples=1)
        verdicts = {
            judge(
                config,
                "Where?",
                truth,
                "Nairobi",
                regenerate=lambda temperature, sample: "Nairobi",
                backend=ScriptedBackend(["Yes"]),
            ).verdict
            for truth in [_TRUTH, make_answer([("Nairobi",)])]
        }
        self.assertEqual(1, len(verdicts))

    def test_invalid(self):
        with self.assertRaises(ValueError):
            judge(JudgeConfig("vote"), "q", _TRUTH, "r")
        with self.assertRaises(ValueError):
            judge(JudgeConfig(LLM), "q", _TRUTH, "r")
        with self.assertRaises(ValueError):
            judge(
                JudgeConfig(SELFCHECK_JUDGE),
                "q",
                _TRUTH,
                "r",
                backend=ScriptedBackend(),
            )
