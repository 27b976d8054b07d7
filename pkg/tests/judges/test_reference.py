# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import unittest

from testfixtures import LogCapture

from ragologic.errors import JudgeParseFailure
from ragologic.judges import (
    CORRECT,
    INCORRECT,
    LLM_JUDGE,
    NORMALIZED_MATCH,
    judge_match,
    judge_reference,
)
from ragologic.prompts import REFERENCE_JUDGE, default_catalog
from ragologic.schema import make_answer

from ..utils import ScriptedBackend

_MALDIVES = make_answer([("Maldives",)])


class TestJudgeMatch(unittest.TestCase):
    def test_matching_forms(self):
        for response in ["Maldives", "maldives", "  MALDIVES. ", "Maldives!"]:
            judgement = judge_match(_MALDIVES, response)
            self.assertEqual(CORRECT, judgement.verdict, response)
            self.assertEqual(NORMALIZED_MATCH, judgement.method)
            self.assertIsNone(judgement.score)

    def test_mismatches(self):
        for response in ["", "Maldive", "It is the Maldives", "I don't know"]:
            self.assertEqual(INCORRECT, judge_match(_MALDIVES, response).verdict)

    def test_multi_row_answers(self):
        truth = make_answer([("Ava Thompson",), ("Ben Ortiz",)])
        self.assertTrue(judge_match(truth, "Ava Thompson, Ben Ortiz").correct)


class TestJudgeReference(unittest.TestCase):
    def test_exact_match_skips_the_backend(self):
        backend = ScriptedBackend()
        judgement = judge_reference("Where?", _MALDIVES, "Maldives", backend)
        self.assertEqual(NORMALIZED_MATCH, judgement.method)
        self.assertEqual([], backend.calls)

    def test_verdict_from_reply(self):
        backend_reply = "Verdict: correct. It names the Maldives."
        backend = ScriptedBackend([backend_reply])
        judgement = judge_reference(
            "Where is Blue Horizon Hotels?", _MALDIVES, "In Malé, Maldives", backend
        )
        self.assertEqual(CORRECT, judgement.verdict)
        self.assertEqual(LLM_JUDGE, judgement.method)
        self.assertEqual(backend_reply, judgement.raw_evidence)
        expected_prompt = default_catalog().render(
            REFERENCE_JUDGE,
            query="Where is Blue Horizon Hotels?",
            true_answer="[('Maldives',)]",
            given_response="In Malé, Maldives",
        )
        self.assertEqual(expected_prompt, backend.calls[0][0])

    def test_first_verdict_wins(self):
        backend = ScriptedBackend(["Incorrect; a Correct answer names the Maldives."])
        judgement = judge_reference("Where?", _MALDIVES, "Nairobi", backend)
        self.assertEqual(INCORRECT, judgement.verdict)

    def test_unparseable_reply(self):
        backend = ScriptedBackend(["I cannot tell."])
        with LogCapture() as log:
            with self.assertRaises(JudgeParseFailure):
                judge_reference("Where?", _MALDIVES, "Nairobi", backend)
        self.assertEqual("WARNING", log.records[-1].levelname)
