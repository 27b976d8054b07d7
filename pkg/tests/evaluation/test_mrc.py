# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import unittest

from testfixtures import LogCapture

from ragologic.errors import EmptyTagList
from ragologic.evaluation import evaluate, gold_context, mrc_check
from ragologic.judges import SELFCHECK_JUDGE, JudgeConfig
from ragologic.retrieval import ExtractiveStubGenerator, corrupt_corpus

from ..utils import (
    annotated_dataset,
    balanced_dataset,
    fixture_corpus,
    fixture_evaluation,
)


class TestGoldContext(unittest.TestCase):
    def test_gold_context(self):
        corpus = fixture_corpus("aurp")
        groups = list(annotated_dataset("aurp"))
        answered = [group for group in groups if group.gold_document_ids]
        context = gold_context(answered[0], corpus)
        self.assertIn(answered[0].gold_fact, context)
        unanswered = [group for group in groups if not group.gold_document_ids]
        self.assertEqual(5, len(unanswered))
        self.assertIsNone(gold_context(unanswered[0], corpus))


class TestMrcCheck(unittest.TestCase):
    def test_stub_reads_every_gold_fact(self):
        with LogCapture() as log:
            report = mrc_check(
                annotated_dataset("aurp"),
                fixture_corpus("aurp"),
                ExtractiveStubGenerator(),
                results=fixture_evaluation("aurp").records,
            )
        log.check_present(
            (
                "ragologic.evaluation.mrc",
                "WARNING",
                "30 queries have no gold documents and were skipped",
            )
        )
        self.assertAlmostEqual(1.0, report.accuracy)
        self.assertEqual(912, report.total)
        self.assertEqual(912, report.correct)
        self.assertEqual(30, report.skipped)
        self.assertEqual((), report.failures)
        self.assertIsNone(report.gap_overlap)

    def test_failures_point_at_missing_facts(self):
        dataset = annotated_dataset("aurp")
        answered = [group for group in dataset if group.gold_document_ids]
        facts = {answered[index].gold_fact for index in (0, 10, 20)}
        corrupted = corrupt_corpus(fixture_corpus("aurp"), facts)
        results = evaluate(dataset, corrupted, ExtractiveStubGenerator()).records
        report = mrc_check(
            dataset, corrupted, ExtractiveStubGenerator(), results=results
        )
        missing = {group.group_id for group in answered if group.gold_fact in facts}
        self.assertEqual(missing, {failure.group_id for failure in report.failures})
        self.assertEqual(6 * len(missing), len(report.failures))
        self.assertTrue(all(failure.in_gap_group for failure in report.failures))
        self.assertAlmostEqual(1.0, report.gap_overlap)

    def test_failures_without_results(self):
        dataset = annotated_dataset("aurp")
        answered = [group for group in dataset if group.gold_document_ids]
        corrupted = corrupt_corpus(fixture_corpus("aurp"), [answered[0].gold_fact])
        report = mrc_check(dataset, corrupted, ExtractiveStubGenerator())
        self.assertGreater(len(report.failures), 0)
        self.assertTrue(
            all(failure.in_gap_group is None for failure in report.failures)
        )
        self.assertIsNone(report.gap_overlap)

    def test_without_provenance(self):
        with self.assertRaises(EmptyTagList):
            mrc_check(
                balanced_dataset("aurp"),
                fixture_corpus("aurp"),
                ExtractiveStubGenerator(),
            )

    def test_selfcheck_is_refused(self):
        with self.assertRaises(ValueError):
            mrc_check(
                annotated_dataset("aurp"),
                fixture_corpus("aurp"),
                ExtractiveStubGenerator(),
                JudgeConfig(SELFCHECK_JUDGE),
            )
