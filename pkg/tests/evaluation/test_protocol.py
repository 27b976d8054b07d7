# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import math
import unittest

from ragologic.errors import BackendUnavailable
from ragologic.evaluation import (
    BALANCE_GAP,
    GAP,
    NO_ACTION,
    REMOVE_GAP,
    EvalConfig,
    closed_book_judgements,
    evaluate,
    gap_group_ids,
    render_report,
    tag_groups,
)
from ragologic.prompts import CLOSED_BOOK_ANSWER, default_catalog
from ragologic.retrieval import TFIDF, ExtractiveStubGenerator, LlmGenerator

from ..utils import (
    ScriptedBackend,
    annotated_dataset,
    fixture_corpus,
    fixture_evaluation,
)


def _closed_book_backend(dataset, known, unavailable=()):
    """Knows the answers of the ``known`` groups and fails on ``unavailable``."""
    catalog = default_catalog()
    replies = {}
    for group in dataset:
        for query in group.text_queries:
            prompt = catalog.render(CLOSED_BOOK_ANSWER, query=query.text)
            if group.group_id in known:
                replies[prompt] = group.answer.text
            elif group.group_id in unavailable:
                replies[prompt] = None

    def reply(prompt, temperature, sample):
        if prompt not in replies:
            return "I don't know"
        if replies[prompt] is None:
            raise BackendUnavailable("closed-book endpoint is down")
        return replies[prompt]

    return ScriptedBackend(reply=reply)


class TestEvaluate(unittest.TestCase):
    def test_keyword_stub_metrics(self):
        outcome = fixture_evaluation("aurp")
        report = outcome.report
        self.assertEqual(942, len(outcome.records))
        self.assertIsNone(outcome.closed_book)
        self.assertEqual(942, report.record_count)
        self.assertEqual(0, report.error_count)
        self.assertEqual(5, report.tag_counts[GAP])
        self.assertEqual(157, sum(report.tag_counts.values()))
        self.assertAlmostEqual(152 / 157, report.acc_retrieval_db)
        self.assertAlmostEqual(608 / 942, report.baseline_acc)
        self.assertAlmostEqual(30 / 942, report.gap_ratio)
        self.assertAlmostEqual(2 / 3, report.refined_acc)
        self.assertAlmostEqual(
            report.baseline_acc, report.refined_acc * (1 - report.gap_ratio)
        )

    def test_keyword_stub_matrix(self):
        matrix = fixture_evaluation("aurp").report.matrix
        self.assertEqual(("short", "long"), matrix.attributes)
        expected = {
            (NO_ACTION, "short"): 456 / 471,
            (NO_ACTION, "long"): 152 / 471,
            (REMOVE_GAP, "short"): 1.0,
            (REMOVE_GAP, "long"): 1 / 3,
            (BALANCE_GAP, "short"): 456 / 471,
            (BALANCE_GAP, "long"): 152 / 471,
        }
        for (gap_strategy, attr), value in expected.items():
            self.assertAlmostEqual(value, matrix.value(gap_strategy, NO_ACTION, attr))
        self.assertAlmostEqual(15 / 471, matrix.balance_target)

    def test_tfidf_ranks_long_queries_better(self):
        keyword = fixture_evaluation("aurp").report.matrix
        tfidf = fixture_evaluation("aurp", TFIDF).report.matrix
        self.assertGreater(
            tfidf.value(NO_ACTION, NO_ACTION, "long"),
            keyword.value(NO_ACTION, NO_ACTION, "long"),
        )

    def test_rerun_is_identical(self):
        first = fixture_evaluation("aurp")
        second = evaluate(
            annotated_dataset("aurp"),
            fixture_corpus("aurp"),
            ExtractiveStubGenerator(),
            EvalConfig(),
        )
        self.assertEqual(first.records, second.records)
        self.assertEqual(render_report(first.report), render_report(second.report))


class TestClosedBook(unittest.TestCase):
    def setUp(self):
        self.dataset = annotated_dataset("aurp")
        self.gaps = gap_group_ids(tag_groups(fixture_evaluation("aurp").records))
        answered = [
            group
            for group in self.dataset
            if group.gold_document_ids and group.group_id not in self.gaps
        ]
        self.known = {group.group_id for group in answered[:3]}
        self.unavailable = {answered[3].group_id}

    def test_failures_count_as_incorrect(self):
        backend = _closed_book_backend(self.dataset, self.known, self.unavailable)
        generator = LlmGenerator(backend, CLOSED_BOOK_ANSWER, closed_book=True)
        judged = closed_book_judgements(self.dataset, generator)
        self.assertEqual(942, len(judged))
        self.assertTrue(all(record.judgement is not None for record in judged))
        self.assertEqual(18, sum(1 for record in judged if record.correct))
        failed = [record for record in judged if record.error is not None]
        self.assertEqual(6, len(failed))
        self.assertFalse(any(record.correct for record in failed))

    def test_open_domain_groups_leave_the_report(self):
        backend = _closed_book_backend(self.dataset, self.known)
        outcome = evaluate(
            self.dataset,
            fixture_corpus("aurp"),
            ExtractiveStubGenerator(),
            closed_book=LlmGenerator(backend, CLOSED_BOOK_ANSWER, closed_book=True),
        )
        self.assertEqual(942, len(outcome.records))
        self.assertEqual(942, len(outcome.closed_book))
        self.assertEqual(3, outcome.report.open_domain_removed)
        self.assertEqual(924, outcome.report.record_count)
        self.assertEqual(154, sum(outcome.report.tag_counts.values()))
        before = fixture_evaluation("aurp").report.acc_retrieval_db
        self.assertAlmostEqual(152 / 157, before)
        self.assertAlmostEqual(149 / 154, outcome.report.acc_retrieval_db)
        self.assertGreater(before, outcome.report.acc_retrieval_db)

    def test_only_gap_groups_remain(self):
        known = {group.group_id for group in self.dataset} - self.gaps
        backend = _closed_book_backend(self.dataset, known)
        outcome = evaluate(
            self.dataset,
            fixture_corpus("aurp"),
            ExtractiveStubGenerator(),
            closed_book=LlmGenerator(backend, CLOSED_BOOK_ANSWER, closed_book=True),
        )
        report = outcome.report
        self.assertEqual(152, report.open_domain_removed)
        self.assertEqual(30, report.record_count)
        self.assertEqual(5, report.tag_counts[GAP])
        self.assertEqual(5, sum(report.tag_counts.values()))
        self.assertEqual(0.0, report.acc_retrieval_db)
        self.assertEqual(1.0, report.gap_ratio)
        self.assertEqual(0.0, report.baseline_acc)
        self.assertTrue(math.isnan(report.refined_acc))
        self.assertEqual(942, len(outcome.records))
        rows = [line.split() for line in render_report(report).splitlines()]
        self.assertIn(["R", "n/a"], rows)

    def test_closed_book_generator_must_not_retrieve(self):
        with self.assertRaises(ValueError):
            closed_book_judgements(self.dataset, ExtractiveStubGenerator())
