# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import unittest

from ragologic.evaluation import (
    INDETERMINATE,
    INSUFFICIENT,
    INTERSECTION,
    STRICT,
    SUFFICIENT,
    ComparisonSummary,
    compare_contexts,
    context_comparison,
    summarize_comparisons,
)
from ragologic.retrieval import TFIDF

from ..utils import annotated_dataset, fixture_evaluation, judged_record


class TestContextComparison(unittest.TestCase):
    def setUp(self):
        self.correct = judged_record("g", "short", "Correct", (1, 2))
        self.overlapping = judged_record("g", "long", "Incorrect", (2, 5))
        self.disjoint = judged_record("g", "long", "Incorrect", (7,))
        self.group = [self.correct, self.overlapping, self.disjoint]

    def test_intersection(self):
        self.assertEqual(SUFFICIENT, context_comparison(self.overlapping, self.group))
        self.assertEqual(INSUFFICIENT, context_comparison(self.disjoint, self.group))
        self.assertEqual(SUFFICIENT, context_comparison(self.correct, self.group))

    def test_strict(self):
        self.assertEqual(
            INSUFFICIENT, context_comparison(self.overlapping, self.group, STRICT)
        )
        same = judged_record("g", "long", "Incorrect", (2, 1))
        self.assertEqual(
            SUFFICIENT, context_comparison(same, self.group + [same], STRICT)
        )

    def test_group_without_correct_member(self):
        self.assertEqual(
            INDETERMINATE,
            context_comparison(self.disjoint, [self.overlapping, self.disjoint]),
        )

    def test_correct_without_documents(self):
        bare = judged_record("g", "short", "Correct")
        group = [bare, self.disjoint]
        self.assertEqual(SUFFICIENT, context_comparison(bare, group))
        self.assertEqual(SUFFICIENT, context_comparison(bare, group, STRICT))
        self.assertEqual(INSUFFICIENT, context_comparison(self.disjoint, group))

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            context_comparison(self.disjoint, self.group, "loose")
        stranger = judged_record("h", "short", "Correct", (7,))
        with self.assertRaises(ValueError):
            context_comparison(self.disjoint, [stranger])

    def test_compare_contexts(self):
        failed = judged_record("g", "long", None, error="BackendUnavailable: down")
        other = judged_record("h", "short", "Incorrect", (3,))
        compared = compare_contexts(self.group + [failed, other])
        self.assertEqual(
            [SUFFICIENT, SUFFICIENT, INSUFFICIENT, None, INDETERMINATE],
            [record.retrieval_judgement for record in compared],
        )
        self.assertIs(failed, compared[3])
        self.assertEqual(ComparisonSummary(2, 1, 1, 1), summarize_comparisons(compared))
        strict = compare_contexts(self.group, STRICT)
        self.assertEqual(
            [SUFFICIENT, INSUFFICIENT, INSUFFICIENT],
            [record.retrieval_judgement for record in strict],
        )


class TestFixtureSoundness(unittest.TestCase):
    def _violations(self, name, retriever, rule):
        facts = {
            group.group_id: group.gold_fact for group in annotated_dataset(name)
        }
        records = compare_contexts(fixture_evaluation(name, retriever).records, rule)
        violations = []
        for record in records:
            fact = facts[record.group_id]
            stated = fact is not None and fact in record.context
            if (stated or record.correct) and record.retrieval_judgement != SUFFICIENT:
                violations.append(record.query)
        return violations, records

    def test_gold_context_and_correct_answers_are_sufficient(self):
        for retriever in ("keyword", TFIDF):
            for rule in (INTERSECTION, STRICT):
                violations, records = self._violations("aurp", retriever, rule)
                self.assertEqual([], violations, (retriever, rule))
                self.assertTrue(any(record.correct for record in records))
