# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import unittest

from testfixtures import LogCapture

from ragologic.retrieval import attach_provenance, fact_terms, mentions_fact

from ..utils import annotated_dataset, balanced_dataset, fixture_corpus

_LOCATION = "SELECT Location FROM Client WHERE Name = '[Client.Name]';"
_INDUSTRY = "SELECT Industry FROM Client WHERE Name = '[Client.Name]';"


def _group(dataset, sql_template, value):
    for group in dataset:
        if group.sql_template == sql_template and group.values[0][1] == value:
            return group
    raise LookupError(value)


class TestProvenance(unittest.TestCase):
    def test_gold_fact_and_documents(self):
        group = _group(annotated_dataset("aurp"), _LOCATION, "Blue Horizon Hotels")
        self.assertEqual(
            "The location of Blue Horizon Hotels is Maldives.", group.gold_fact
        )
        self.assertEqual(frozenset({0}), group.gold_document_ids)
        self.assertEqual(["blue horizon hotels", "maldives"], fact_terms(group))

    def test_gaps_are_left_without_provenance(self):
        dataset = annotated_dataset("aurp")
        gaps = [group for group in dataset if group.gold_fact is None]
        self.assertEqual(5, len(gaps))
        self.assertTrue(all(group.gold_document_ids is None for group in gaps))
        amber = _group(dataset, _INDUSTRY, "Amber Fields Agritech")
        self.assertIn(amber, gaps)

    def test_missing_facts_are_logged(self):
        with LogCapture() as log:
            attach_provenance(balanced_dataset("aurp"), fixture_corpus("aurp"))
        log.check_present(
            (
                "ragologic.retrieval.provenance",
                "WARNING",
                "5 of 157 groups have no gold fact",
            )
        )

    def test_partial_mentions_do_not_count(self):
        group = _group(annotated_dataset("aurp"), _LOCATION, "Blue Horizon Hotels")
        self.assertTrue(
            mentions_fact("Blue Horizon Hotels, based in the Maldives.", group)
        )
        self.assertFalse(mentions_fact("Blue Horizon Hotels is in Malé.", group))
        self.assertFalse(mentions_fact("Blue Horizon Hotelsx Maldives", group))
