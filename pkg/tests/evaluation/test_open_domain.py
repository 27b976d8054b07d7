# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import unittest

import numpy as np

from ragologic.errors import MisalignedInputs
from ragologic.evaluation import (
    GAP,
    acc_retrieval_db,
    filter_open_domain,
    open_domain_groups,
    refined_accuracy,
    tag_groups,
)
from ragologic.judges import NORMALIZED_MATCH, Judgement

from ..utils import judged_record

_CORRECT = Judgement("Correct", NORMALIZED_MATCH, "")
_INCORRECT = Judgement("Incorrect", NORMALIZED_MATCH, "")


def _records():
    verdicts = {
        "g1": ("Correct", "Correct"),
        "g2": ("Correct", "Correct"),
        "g3": ("Correct", "Correct"),
        "g4": ("Correct", "Incorrect"),
        "g5": ("Incorrect", "Incorrect"),
    }
    return [
        judged_record(group, attr, verdict)
        for group, pair in verdicts.items()
        for attr, verdict in zip(("short", "long"), pair)
    ]


class TestOpenDomain(unittest.TestCase):
    def test_open_domain_groups_are_removed(self):
        records = _records()
        closed_book = [_INCORRECT] * len(records)
        closed_book[0] = _CORRECT
        closed_book[3] = _CORRECT
        self.assertEqual(
            frozenset({"g1", "g2"}), open_domain_groups(records, closed_book)
        )
        kept = filter_open_domain(records, closed_book)
        self.assertEqual(
            ["g3", "g3", "g4", "g4", "g5", "g5"],
            [record.group_id for record in kept],
        )
        self.assertAlmostEqual(0.7, np.mean([record.correct for record in records]))
        accuracy = refined_accuracy(kept, tag_groups(kept))
        self.assertAlmostEqual(0.5, accuracy.accuracy)
        self.assertAlmostEqual(0.75, accuracy.refined)

    def test_leaked_groups_hide_gaps(self):
        # g0-g3 are Gap, g4-g9 answered; the closed-book system knows g4, g6, g8
        records = []
        closed_book = []
        for group in range(10):
            verdict = "Incorrect" if group < 4 else "Correct"
            for attr in ("short", "long"):
                records.append(judged_record(f"g{group}", attr, verdict))
                leaked = group in (4, 6, 8) and attr == "long"
                closed_book.append(_CORRECT if leaked else _INCORRECT)
        before = acc_retrieval_db(tag_groups(records))
        kept = filter_open_domain(records, closed_book)
        tags = tag_groups(kept)
        after = acc_retrieval_db(tags)
        self.assertAlmostEqual(0.6, before)
        self.assertGreater(before, after)
        self.assertEqual(7, len(tags))
        gaps = sum(1 for _, tag in tags if tag == GAP)
        self.assertEqual(4, gaps)
        self.assertAlmostEqual(1 - 4 / 7, after)
        self.assertAlmostEqual(1 - gaps / len(tags), after)

    def test_nothing_open_domain(self):
        records = _records()
        kept = filter_open_domain(records, [_INCORRECT] * len(records))
        self.assertEqual(records, kept)

    def test_misaligned(self):
        with self.assertRaises(MisalignedInputs):
            filter_open_domain(_records(), [_CORRECT])
