# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import math
import unittest

from ragologic.errors import InsufficientAttributes
from ragologic.evaluation import (
    BALANCE_GAP,
    CONTEXT_COMPARISON,
    NO_ACTION,
    REMOVE_GAP,
    balance_gap_examples,
    balance_target,
    strategy_matrix,
)

from ..utils import judged_record


def _records():
    """Ten groups; short misses g0 and g1, long misses g0 to g4."""
    records = []
    for group in range(10):
        for attr, misses in (("short", 2), ("long", 5)):
            verdict = "Incorrect" if group < misses else "Correct"
            records.append(judged_record(f"g{group}", attr, verdict, (group,)))
    return records


class TestBalanceTarget(unittest.TestCase):
    def test_targets(self):
        cases = [
            (([0.1, 0.3], [2, 6]), 0.3),
            (([0.2, 0.2], [1, 1]), 0.2),
            (([0.0, 0.3], [0, 6]), 0.0),
            (([0.5, 1.0], [1, 4]), 0.5),
            (([0.1, 0.4, 0.2], [1, 4, 2]), 0.4),
        ]
        for (ratios, counts), expected in cases:
            self.assertAlmostEqual(expected, balance_target(ratios, counts))


class TestBalanceGapExamples(unittest.TestCase):
    def test_reaches_common_ratio(self):
        records = _records()
        balanced, target = balance_gap_examples(records, seed=3)
        self.assertAlmostEqual(0.5, target)
        self.assertEqual(
            [record for record in records if record.linguistic_attr == "long"],
            balanced["long"],
        )
        short = balanced["short"]
        self.assertEqual(4, len(short))
        self.assertEqual(["g0", "g1"], [record.group_id for record in short[:2]])
        self.assertEqual(2, sum(1 for record in short if not record.correct))

    def test_seeded(self):
        records = _records()
        first, _ = balance_gap_examples(records, seed=11)
        second, _ = balance_gap_examples(records, seed=11)
        self.assertEqual(first, second)


class TestStrategyMatrix(unittest.TestCase):
    def test_values(self):
        matrix = strategy_matrix(_records(), seed=3)
        self.assertEqual(("short", "long"), matrix.attributes)
        self.assertEqual(12, len(matrix.cells))
        expected = {
            (NO_ACTION, "short"): 0.8,
            (NO_ACTION, "long"): 0.5,
            (REMOVE_GAP, "short"): 1.0,
            (REMOVE_GAP, "long"): 1.0,
            (BALANCE_GAP, "short"): 0.5,
            (BALANCE_GAP, "long"): 0.5,
        }
        for (gap_strategy, attr), value in expected.items():
            self.assertAlmostEqual(value, matrix.value(gap_strategy, NO_ACTION, attr))
        cell = [
            cell
            for cell in matrix.cells
            if cell.gap_strategy == NO_ACTION
            and cell.retrieval_strategy == CONTEXT_COMPARISON
            and cell.linguistic_attr == "long"
        ][0]
        self.assertAlmostEqual(1.0, cell.value)
        self.assertEqual(8, cell.support)
        with self.assertRaises(KeyError):
            matrix.value(NO_ACTION, NO_ACTION, "formal")

    def test_empty_cell_is_nan(self):
        matrix = strategy_matrix(
            _records(),
            gap_strategies=[NO_ACTION],
            retrieval_strategies=[NO_ACTION],
            attributes=["short", "formal"],
        )
        self.assertTrue(math.isnan(matrix.value(NO_ACTION, NO_ACTION, "formal")))
        self.assertTrue(math.isnan(matrix.balance_target))

    def test_single_attribute(self):
        records = [record for record in _records() if record.linguistic_attr == "long"]
        with self.assertRaises(InsufficientAttributes):
            strategy_matrix(records)

    def test_unknown_strategies(self):
        with self.assertRaises(ValueError):
            strategy_matrix(_records(), gap_strategies=["drop-all"])
        with self.assertRaises(ValueError):
            strategy_matrix(_records(), retrieval_strategies=["rerank"])
