# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import math
import unittest

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from ragologic.errors import EmptyCorpus, FirstChunkTooLarge
from ragologic.retrieval import (
    CHUNK_SEPARATOR,
    Chunk,
    Corpus,
    Document,
    assemble_context,
    build_index,
    keyword_retrieve,
    keyword_scores,
    retrieve,
    select_context,
    tfidf_retrieve,
    tfidf_scores,
    token_count,
)


def _index(*bodies, chunk_size=128):
    return build_index(
        Corpus([Document(i, f"d{i}", body) for i, body in enumerate(bodies)]),
        chunk_size,
    )


class TestSparseIndex(unittest.TestCase):
    def test_idf(self):
        index = _index("Ava leads the Sales team.", "Ben leads IT.")
        vocabulary = index.vocabulary()
        idf = dict(zip(vocabulary, index.idf))
        self.assertAlmostEqual(1.0, idf["leads"])
        self.assertAlmostEqual(math.log(3 / 2) + 1, idf["sales"])
        self.assertEqual([(0, 1), (1, 1)], index.postings("Leads"))
        self.assertEqual([], index.postings("marketing"))

    def test_empty_corpus(self):
        with self.assertRaises(EmptyCorpus):
            _index("", "")


class TestRetrievers(unittest.TestCase):
    def setUp(self):
        self.index = _index(
            "Ava leads the Sales team.",
            "Ben leads IT.",
            "Sales sales sales.",
            "Cy runs Ops.",
        )

    def test_keyword_counts_distinct_terms(self):
        scores = keyword_scores("who leads sales sales", self.index)
        assert_array_equal([2.0, 1.0, 1.0, 0.0], scores)

    def test_tfidf_weights_frequencies(self):
        idf = dict(zip(self.index.vocabulary(), self.index.idf))
        scores = tfidf_scores("who leads sales", self.index)
        assert_allclose(
            [
                idf["leads"] + idf["sales"],
                idf["leads"],
                3 * idf["sales"],
                0.0,
            ],
            scores,
        )
        result = tfidf_retrieve("who leads sales", self.index, k=2)
        self.assertEqual((2, 0), result.ranked_chunk_ids)

    def test_ties_break_by_chunk_id(self):
        result = keyword_retrieve("leads", self.index, k=4)
        self.assertEqual((0, 1, 2, 3), result.ranked_chunk_ids)
        self.assertEqual((1.0, 1.0, 0.0, 0.0), result.scores)

    def test_result_fields(self):
        result = keyword_retrieve("who leads sales", self.index, k=2)
        self.assertEqual("who leads sales", result.query)
        self.assertEqual(
            "Ava leads the Sales team.\n\nBen leads IT.", result.assembled_context
        )
        self.assertEqual(8, result.context_token_count)
        self.assertEqual((0, 1), result.document_ids)

    def test_budget_truncates_the_ranking(self):
        result = keyword_retrieve("who leads sales", self.index, k=3, budget=6)
        self.assertEqual((0, 1, 2), result.ranked_chunk_ids)
        self.assertEqual("Ava leads the Sales team.", result.assembled_context)
        self.assertEqual((0,), result.document_ids)

    def test_first_chunk_over_budget(self):
        with self.assertRaises(FirstChunkTooLarge):
            keyword_retrieve("who leads sales", self.index, k=2, budget=4)

    def test_dispatch(self):
        expected = keyword_retrieve("sales", self.index)
        self.assertEqual(expected, retrieve("keyword", "sales", self.index))
        with self.assertRaises(ValueError):
            retrieve("bm25", "sales", self.index)
        with self.assertRaises(ValueError):
            keyword_retrieve("sales", self.index, k=0)


class TestSelectContext(unittest.TestCase):
    def test_prefix(self):
        ranking = [Chunk(2, 0, "a", 3), Chunk(0, 1, "b", 3), Chunk(1, 1, "c", 1)]
        self.assertEqual(ranking[:2], select_context(ranking, 6))
        self.assertEqual(ranking[:1], select_context(ranking, 5))
        self.assertEqual([], select_context([], 5))

    def test_budget_holds_for_random_rankings(self):
        rng = np.random.default_rng(17)
        assembled = 0
        for _ in range(500):
            sizes = rng.integers(1, 21, size=int(rng.integers(1, 16)))
            chunks = [
                Chunk(i, i, " ".join(f"c{i}w{j}" for j in range(size)), int(size))
                for i, size in enumerate(sizes)
            ]
            ranking = [chunks[i] for i in rng.permutation(len(chunks))]
            budget = int(rng.integers(1, 151))
            if ranking[0].token_count > budget:
                with self.assertRaises(FirstChunkTooLarge):
                    assemble_context(ranking, budget)
                continue
            context = assemble_context(ranking, budget)
            selected = select_context(ranking, budget)
            self.assertLessEqual(token_count(context), budget)
            self.assertEqual(ranking[: len(selected)], selected)
            self.assertEqual(CHUNK_SEPARATOR.join(c.text for c in selected), context)
            if len(selected) < len(ranking):
                used = sum(chunk.token_count for chunk in ranking[: len(selected) + 1])
                self.assertGreater(used, budget)
            assembled += 1
        self.assertGreater(assembled, 300)

    def test_scores_are_numpy_backed(self):
        index = _index("Ava leads.")
        self.assertIsInstance(keyword_scores("ava", index), np.ndarray)
