# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import unittest

from testfixtures import LogCapture

from ragologic.errors import BackendUnavailable
from ragologic.retrieval import (
    ExtractiveStubGenerator,
    LlmGenerator,
    RagPipeline,
    build_index,
    run_pipeline,
)

from ..utils import ScriptedBackend, annotated_dataset, fixture_corpus


class TestRagPipeline(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        dataset = annotated_dataset("aurp")
        cls.dataset = dataset.with_groups(dataset.groups[:2])
        cls.index = build_index(fixture_corpus("aurp"), 128)

    def test_records_follow_dataset_order(self):
        pipeline = RagPipeline(self.index, ExtractiveStubGenerator())
        records = run_pipeline(self.dataset, pipeline, n_jobs=2)
        expected = [
            (query.text, group.group_id, query.linguistic_attr)
            for group in self.dataset
            for query in group.text_queries
        ]
        self.assertEqual(
            expected,
            [(r.query, r.group_id, r.linguistic_attr) for r in records],
        )
        first = records[0]
        group = self.dataset.groups[0]
        self.assertEqual(group.answer, first.answer)
        true_ids = tuple(sorted(group.gold_document_ids))
        self.assertEqual(true_ids, first.true_document_ids)
        self.assertEqual(4, len(first.retrieved_chunk_ids))
        self.assertTrue(first.context)
        self.assertIsNone(first.judgement)
        self.assertFalse(first.correct)

    def test_failures_are_recorded(self):
        def reply(prompt, temperature, sample):
            raise BackendUnavailable("endpoint down")

        pipeline = RagPipeline(self.index, LlmGenerator(ScriptedBackend(reply=reply)))
        with LogCapture() as log:
            records = run_pipeline(self.dataset, pipeline)
        self.assertTrue(all(record.error for record in records))
        self.assertIn("BackendUnavailable", records[0].error)
        self.assertEqual("", records[0].response)
        self.assertIn("WARNING", [record.levelname for record in log.records])

    def test_closed_book_needs_no_index(self):
        backend = ScriptedBackend(reply=lambda *_: "x")
        generator = LlmGenerator(backend, closed_book=True)
        pipeline = RagPipeline(None, generator)
        records = run_pipeline(self.dataset, pipeline)
        self.assertEqual({"x"}, {record.response for record in records})
        self.assertEqual((), records[0].retrieved_document_ids)

    def test_invalid_pipelines(self):
        with self.assertRaises(ValueError):
            RagPipeline(None, ExtractiveStubGenerator())
        with self.assertRaises(ValueError):
            RagPipeline(self.index, ExtractiveStubGenerator(), retriever="dense")
