# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import json
import os
import tempfile
import unittest

from ragologic.errors import FormatError
from ragologic.generation import (
    DATASET_FORMAT,
    dataset_to_dict,
    export_dataset,
    export_qa_pairs,
    import_dataset,
)

from ..utils import balanced_dataset


class TestDatasetFiles(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)

    def _path(self, name):
        return os.path.join(self.directory.name, name)

    def _write(self, name, content):
        path = self._path(name)
        with open(path, "w", encoding="utf-8") as file_io:
            file_io.write(content)
        return path

    def test_export_and_import(self):
        dataset = balanced_dataset("aurp")
        path = self._path("nested/dataset.json")
        export_dataset(dataset, path)
        self.assertEqual(dataset, import_dataset(path))
        with open(path, "r", encoding="utf-8") as dataset_io:
            raw = json.load(dataset_io)
        self.assertEqual(DATASET_FORMAT, raw["format"])
        self.assertEqual(dataset_to_dict(dataset), raw)

    def test_gold_annotations_survive(self):
        dataset = balanced_dataset("spider")
        first = dataset.groups[0]._replace(
            gold_document_ids=frozenset({3, 1}), gold_fact="Exxon Mobil is in Oil."
        )
        annotated = dataset.with_groups((first,) + dataset.groups[1:])
        path = self._path("dataset.json")
        export_dataset(annotated, path)
        restored = import_dataset(path).groups[0]
        self.assertEqual(frozenset({1, 3}), restored.gold_document_ids)
        self.assertEqual("Exxon Mobil is in Oil.", restored.gold_fact)

    def test_qa_pairs(self):
        dataset = balanced_dataset("aurp")
        path = self._path("pairs.json")
        export_qa_pairs(dataset, path, linguistic_attr="long")
        with open(path, "r", encoding="utf-8") as pairs_io:
            pairs = json.load(pairs_io)
        self.assertEqual(157, len(pairs))
        self.assertEqual(dataset.groups[0].answer.text, pairs[0][0])
        self.assertEqual(3, len(pairs[0][1]))

        restored = import_dataset(path)
        self.assertEqual(157, len(restored))
        self.assertEqual(dataset.groups[0].answer, restored.groups[0].answer)
        self.assertEqual(
            [query.text for query in dataset.groups[0].queries_for("long")],
            [query.text for query in restored.groups[0].text_queries],
        )

    def test_syntax_error_names_the_line(self):
        content = '{\n  "format": "ragologic-dataset",\n  x\n}'
        path = self._write("dataset.json", content)
        with self.assertRaises(FormatError) as raised:
            import_dataset(path)
        self.assertIn("line 3", str(raised.exception))

    def test_invalid_documents(self):
        for content in [
            '{"format": "other", "provenance": {}, "groups": []}',
            '{"format": "ragologic-dataset", "groups": []}',
            '[["[(1,)]", "not a list"]]',
            '[["not an answer", ["q"]]]',
        ]:
            path = self._write("dataset.json", content)
            with self.assertRaises(FormatError):
                import_dataset(path)

    def test_missing_file(self):
        with self.assertRaises(FileNotFoundError):
            import_dataset(self._path("absent.json"))
