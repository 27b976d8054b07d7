# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import re
import sqlite3
import unittest

from ragologic.datasets import load_aurp, load_fixture
from ragologic.generation import (
    SKIP_MULTIPLICITY,
    SKIP_NULL_ANSWER,
    estimate_total_variations,
    generate_dataset,
    instantiate,
)
from ragologic.schema import open_database
from ragologic.templates import (
    SqlTemplate,
    TextTemplate,
    load_template_file,
    sql_templates_from_mapping,
)

from ..utils import fixture_dataset

_SUPERVISOR = SqlTemplate.from_text(
    "SELECT SupervisorOrManager FROM Employee WHERE Name = '[Employee.Name]';"
)
_BY_INDUSTRY = SqlTemplate.from_text(
    "SELECT Name FROM Client WHERE Industry = '[Client.Industry]';"
)

_PLACEHOLDER = re.compile(r"\[(\w+)\.(\w+)\]")


def _enumerate(connection, sql_text):
    """
    Groups of ``sql_text`` by nested loops over the distinct column values, as a
    map from instantiated SQL to its canonical answer, plus the combination count.
    """
    columns = {}
    for table, column in _PLACEHOLDER.findall(sql_text):
        columns.setdefault((table.casefold(), column.casefold()), (table, column))
    keys = list(columns)
    domains = [
        [
            row[0]
            for row in connection.execute(
                f'SELECT DISTINCT "{column}" FROM "{table}" '
                f'WHERE "{column}" IS NOT NULL'
            )
        ]
        for table, column in columns.values()
    ]
    groups = {}

    def fill(depth, chosen):
        if depth == len(keys):
            sql = _PLACEHOLDER.sub(
                lambda match: str(
                    chosen[(match.group(1).casefold(), match.group(2).casefold())]
                ).replace("'", "''"),
                sql_text,
            )
            rows = connection.execute(sql).fetchall()
            if len(rows) == 1 and any(value is not None for value in rows[0]):
                groups[sql] = str(rows)
            return
        for value in domains[depth]:
            chosen[keys[depth]] = value
            fill(depth + 1, chosen)

    fill(0, {})
    combinations = 1
    for domain in domains:
        combinations *= len(domain)
    return groups, combinations


class TestInstantiate(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.db = open_database(load_aurp().database)

    @classmethod
    def tearDownClass(cls):
        cls.db.close()

    def test_null_answers_are_skipped(self):
        text = TextTemplate("Supervisor of '[Employee.Name]'", _SUPERVISOR, "short")
        groups = instantiate(_SUPERVISOR, [text], self.db)
        self.assertEqual(31, len(groups))
        names = [value for group in groups for _, value in group.values]
        self.assertNotIn("Ava Thompson", names)
        group = groups[0]
        self.assertEqual((("[Employee.Name]", "Amara Okafor"),), group.values)
        self.assertEqual("[('Kenji Watanabe',)]", group.answer.text)
        self.assertEqual(
            "SELECT SupervisorOrManager FROM Employee WHERE Name = 'Amara Okafor';",
            group.sql_query,
        )
        self.assertEqual("Supervisor of 'Amara Okafor'", group.text_queries[0].text)
        self.assertIsNone(group.gold_document_ids)

    def test_several_rows_are_skipped(self):
        dataset, report = generate_dataset([_BY_INDUSTRY], {}, self.db)
        self.assertEqual(8, len(dataset))
        self.assertEqual(9, report.combinations)
        self.assertEqual({SKIP_MULTIPLICITY: 1}, report.skipped())
        self.assertNotIn(
            "Technology", [group.values[0][1] for group in dataset.groups]
        )

    def test_foreign_text_template(self):
        other = SqlTemplate.from_text(
            "SELECT JobTitle FROM Employee WHERE Name = '[Employee.Name]';"
        )
        text = TextTemplate("Title of '[Employee.Name]'", other, "short")
        with self.assertRaises(ValueError):
            instantiate(_SUPERVISOR, [text], self.db)

    def test_provenance_timestamp(self):
        dataset, _ = generate_dataset([_SUPERVISOR], {}, self.db)
        self.assertTrue(dataset.provenance.generated_at)
        self.assertEqual(0, dataset.query_count())


class TestBruteForceEnumeration(unittest.TestCase):
    def _check_fixture(self, name):
        fixture = load_fixture(name)
        templates = sql_templates_from_mapping(
            load_template_file(fixture.sql_templates)
        )
        checked = 0
        connection = sqlite3.connect(fixture.database)
        self.addCleanup(connection.close)
        with open_database(fixture.database) as db:
            for tpl in templates:
                expected, combinations = _enumerate(connection, tpl.text)
                if combinations > 100:
                    continue
                groups = instantiate(tpl, [], db)
                self.assertEqual(len(expected), len(groups), tpl.text)
                self.assertEqual(
                    expected,
                    {group.sql_query: group.answer.text for group in groups},
                    tpl.text,
                )
                checked += 1
        return checked, len(templates)

    def test_aurp(self):
        checked, total = self._check_fixture("aurp")
        self.assertEqual(11, total)
        self.assertGreater(checked, 0)

    def test_spider(self):
        checked, _ = self._check_fixture("spider")
        self.assertGreater(checked, 0)


class TestFixtureGeneration(unittest.TestCase):
    def test_aurp(self):
        dataset, report = fixture_dataset("aurp")
        self.assertEqual(157, len(dataset))
        self.assertEqual(158, report.combinations)
        self.assertEqual(157, report.accepted)
        self.assertEqual({SKIP_NULL_ANSWER: 1}, report.skipped())
        self.assertEqual({"short": 427, "long": 471}, dataset.counts_by_attribute())
        self.assertEqual(
            len(dataset), len({group.group_id for group in dataset.groups})
        )

    def test_aurp_report(self):
        _, report = fixture_dataset("aurp")
        summary = report.as_dict()
        self.assertEqual(11, len(summary["templates"]))
        self.assertTrue(all(entry["error"] is None for entry in summary["templates"]))

    def test_spider(self):
        dataset, report = fixture_dataset("spider")
        self.assertEqual(57, len(dataset))
        self.assertEqual({"short": 570}, dataset.counts_by_attribute())

    def test_reruns_are_identical(self):
        dataset, _ = fixture_dataset("aurp")
        again, _ = fixture_dataset.__wrapped__("aurp")
        self.assertEqual(dataset, again)


class TestEstimateTotalVariations(unittest.TestCase):
    def test_product(self):
        self.assertEqual(471, estimate_total_variations(1, 3, 157))

    def test_negative(self):
        with self.assertRaises(ValueError):
            estimate_total_variations(-1, 3, 4)
