# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import tempfile
import unittest

import sqlalchemy

from ragologic.datasets import load_aurp, load_spider
from ragologic.errors import (
    ConnectionFailed,
    NonSelectStatement,
    SqlExecutionError,
    UnknownTableOrColumn,
)
from ragologic.schema import (
    distinct_values,
    execute_answer,
    load_schema,
    open_database,
)

from ..utils import sqlite_file


class TestOpenDatabase(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.locator = load_aurp().database

    def test_missing_file(self):
        with self.assertRaises(ConnectionFailed):
            open_database("/nonexistent/aurp.sqlite")

    def test_read_only_refuses_writes(self):
        with open_database(self.locator) as db:
            self.assertTrue(db.read_only)
            with db.engine.connect() as connection:
                with self.assertRaises(sqlalchemy.exc.OperationalError):
                    connection.exec_driver_sql("DELETE FROM Client")

    def test_url_locator(self):
        with open_database(f"sqlite:///{self.locator}") as db:
            answer = execute_answer(db, "SELECT COUNT(*) FROM Employee")
        self.assertEqual("[(32,)]", answer.text)


class TestReflection(unittest.TestCase):
    def test_aurp_schema(self):
        schema = load_schema(load_aurp().database)
        self.assertEqual(["Client", "Employee", "Project"], schema.table_names())
        project = schema.table("project")
        self.assertEqual("ProjectID", project.primary_key)
        self.assertEqual("date", project.attribute("StartDate").value_kind)
        self.assertEqual("integer", project.attribute("ProjectID").value_kind)
        self.assertEqual(1, len(project.foreign_keys))
        self.assertEqual("Client", project.foreign_keys[0].foreign_table)

    def test_composite_key_table_is_skipped(self):
        with self.assertWarns(UserWarning) as caught:
            schema = load_schema(load_spider().database)
        self.assertEqual(["company", "people"], schema.table_names())
        messages = [str(warning.message) for warning in caught.warnings]
        self.assertTrue(any("Table 'employment' skipped" in m for m in messages))

    def test_no_primary_key_is_skipped(self):
        with tempfile.TemporaryDirectory() as directory:
            locator = sqlite_file(
                directory,
                "CREATE TABLE a (id INTEGER PRIMARY KEY, name TEXT);\n"
                "CREATE TABLE log (line TEXT);\n",
            )
            with self.assertWarns(UserWarning):
                schema = load_schema(locator)
        self.assertEqual(["a"], schema.table_names())


class TestExecution(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.db = open_database(load_aurp().database)

    @classmethod
    def tearDownClass(cls):
        cls.db.close()

    def test_singular_answer(self):
        answer = execute_answer(
            self.db, "SELECT Location FROM Client WHERE Name = 'Blue Horizon Hotels';"
        )
        self.assertEqual("[('Maldives',)]", answer.text)
        self.assertEqual(1, answer.cardinality)

    def test_multiple_and_empty_answers(self):
        technology = execute_answer(
            self.db, "SELECT Name FROM Client WHERE Industry = 'Technology'"
        )
        self.assertEqual(2, technology.cardinality)
        nobody = execute_answer(
            self.db, "SELECT Name FROM Client WHERE Industry = 'Mining'"
        )
        self.assertEqual(0, nobody.cardinality)
        self.assertEqual("[]", nobody.text)

    def test_null_answer(self):
        answer = execute_answer(
            self.db,
            "SELECT SupervisorOrManager FROM Employee WHERE Name = 'Ava Thompson'",
        )
        self.assertTrue(answer.is_null())

    def test_rejected_statements(self):
        with self.assertRaises(NonSelectStatement):
            execute_answer(self.db, "DELETE FROM Client")
        with self.assertRaises(NonSelectStatement):
            execute_answer(self.db, "SELECT 1; SELECT 2")
        with self.assertRaises(SqlExecutionError):
            execute_answer(self.db, "SELECT Nothing FROM Client")
        with self.assertRaises(ValueError):
            execute_answer(
                self.db, "SELECT Location FROM Client WHERE Name = '[Client.Name]'"
            )

    def test_distinct_values(self):
        industries = distinct_values(self.db, "client", "industry")
        self.assertEqual(9, len(industries))
        self.assertEqual("Banking", industries[0])
        self.assertEqual(industries, sorted(industries))
        supervisors = distinct_values(self.db, "Employee", "SupervisorOrManager")
        self.assertNotIn(None, supervisors)
        with self.assertRaises(UnknownTableOrColumn):
            distinct_values(self.db, "Client", "Revenue")
