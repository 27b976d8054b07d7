# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import os
import threading
from functools import lru_cache

from ragologic.backends import CompletionBackend
from ragologic.datasets import load_fixture, materialize_database, replay_backend
from ragologic.evaluation import EvalConfig, evaluate
from ragologic.generation import Provenance, balance, generate_dataset
from ragologic.judges import NORMALIZED_MATCH, Judgement
from ragologic.retrieval import (
    EvalRecord,
    ExtractiveStubGenerator,
    attach_provenance,
    render_corpus,
)
from ragologic.schema import make_answer, open_database
from ragologic.templates import (
    load_template_file,
    sql_templates_from_mapping,
    text_templates_from_mapping,
)


def sqlite_file(directory, script, name="test.sqlite"):
    dump = os.path.join(directory, "dump.sql")
    with open(dump, "w", encoding="utf-8") as dump_io:
        dump_io.write(script)
    return str(materialize_database(dump, os.path.join(directory, name)))


class ScriptedBackend(CompletionBackend):
    """
    Answers with ``reply(prompt, temperature, sample)`` when callable, otherwise
    pops the next scripted reply. Every call is recorded.
    """

    def __init__(self, replies=(), reply=None, model="scripted"):
        self._replies = list(replies)
        self._reply = reply
        self._model = model
        self._lock = threading.Lock()
        self.calls = []

    @property
    def model(self):
        return self._model

    def complete(self, prompt, temperature=None, sample=0):
        with self._lock:
            self.calls.append((prompt, temperature, sample))
            if self._reply is not None:
                return self._reply(prompt, temperature, sample)
            return self._replies.pop(0)


@lru_cache(maxsize=None)
def fixture_dataset(name):
    """
    The unbalanced dataset of a bundled fixture and its generation report, built
    from the shipped template files.
    """
    fixture = load_fixture(name)
    sql_templates = sql_templates_from_mapping(
        load_template_file(fixture.sql_templates)
    )
    text_templates = {tpl.text: [] for tpl in sql_templates}
    for attr in sorted(fixture.text_templates, reverse=True):
        bound = text_templates_from_mapping(
            load_template_file(fixture.text_templates[attr]), sql_templates, attr
        )
        for sql_text, templates in bound.items():
            text_templates[sql_text].extend(templates)
    with open_database(fixture.database) as db:
        return generate_dataset(
            sql_templates,
            text_templates,
            db,
            Provenance(generated_at="1970-01-01T00:00:00+00:00"),
        )


@lru_cache(maxsize=None)
def balanced_dataset(name):
    fixture = load_fixture(name)
    dataset, _ = fixture_dataset(name)
    return balance(dataset, fixture.per_group, replay_backend(fixture))


@lru_cache(maxsize=None)
def fixture_corpus(name):
    fixture = load_fixture(name)
    with open_database(fixture.database) as db:
        return render_corpus(db, fixture.document_spec)


@lru_cache(maxsize=None)
def annotated_dataset(name):
    """The balanced dataset of a fixture with gold facts attached."""
    return attach_provenance(balanced_dataset(name), fixture_corpus(name))


def judged_record(group_id, linguistic_attr, verdict, documents=(), error=None):
    """A judged record with a fixed answer, for metric tests."""
    judgement = None if verdict is None else Judgement(verdict, NORMALIZED_MATCH, "")
    return EvalRecord(
        f"{linguistic_attr} query of {group_id}",
        group_id,
        linguistic_attr,
        make_answer([("a",)]),
        "a",
        judgement,
        tuple(documents),
        error=error,
    )


@lru_cache(maxsize=None)
def fixture_evaluation(name, retriever="keyword"):
    """Extractive stub evaluation of a fixture's annotated dataset."""
    return evaluate(
        annotated_dataset(name),
        fixture_corpus(name),
        ExtractiveStubGenerator(),
        EvalConfig(retriever=retriever),
    )
