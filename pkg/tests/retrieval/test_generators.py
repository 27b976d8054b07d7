# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import unittest

from ragologic.generation import SemanticGroup
from ragologic.prompts import CLOSED_BOOK_ANSWER, RAG_ANSWER, default_catalog
from ragologic.retrieval import (
    EXTRACTIVE_STUB,
    HTTP_LLM,
    LLM_ONLY,
    UNKNOWN_ANSWER,
    ExtractiveStubGenerator,
    GeneratorConfig,
    LlmGenerator,
    build_generator,
)
from ragologic.schema import make_answer

from ..utils import ScriptedBackend

_GROUP = SemanticGroup(
    "g",
    "SELECT Location FROM Client WHERE Name = '[Client.Name]';",
    "SELECT Location FROM Client WHERE Name = 'Blue Horizon Hotels';",
    (("[Client.Name]", "Blue Horizon Hotels"),),
    make_answer([("Maldives",)]),
    (),
)


class TestExtractiveStub(unittest.TestCase):
    def test_without_gold_fact_matches_mentions(self):
        stub = ExtractiveStubGenerator()
        context = "Ava leads Sales.\n\nThe location of Blue Horizon Hotels is Maldives."
        self.assertEqual("Maldives", stub.answer("where?", context, _GROUP))
        self.assertEqual(
            UNKNOWN_ANSWER, stub.answer("where?", "Blue Horizon Hotels.", _GROUP)
        )

    def test_ignores_temperature(self):
        stub = ExtractiveStubGenerator()
        group = _GROUP._replace(gold_fact="Blue Horizon Hotels is in the Maldives.")
        context = "Blue Horizon Hotels is in the Maldives."
        answers = {
            stub.answer("q", context, group, temperature=t, sample=s)
            for t, s in [(0.0, 0), (1.0, 1), (1.0, 2)]
        }
        self.assertEqual({"Maldives"}, answers)

    def test_multi_row_answers_are_unknown(self):
        group = _GROUP._replace(
            answer=make_answer([("Maldives",), ("Nairobi",)]),
            gold_fact="Blue Horizon Hotels is in the Maldives.",
        )
        stub = ExtractiveStubGenerator()
        self.assertEqual(UNKNOWN_ANSWER, stub.answer("q", group.gold_fact, group))


class TestLlmGenerator(unittest.TestCase):
    def test_rag_prompt(self):
        backend = ScriptedBackend(["Maldives"])
        generator = LlmGenerator(backend, temperature=0.3)
        self.assertEqual("Maldives", generator.answer("Where?", "ctx", _GROUP))
        prompt, temperature, sample = backend.calls[0]
        self.assertEqual(
            default_catalog().render(RAG_ANSWER, context="ctx", query="Where?"), prompt
        )
        self.assertEqual((0.3, 0), (temperature, sample))
        self.assertTrue(generator.uses_retrieval)

    def test_resampling(self):
        backend = ScriptedBackend(["a", "b"])
        generator = LlmGenerator(backend)
        generator.answer("Where?", "ctx", _GROUP, temperature=1.0, sample=4)
        self.assertEqual((1.0, 4), backend.calls[0][1:])

    def test_closed_book(self):
        backend = ScriptedBackend(["Maldives"])
        generator = build_generator(GeneratorConfig(kind=LLM_ONLY), backend)
        self.assertFalse(generator.uses_retrieval)
        generator.answer("Where?", "ignored", _GROUP)
        self.assertEqual(
            default_catalog().render(CLOSED_BOOK_ANSWER, query="Where?"),
            backend.calls[0][0],
        )


class TestBuildGenerator(unittest.TestCase):
    def test_kinds(self):
        self.assertIsInstance(
            build_generator(GeneratorConfig(kind=EXTRACTIVE_STUB)),
            ExtractiveStubGenerator,
        )
        generator = build_generator(GeneratorConfig(kind=HTTP_LLM), ScriptedBackend())
        self.assertIsInstance(generator, LlmGenerator)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            build_generator(GeneratorConfig(kind="oracle"))
        with self.assertRaises(ValueError):
            build_generator(GeneratorConfig(kind=HTTP_LLM))
