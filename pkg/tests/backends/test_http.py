# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import json
import unittest

import httpx
from testfixtures import LogCapture

from ragologic.backends import HttpChatBackend
from ragologic.errors import BackendUnavailable


def _chat(content):
    choices = [{"message": {"content": content}}]
    return httpx.Response(200, json={"choices": choices})


def _backend(handler, **kwargs):
    kwargs.setdefault("backoff_seconds", 0.0)
    return HttpChatBackend(
        "https://llm.example/v1/",
        "gpt-3.5-turbo",
        transport=httpx.MockTransport(handler),
        **kwargs,
    )


class TestHttpChatBackend(unittest.TestCase):
    def test_request_shape(self):
        seen = []

        def handler(request):
            seen.append(request)
            return _chat("Maldives")

        backend = _backend(handler, api_key="secret", temperature=0.7)
        self.assertEqual("Maldives", backend.complete("Where?"))
        request = seen[0]
        self.assertEqual("https://llm.example/v1/chat/completions", str(request.url))
        self.assertEqual("Bearer secret", request.headers["Authorization"])
        body = json.loads(request.content)
        self.assertEqual("gpt-3.5-turbo", body["model"])
        self.assertEqual([{"role": "user", "content": "Where?"}], body["messages"])
        self.assertEqual(0.7, body["temperature"])
        backend.complete("Where?", temperature=0.0)
        self.assertEqual(0.0, json.loads(seen[1].content)["temperature"])

    def test_retries_transient_failures(self):
        statuses = [503, 429]

        def handler(request):
            if statuses:
                return httpx.Response(statuses.pop(0))
            return _chat("ok")

        with LogCapture() as log:
            self.assertEqual("ok", _backend(handler).complete("p"))
        self.assertEqual(2, len([r for r in log.records if r.levelname == "WARNING"]))

    def test_gives_up(self):
        calls = []

        def handler(request):
            calls.append(request)
            raise httpx.ConnectError("refused", request=request)

        with self.assertRaises(BackendUnavailable) as raised:
            _backend(handler, max_retries=2).complete("p")
        self.assertEqual(3, len(calls))
        self.assertEqual(2, raised.exception.exit_code)

    def test_client_errors_are_not_retried(self):
        calls = []

        def handler(request):
            calls.append(request)
            return httpx.Response(401, text="bad key")

        with self.assertRaises(BackendUnavailable):
            _backend(handler).complete("p")
        self.assertEqual(1, len(calls))

    def test_unexpected_body(self):
        backend = _backend(lambda request: httpx.Response(200, json={"choices": []}))
        with self.assertRaises(BackendUnavailable):
            backend.complete("p")

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            _backend(_chat, temperature=2.5)
        with self.assertRaises(ValueError):
            _backend(_chat, max_in_flight=0)
