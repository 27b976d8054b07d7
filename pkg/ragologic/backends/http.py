# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import logging
import threading
import time
from typing import Any, Dict, Optional

import httpx
from beartype import beartype

from .. import preconditions
from ..errors import BackendUnavailable
from .base import CompletionBackend

_logger = logging.getLogger(__name__)

_RETRYABLE_STATUS = {408, 409, 429, 500, 502, 503, 504}


class HttpChatBackend(CompletionBackend):
    """
    A client for OpenAI-compatible ``/chat/completions`` endpoints.

    Each prompt is sent as one user message. At most ``max_in_flight`` requests are
    outstanding across all threads sharing the backend; failed requests are retried
    ``max_retries`` times with exponential backoff starting at ``backoff_seconds``.

    Parameters
    ----------
    endpoint : str
        Base URL, e.g. ``https://api.openai.com/v1``.
    model : str
    api_key : Optional[str]
        Sent as a bearer token when given.
    temperature : float, optional (default=0.0)
        Default temperature, within ``[0, 2]``.
    max_retries : int, optional (default=3)
    max_in_flight : int, optional (default=4)
    backoff_seconds : float, optional (default=1.0)
    timeout_seconds : float, optional (default=60.0)
    transport : Optional[httpx.BaseTransport]
        Replaces the network transport, e.g. with ``httpx.MockTransport``.
    """

    @beartype
    def __init__(
        self,
        endpoint: str,
        model: str,
        api_key: Optional[str] = None,
        temperature: float = 0.0,
        max_retries: int = 3,
        max_in_flight: int = 4,
        backoff_seconds: float = 1.0,
        timeout_seconds: float = 60.0,
        transport: Optional[httpx.BaseTransport] = None,
    ):
        preconditions.check_argument(
            0.0 <= temperature <= 2.0, "temperature must be within [0, 2]"
        )
        preconditions.check_argument(max_retries >= 0, "max_retries must be >= 0")
        preconditions.check_argument(max_in_flight >= 1, "max_in_flight must be >= 1")
        headers = {"Content-Type": "application/json"}
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        self._endpoint = endpoint.rstrip("/")
        self._model = model
        self._temperature = temperature
        self._max_retries = max_retries
        self._backoff_seconds = backoff_seconds
        self._in_flight = threading.BoundedSemaphore(max_in_flight)
        self._client = httpx.Client(
            headers=headers, timeout=timeout_seconds, transport=transport
        )

    @property
    def model(self) -> str:
        return self._model

    @property
    def default_temperature(self) -> float:
        return self._temperature

    def identity(self) -> str:
        return f"http:{self._model}@{self._endpoint}"

    def _payload(self, prompt: str, temperature: float) -> Dict[str, Any]:
        return {
            "model": self._model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": temperature,
        }

    def complete(
        self, prompt: str, temperature: Optional[float] = None, sample: int = 0
    ) -> str:
        payload = self._payload(prompt, self.resolve_temperature(temperature))
        url = f"{self._endpoint}/chat/completions"
        failure = "no attempt made"
        for attempt in range(self._max_retries + 1):
            if attempt > 0:
                delay = self._backoff_seconds * 2 ** (attempt - 1)
                _logger.warning(
                    f"retrying {url} in {delay:.1f}s (attempt {attempt + 1}): {failure}"
                )
                time.sleep(delay)
            with self._in_flight:
                try:
                    response = self._client.post(url, json=payload)
                except httpx.HTTPError as error:
                    failure = f"{type(error).__name__}: {error}"
                    continue
            if response.status_code in _RETRYABLE_STATUS:
                failure = f"HTTP {response.status_code}"
                continue
            if response.status_code >= 400:
                raise BackendUnavailable(
                    f"{url} rejected the request with HTTP {response.status_code}: "
                    f"{response.text[:200]}"
                )
            try:
                return response.json()["choices"][0]["message"]["content"]
            except (ValueError, KeyError, IndexError, TypeError) as error:
                raise BackendUnavailable(
                    f"{url} returned an unexpected body: {response.text[:200]}"
                ) from error
        raise BackendUnavailable(
            f"{url} unavailable after {self._max_retries + 1} attempts: {failure}"
        )

    def close(self) -> None:
        self._client.close()
