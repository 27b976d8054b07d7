# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import hashlib
import json
import logging
import os
import threading
from pathlib import Path
from typing import Dict, Iterable, NamedTuple, Optional, Union

from beartype import beartype

from ..errors import BackendUnavailable, FormatError
from ..utils import load_json
from .base import CompletionBackend

_logger = logging.getLogger(__name__)


class Exchange(NamedTuple):
    """One recorded prompt and its reply."""

    prompt: str
    reply: str
    temperature: Optional[float] = None
    sample: int = 0


def recording_key(model: str, temperature: float, sample: int, prompt: str) -> str:
    """
    The cache key of one completion.

    >>> len(recording_key("gpt-4", 0.0, 0, "hello"))
    64
    """
    payload = json.dumps(
        [model, float(temperature), sample, prompt], ensure_ascii=False
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class RecordReplayBackend(CompletionBackend):
    """
    Replays recorded completions keyed by (model, temperature, sample, prompt).

    Without a ``fallback`` the backend is a deterministic stub: a prompt that was
    never recorded raises :class:`BackendUnavailable`. With a ``fallback`` every miss
    is forwarded to it, recorded, and written to ``path`` when one is configured, so
    an interrupted run resumes without repeating backend calls.

    >>> stub = RecordReplayBackend.from_exchanges([Exchange("2+2?", "4")])
    >>> stub.complete("2+2?")
    '4'
    >>> stub.complete("3+3?")
    Traceback (most recent call last):
        ...
    ragologic.errors.BackendUnavailable: no recorded completion for prompt '3+3?' (model 'replay', temperature 0.0, sample 0)

    Parameters
    ----------
    recordings : Optional[Dict[str, str]]
        Replies keyed by :func:`recording_key`.
    fallback : Optional[CompletionBackend]
        The backend consulted on a miss.
    model : str, optional (default="replay")
        Model name used in keys when there is no fallback.
    path : Optional[Union[str, Path]]
        File the recordings are persisted to after each miss.
    temperature : float, optional (default=0.0)
        Default temperature when there is no fallback.
    """

    @beartype
    def __init__(
        self,
        recordings: Optional[Dict[str, str]] = None,
        fallback: Optional[CompletionBackend] = None,
        model: str = "replay",
        path: Optional[Union[str, Path]] = None,
        temperature: float = 0.0,
    ):
        self._recordings: Dict[str, str] = dict(recordings or {})
        self._fallback = fallback
        self._model = model
        self._path = Path(path) if path is not None else None
        self._temperature = temperature
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    @property
    def model(self) -> str:
        return self._fallback.model if self._fallback is not None else self._model

    @property
    def default_temperature(self) -> float:
        if self._fallback is not None:
            return self._fallback.default_temperature
        return self._temperature

    def identity(self) -> str:
        if self._fallback is not None:
            return f"cached:{self._fallback.identity()}"
        return f"replay:{self._model}"

    @property
    def recordings(self) -> Dict[str, str]:
        with self._lock:
            return dict(self._recordings)

    def key(
        self, prompt: str, temperature: Optional[float] = None, sample: int = 0
    ) -> str:
        return recording_key(
            self.model, self.resolve_temperature(temperature), sample, prompt
        )

    def record(
        self,
        prompt: str,
        reply: str,
        temperature: Optional[float] = None,
        sample: int = 0,
    ) -> None:
        with self._lock:
            self._recordings[self.key(prompt, temperature, sample)] = reply

    def complete(
        self, prompt: str, temperature: Optional[float] = None, sample: int = 0
    ) -> str:
        key = self.key(prompt, temperature, sample)
        with self._lock:
            reply = self._recordings.get(key)
            if reply is not None:
                self.hits += 1
                return reply
            self.misses += 1
        if self._fallback is None:
            preview = prompt if len(prompt) <= 60 else prompt[:57] + "..."
            raise BackendUnavailable(
                f"no recorded completion for prompt {preview!r} (model "
                f"'{self.model}', temperature {self.resolve_temperature(temperature)}, "
                f"sample {sample})"
            )
        _logger.info(
            f"cache miss {key[:12]}, forwarding to {self._fallback.identity()}"
        )
        reply = self._fallback.complete(prompt, temperature=temperature, sample=sample)
        with self._lock:
            self._recordings[key] = reply
        if self._path is not None:
            self.save(self._path)
        return reply

    def save(self, path: Union[str, Path]) -> None:
        """Writes the recordings atomically as JSON."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with self._lock:
            document = {"model": self.model, "recordings": dict(self._recordings)}
        staging = path.with_suffix(path.suffix + ".tmp")
        with open(staging, "w", encoding="utf-8") as cache_io:
            json.dump(document, cache_io, indent=1, sort_keys=True, ensure_ascii=False)
        os.replace(staging, path)

    @classmethod
    @beartype
    def load(
        cls,
        path: Union[str, Path],
        fallback: Optional[CompletionBackend] = None,
        persist: bool = True,
    ) -> "RecordReplayBackend":
        """
        Opens a recordings file; a missing file yields an empty cache. With
        ``persist`` new recordings are written back to ``path``.
        """
        path = Path(path)
        recordings: Dict[str, str] = {}
        model = "replay"
        if path.exists():
            document = load_json(str(path))
            try:
                recordings = dict(document["recordings"])
                model = str(document.get("model", model))
            except (AttributeError, KeyError, TypeError, ValueError) as error:
                raise FormatError(
                    str(path), f"not a recordings file: {error}"
                ) from error
            _logger.info(f"loaded {len(recordings)} recorded completions from {path}")
        return cls(
            recordings,
            fallback=fallback,
            model=model,
            path=path if persist else None,
        )

    @classmethod
    def from_exchanges(
        cls, exchanges: Iterable[Exchange], model: str = "replay"
    ) -> "RecordReplayBackend":
        backend = cls(model=model)
        for exchange in exchanges:
            backend.record(
                exchange.prompt, exchange.reply, exchange.temperature, exchange.sample
            )
        return backend
