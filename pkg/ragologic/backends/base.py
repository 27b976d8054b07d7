# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from abc import ABC, abstractmethod
from typing import Optional


class CompletionBackend(ABC):
    """
    A text completion service.

    ``temperature=None`` means the backend's configured default. ``sample`` numbers
    repeated draws of the same prompt: re-prompt attempts and stochastic self-check
    samples pass distinct sample indices so caches keep them apart.
    """

    @property
    @abstractmethod
    def model(self) -> str:
        pass

    @property
    def default_temperature(self) -> float:
        return 0.0

    @abstractmethod
    def complete(
        self, prompt: str, temperature: Optional[float] = None, sample: int = 0
    ) -> str:
        pass

    def identity(self) -> str:
        return f"{type(self).__name__}:{self.model}"

    def resolve_temperature(self, temperature: Optional[float]) -> float:
        return self.default_temperature if temperature is None else temperature
