# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from .base import CompletionBackend
from .http import HttpChatBackend
from .replay import Exchange, RecordReplayBackend, recording_key

__all__ = [
    "CompletionBackend",
    "Exchange",
    "HttpChatBackend",
    "RecordReplayBackend",
    "recording_key",
]
