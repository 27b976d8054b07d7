# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from .base import (
    FIXTURES,
    load_aurp,
    load_fixture,
    load_spider,
    materialize_database,
    replay_backend,
)

__all__ = [
    "FIXTURES",
    "load_aurp",
    "load_fixture",
    "load_spider",
    "materialize_database",
    "replay_backend",
]
