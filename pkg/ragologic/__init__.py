# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import ragologic.backends
import ragologic.datasets
import ragologic.evaluation
import ragologic.generation
import ragologic.judges
import ragologic.prompts
import ragologic.retrieval
import ragologic.schema
import ragologic.templates
import ragologic.utils
from ragologic.version import __version

__version__ = __version()
