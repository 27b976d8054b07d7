# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import setuptools

setuptools.setup()
