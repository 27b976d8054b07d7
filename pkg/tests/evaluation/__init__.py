# Copyright (c) ragologic contributors.
# Licensed under the MIT License.
