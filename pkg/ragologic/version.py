# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import configparser
import datetime
from pathlib import Path
from typing import Optional

try:
    from importlib import metadata as _metadata
except ImportError:  # pragma: no cover
    import importlib_metadata as _metadata  # type: ignore


def __from_distribution() -> Optional[str]:
    """
    The installed distribution knows its own version; this is the common case when
    ragologic was installed from an sdist or wheel.
    """
    try:
        return _metadata.version("ragologic")
    except BaseException:
        return None


def __from_filesystem(setup_config: Optional[str] = None) -> Optional[str]:
    """
    When running from a source checkout there is no distribution to ask, so we read
    the base version out of ``setup.cfg`` and mark it as a timestamped dev build.
    """
    if setup_config is None:
        setup_config = str(Path(__file__).resolve().parent.parent / "setup.cfg")
    try:
        cfg_parser = configparser.RawConfigParser()
        cfg_parser.read(setup_config)
        base_version = cfg_parser.get("metadata", "version")
        now = datetime.datetime.today().strftime("%Y%m%d%H%M%S")
        return f"{base_version}.dev{now}"
    except BaseException:
        return None


def __version() -> str:
    possible_version = __from_distribution() or __from_filesystem()
    return possible_version if possible_version is not None else "unknown"
