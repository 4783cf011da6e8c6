"""
Utilities package for qholo.

This package contains shared utilities for configuration management,
JSON documents and report rendering used by the command line.
"""

from .config import (
    get_config_value,
    get_config_int,
    get_config_list,
    list_jobs,
)

from .common import (
    load_json_file,
    save_json_file,
    dump_json,
    get_stable_key,
    ensure_directory_exists,
)

from .report import (
    make_document,
    provenance,
    render,
)

__all__ = [
    "get_config_value",
    "get_config_int",
    "get_config_list",
    "list_jobs",
    "load_json_file",
    "save_json_file",
    "dump_json",
    "get_stable_key",
    "ensure_directory_exists",
    "make_document",
    "provenance",
    "render",
]
