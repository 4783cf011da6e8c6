#!/usr/bin/env python3
"""
Common utility functions for qholo.

This module provides shared functionality for reading and writing the
JSON documents the command line consumes and emits.
"""

import json
import hashlib
from pathlib import Path
from typing import Any, Optional


def load_json_file(file_path: str) -> Any:
    """
    Load JSON data from a file.

    Args:
        file_path: Path to the JSON file

    Returns:
        The decoded document (object or list)

    Raises:
        FileNotFoundError: If the file doesn't exist
        json.JSONDecodeError: If the file contains invalid JSON
    """
    path = Path(file_path)
    if not path.exists():
        raise FileNotFoundError(f"JSON file not found: {file_path}")

    with open(path, "r") as f:
        return json.load(f)


def dump_json(data: Any, indent: Optional[int] = 2) -> str:
    """Serialize with sorted keys so equal documents give equal bytes"""
    return json.dumps(data, indent=indent, sort_keys=True, ensure_ascii=False)


def save_json_file(data: Any, file_path: str, indent: int = 2) -> None:
    """
    Save data to a JSON file, creating its directory.

    Args:
        data: Data to save
        file_path: Path where to save the file
        indent: JSON indentation level
    """
    ensure_directory_exists(file_path)
    with open(file_path, "w") as f:
        f.write(dump_json(data, indent))
        f.write("\n")


def get_stable_key(data: Any) -> str:
    """
    Hash of a JSON-serializable value, independent of key order.

    Returns:
        SHA-256 hex digest of the canonical serialization
    """
    canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def ensure_directory_exists(file_path: str) -> None:
    """
    Ensure the directory for a file path exists.

    Args:
        file_path: Path to a file
    """
    directory = Path(file_path).parent
    directory.mkdir(parents=True, exist_ok=True)
