#!/usr/bin/env python3

from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy
import sympy
import toml

from utils.common import dump_json, get_stable_key

PYPROJECT = Path(__file__).resolve().parent.parent / "pyproject.toml"

CONVENTIONS = {
    "variables": ["a", "q", "M"],
    "unknot": "(a - a^-1)/(q - q^-1)",
    "skein": "X(L+) - X(L-) = (q - q^-1) X(L0)",
    "curl": "positive curl multiplies by a",
    "quantum_integer": "[n] = (q^n - q^-n)/(q - q^-1)",
    "colors": "columns (1^n) evaluated directly, rows (n) by q -> q^-1 and sign (-1)^|n|",
    "shift": "L M = q M L, M acts by q^n, L by n -> n+1",
}


@lru_cache(maxsize=1)
def package_version() -> str:
    """Version declared in pyproject.toml"""
    try:
        return toml.load(PYPROJECT)["project"]["version"]
    except (OSError, KeyError, toml.TomlDecodeError):
        return "unknown"


def provenance(framing: Optional[str] = None, seed: Optional[int] = None, inputs: Any = None) -> Dict[str, Any]:
    """Conventions and versions attached to every output document"""
    block: Dict[str, Any] = {
        "conventions": CONVENTIONS,
        "versions": {
            "qholo": package_version(),
            "sympy": sympy.__version__,
            "numpy": numpy.__version__,
        },
    }
    if framing is not None:
        block["framing"] = framing
    if seed is not None:
        block["seed"] = seed
    if inputs is not None:
        block["input_key"] = get_stable_key(inputs)
    return block


def make_document(command: str, inputs: Any, result: Any, **provenance_args) -> Dict[str, Any]:
    return {
        "command": command,
        "input": inputs,
        "result": result,
        "provenance": provenance(inputs=inputs, **provenance_args),
    }


def _text_lines(value: Any, indent: int = 0) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key in sorted(value):
            item = value[key]
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(item)}")
        return lines
    if isinstance(value, list):
        lines = []
        for item in value:
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}-")
                lines.extend(_text_lines(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
        return lines
    return [f"{pad}{_scalar(value)}"]


def _scalar(value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (dict, list)):
        return "[]" if isinstance(value, list) else "{}"
    return str(value)


def render(document: Any, fmt: str = "json") -> str:
    """Render a document as sorted JSON or as indented text"""
    if fmt == "json":
        return dump_json(document)
    if fmt == "text":
        return "\n".join(_text_lines(document))
    raise ValueError(f"Unknown output format '{fmt}', expected json or text")
