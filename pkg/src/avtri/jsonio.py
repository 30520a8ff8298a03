"""Canonical JSON: sorted keys, no whitespace, base-10 integers only.

Identical objects serialize to identical bytes on every platform; all
on-disk formats in the repo go through these two functions.
"""

from __future__ import annotations

import json


class DataError(ValueError):
    """Corrupt or schema-violating on-disk data."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def dump_path(path, obj) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps(obj))
        fh.write("\n")


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataError(f"not valid JSON: {exc}") from exc


def load_path(path):
    try:
        with open(path, "r", encoding="ascii") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc


def require_keys(obj: dict, keys, what: str) -> None:
    if not isinstance(obj, dict):
        raise DataError(f"{what}: expected a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise DataError(f"{what}: missing keys {missing}")
    extra = [k for k in obj if k not in keys]
    if extra:
        raise DataError(f"{what}: unknown keys {extra}")
