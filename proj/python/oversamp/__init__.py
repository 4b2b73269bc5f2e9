"""Compactly supported reconstruction filters for oversampled generalized sampling."""

import json
from os import PathLike
from typing import Any, Union

from . import _oversamp
from ._oversamp import OversampError, run_cli

Descriptor = Union[dict, str, PathLike]

__all__ = ["OversampError", "analyze", "load", "run_cli", "scan", "solve", "verify"]


def load(descriptor: Descriptor) -> str:
    """Descriptor as a JSON string; accepts a dict or a path to a JSON file."""
    if isinstance(descriptor, dict):
        return json.dumps(descriptor)
    with open(descriptor, encoding="utf-8") as f:
        return f.read()


def analyze(descriptor: Descriptor, grid_size: int = 0) -> dict[str, Any]:
    return json.loads(_oversamp.analyze(load(descriptor), grid_size))


def solve(descriptor: Descriptor) -> dict[str, Any]:
    """Existence flag, left inverse and filters (CSV text) when they exist."""
    raw = _oversamp.solve(load(descriptor))
    out: dict[str, Any] = {"exists": raw["exists"]}
    if "inverse" in raw:
        out["inverse"] = json.loads(raw["inverse"])
    if "filters_csv" in raw:
        out["filters_csv"] = raw["filters_csv"]
    return out


def verify(descriptor: Descriptor, trials: int = 50) -> dict[str, Any]:
    return json.loads(_oversamp.verify(load(descriptor), trials))


def scan(descriptor: Descriptor) -> dict[str, Any]:
    return json.loads(_oversamp.scan(load(descriptor)))
