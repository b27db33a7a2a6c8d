"""Canonical JSON for spaces and results.

Floats are printed with 17 significant digits so every emitted value parses
back to the identical double; spaces are emitted with labels sorted and the
matrix permuted to match, which makes repeated emissions byte-stable.
"""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np

from .spaces import FiniteMetricSpace, validate_metric

__all__ = ["dumps", "space_to_dict", "space_from_dict"]


def _format(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite value {value!r} cannot be serialized")
        return format(value, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {_format(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_format(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return _format(obj.tolist())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Serialize to a single JSON document with 17-significant-digit floats."""
    return _format(obj)


def space_to_dict(space: FiniteMetricSpace, sort_labels: bool = True) -> dict:
    """Emit ``{"labels": [...], "matrix": [[...], ...]}``, by default with
    points reordered so labels are sorted."""
    order = sorted(range(space.n), key=lambda i: space.labels[i]) if sort_labels else range(space.n)
    order = list(order)
    matrix = space.dist[np.ix_(order, order)]
    return {
        "labels": [space.labels[i] for i in order],
        "matrix": [[float(v) for v in row] for row in matrix],
    }


def space_from_dict(data: dict) -> FiniteMetricSpace:
    """Validate a ``{"labels", "matrix"}`` document into a space. Labels may
    be omitted, in which case zero-padded defaults p00, p01, ... are used."""
    if not isinstance(data, dict) or "matrix" not in data:
        raise ValueError('space JSON must be an object with a "matrix" key')
    matrix = data["matrix"]
    labels: Sequence[str]
    if "labels" in data and data["labels"] is not None:
        labels = [str(x) for x in data["labels"]]
    else:
        n = len(matrix)
        width = len(str(max(n - 1, 0)))
        labels = [f"p{i:0{width}d}" for i in range(n)]
    return validate_metric(matrix, labels)
