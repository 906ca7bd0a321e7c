"""Textual formats: JSON rule/group files and DOT rendering of adjoint graphs.

Rule files store only the nonzero fusion entries (``[i, j, k, multiplicity]``
records), keeping exact integers end to end; dense tensors would be unreadable
at rank 11.
"""

from __future__ import annotations

import json

import numpy as np

from .acyclicity import adjoint_graph
from .core import FusionRule, default_labels
from .errors import StructuralError
from .groups import FiniteGroup

__all__ = [
    "dump_rule",
    "parse_rule",
    "dump_group",
    "parse_group",
    "dot_graph",
]


def rule_to_dict(rule: FusionRule) -> dict:
    entries = [
        [int(i), int(j), int(k), int(rule.tensor[i, j, k])]
        for i in range(rule.rank)
        for j in range(rule.rank)
        for k in range(rule.rank)
        if rule.tensor[i, j, k]
    ]
    return {
        "rank": rule.rank,
        "labels": list(rule.labels),
        "dual": list(rule.dual),
        "fusion": entries,
    }


def dump_rule(rule: FusionRule) -> str:
    return json.dumps(rule_to_dict(rule), indent=2) + "\n"


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise StructuralError(message)


def rule_from_dict(data: dict) -> FusionRule:
    _require(isinstance(data, dict), "rule document must be a JSON object")
    for key in ("rank", "dual", "fusion"):
        _require(key in data, f"rule document is missing the {key!r} key")
    rank = data["rank"]
    _require(isinstance(rank, int) and rank >= 1, "rank must be a positive integer")
    dual = data["dual"]
    _require(
        isinstance(dual, list) and len(dual) == rank and all(isinstance(d, int) for d in dual),
        f"dual must be a list of {rank} integers",
    )
    labels = data.get("labels")
    if labels is None:
        labels = list(default_labels(rank))
    _require(
        isinstance(labels, list) and len(labels) == rank,
        f"labels must be a list of {rank} strings",
    )
    tensor = np.zeros((rank, rank, rank), dtype=np.int64)
    seen = set()
    _require(isinstance(data["fusion"], list), "fusion must be a list of [i,j,k,mult] records")
    for record in data["fusion"]:
        _require(
            isinstance(record, list) and len(record) == 4 and all(isinstance(x, int) for x in record),
            f"fusion record {record!r} is not a list of 4 integers",
        )
        i, j, k, mult = record
        _require(0 <= i < rank and 0 <= j < rank and 0 <= k < rank,
                 f"fusion record {record!r} has indices out of range")
        _require(mult >= 1, f"fusion record {record!r} must have multiplicity >= 1")
        _require((i, j, k) not in seen, f"duplicate fusion record for ({i},{j},{k})")
        seen.add((i, j, k))
        tensor[i, j, k] = mult
    return FusionRule(labels=tuple(labels), dual=tuple(dual), tensor=tensor)


def parse_rule(text: str) -> FusionRule:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"rule file is not valid JSON: {exc}") from exc
    return rule_from_dict(data)


def dump_group(group: FiniteGroup) -> str:
    doc = {
        "order": group.order,
        "table": [int(x) for x in group.table.reshape(-1)],
        "name": group.name,
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_group(text: str) -> FiniteGroup:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"group file is not valid JSON: {exc}") from exc
    _require(isinstance(data, dict), "group document must be a JSON object")
    for key in ("order", "table"):
        _require(key in data, f"group document is missing the {key!r} key")
    order = data["order"]
    _require(isinstance(order, int) and order >= 1, "order must be a positive integer")
    table = data["table"]
    _require(
        isinstance(table, list) and len(table) == order * order
        and all(isinstance(x, int) for x in table),
        f"table must be a row-major list of {order * order} integers",
    )
    name = data.get("name", "G")
    return FiniteGroup(table=np.array(table, dtype=np.int64).reshape(order, order), name=str(name))


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_graph(rule: FusionRule) -> str:
    """Deterministic DOT document for the adjoint graph: one node per dual
    pair (labelled with its member names), one edge per graph edge annotated
    with its multiplicity."""
    graph = adjoint_graph(rule)
    lines = ["digraph adjoint {"]
    for n, pair in enumerate(graph.vertices):
        name = ",".join(rule.labels[i] for i in pair)
        lines.append(f"  n{n} [label={_quote(name)}];")
    for src, dst, weight in graph.edges:
        lines.append(f"  n{src} -> n{dst} [label={_quote(str(weight))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
