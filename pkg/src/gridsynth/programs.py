"""Full operations (filter + transformation) and whole programs.

An operation evaluates its filter against the graph's pre-operation state,
then transforms each matched node in ascending id order against the evolving
graph; a node whose bindings produce no value is skipped. A program is an
abstraction choice plus an ordered operation sequence, applied end to end:
abstract, rewrite, reconstruct.

Programs serialize to canonical JSON:
``{"abstraction": name, "steps": [{"filter": ..., "transform":
{"name": ..., "params": [...]}}]}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import filters as flt
from .bindings import (
    DIRECTIONS,
    NEIGHBOR_RELATIONS,
    OWN_RELATIONS,
    NeighborRelation,
    OwnRelation,
    ParamBinding,
    Static,
)
from .graphs import ABSTRACTIONS, AbstractedGraph, abstract, reconstruct
from .grids import Grid
from .transforms import (
    ArityMismatch,
    PARAM_TYPES,
    Pattern,
    TransformStep,
    UnknownTransform,
    apply_transform,
)


class MalformedProgram(ValueError):
    """Program text with unknown names, bad arity, or a broken shape."""


@dataclass(frozen=True)
class FullOperation:
    filter: flt.FilterExpr
    transform: TransformStep

    def key(self) -> tuple:
        return (self.filter.key(), self.transform.key())

    def describe(self) -> str:
        return f"[{self.filter.describe()}] -> {self.transform.describe()}"


@dataclass(frozen=True)
class Program:
    abstraction: str
    steps: tuple[FullOperation, ...] = ()


def apply_operation(op: FullOperation, graph: AbstractedGraph, matched=None,
                    bind=None) -> tuple[AbstractedGraph, bool]:
    """Apply one operation; returns (new graph, changed).

    ``changed`` is False when the operation matched nothing, every match was
    a binding noop, or the rewrite left the graph structurally identical.
    The filter and all bindings see the pre-operation state; transformations
    apply to the evolving graph in ascending matched-node id order. ``matched``
    and ``bind`` let a caller reuse filter matches and memoized binding values;
    both default to direct evaluation.
    """
    if matched is None:
        matched = [n for n in graph.nodes if op.filter.evaluate(graph, n)]
    if not matched:
        return graph, False
    current = graph
    for node in matched:  # graph.nodes is ascending id
        values = []
        absent = False
        for binding in op.transform.params:
            value = binding.bind(graph, node) if bind is None else bind(binding, graph, node)
            if value is None:
                absent = True
                break
            values.append(value)
        if absent:
            continue
        current = apply_transform(current, current.node(node.id), op.transform.name, values)
    return current, current.canonical != graph.canonical


def apply_program(program: Program, grid: Grid) -> Grid:
    graph = abstract(program.abstraction, grid)
    for op in program.steps:
        graph, _ = apply_operation(op, graph)
    return reconstruct(graph)


# --- JSON serialization ----------------------------------------------------

_FILTER_TAGS = {
    flt.MatchAll: "any",
    flt.ByColor: "color",
    flt.BySize: "size",
    flt.ByNeighborColor: "neighbor_color",
    flt.ByNeighborSize: "neighbor_size",
    flt.Not: "not",
    flt.And: "and",
    flt.Or: "or",
    flt.ExistsNeighbor: "exists_neighbor",
    flt.ForAllNeighbors: "all_neighbors",
}


def _filter_to_json(f: flt.FilterExpr) -> dict:
    if isinstance(f, flt.MatchAll):
        return {"kind": "any"}
    if isinstance(f, (flt.ByColor, flt.ByNeighborColor)):
        return {"kind": _FILTER_TAGS[type(f)], "value": f.color}
    if isinstance(f, (flt.BySize, flt.ByNeighborSize)):
        return {"kind": _FILTER_TAGS[type(f)], "value": f.size}
    if isinstance(f, (flt.Not, flt.ExistsNeighbor, flt.ForAllNeighbors)):
        return {"kind": _FILTER_TAGS[type(f)], "inner": _filter_to_json(f.inner)}
    if isinstance(f, (flt.And, flt.Or)):
        return {
            "kind": _FILTER_TAGS[type(f)],
            "left": _filter_to_json(f.left),
            "right": _filter_to_json(f.right),
        }
    raise MalformedProgram(f"unserializable filter {f!r}")


def _filter_from_json(doc) -> flt.FilterExpr:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise MalformedProgram(f"bad filter node: {doc!r}")
    kind = doc["kind"]
    try:
        if kind == "any":
            return flt.MatchAll()
        if kind == "color":
            return flt.ByColor(_int_field(doc, "value"))
        if kind == "size":
            return flt.BySize(_int_field(doc, "value"))
        if kind == "neighbor_color":
            return flt.ByNeighborColor(_int_field(doc, "value"))
        if kind == "neighbor_size":
            return flt.ByNeighborSize(_int_field(doc, "value"))
        if kind == "not":
            return flt.Not(_filter_from_json(doc["inner"]))
        if kind == "exists_neighbor":
            return flt.ExistsNeighbor(_filter_from_json(doc["inner"]))
        if kind == "all_neighbors":
            return flt.ForAllNeighbors(_filter_from_json(doc["inner"]))
        if kind == "and":
            return flt.And(_filter_from_json(doc["left"]), _filter_from_json(doc["right"]))
        if kind == "or":
            return flt.Or(_filter_from_json(doc["left"]), _filter_from_json(doc["right"]))
    except KeyError as exc:
        raise MalformedProgram(f"filter {kind!r} missing field {exc}") from exc
    raise MalformedProgram(f"unknown filter kind {kind!r}")


def _int_field(doc: dict, name: str) -> int:
    value = doc.get(name)
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedProgram(f"field {name!r} must be an integer, got {value!r}")
    return value


def _static_value_to_json(value) -> dict:
    if isinstance(value, Pattern):
        return {"type": "pattern", "value": [list(cell) for cell in value.cells]}
    if isinstance(value, tuple) and len(value) == 2:
        return {"type": "pixel", "value": list(value)}
    if isinstance(value, str):
        return {"type": "direction", "value": value}
    if isinstance(value, int) and not isinstance(value, bool):
        return {"type": "color", "value": value}
    raise MalformedProgram(f"unserializable static value {value!r}")


def _static_value_from_json(doc) -> object:
    vtype, value = doc.get("type"), doc.get("value")
    if vtype == "pattern":
        if (not isinstance(value, list) or not value
                or any(not isinstance(c, list) or len(c) != 3 for c in value)):
            raise MalformedProgram(f"bad pattern value {value!r}")
        return Pattern(tuple(tuple(c) for c in value))
    if vtype == "pixel":
        if not isinstance(value, list) or len(value) != 2:
            raise MalformedProgram(f"bad pixel value {value!r}")
        return (int(value[0]), int(value[1]))
    if vtype == "direction":
        if value not in DIRECTIONS:
            raise MalformedProgram(f"unknown direction {value!r}")
        return value
    if vtype == "color":
        if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value <= 9:
            raise MalformedProgram(f"bad color value {value!r}")
        return value
    raise MalformedProgram(f"unknown static value type {vtype!r}")


def _binding_to_json(binding: ParamBinding) -> dict:
    if isinstance(binding, Static):
        out = {"kind": "static"}
        out.update(_static_value_to_json(binding.value))
        return out
    if isinstance(binding, OwnRelation):
        return {"kind": "own", "relation": binding.relation}
    if isinstance(binding, NeighborRelation):
        return {
            "kind": "neighbor",
            "relation": binding.relation,
            "filter": _filter_to_json(binding.filter),
        }
    raise MalformedProgram(f"unserializable binding {binding!r}")


def _binding_from_json(doc) -> ParamBinding:
    if not isinstance(doc, dict):
        raise MalformedProgram(f"bad binding: {doc!r}")
    kind = doc.get("kind")
    if kind == "static":
        return Static(_static_value_from_json(doc))
    if kind == "own":
        if doc.get("relation") not in OWN_RELATIONS:
            raise MalformedProgram(f"bad own relation {doc.get('relation')!r}")
        return OwnRelation(doc["relation"])
    if kind == "neighbor":
        if doc.get("relation") not in NEIGHBOR_RELATIONS:
            raise MalformedProgram(f"bad neighbor relation {doc.get('relation')!r}")
        return NeighborRelation(_filter_from_json(doc.get("filter")), doc["relation"])
    raise MalformedProgram(f"unknown binding kind {kind!r}")


def program_to_json(program: Program) -> str:
    doc = {
        "abstraction": program.abstraction,
        "steps": [
            {
                "filter": _filter_to_json(op.filter),
                "transform": {
                    "name": op.transform.name,
                    "params": [_binding_to_json(p) for p in op.transform.params],
                },
            }
            for op in program.steps
        ],
    }
    return json.dumps(doc, separators=(",", ":"))


def program_from_json(text: str) -> Program:
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise MalformedProgram(f"not a JSON document: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedProgram("program must be a JSON object")
    abstraction = doc.get("abstraction")
    if abstraction not in ABSTRACTIONS:
        raise MalformedProgram(f"unknown abstraction {abstraction!r}")
    steps_doc = doc.get("steps")
    if not isinstance(steps_doc, list):
        raise MalformedProgram("'steps' must be a list")
    steps = []
    for entry in steps_doc:
        if not isinstance(entry, dict) or "filter" not in entry or "transform" not in entry:
            raise MalformedProgram(f"bad step: {entry!r}")
        tdoc = entry["transform"]
        if not isinstance(tdoc, dict) or "name" not in tdoc:
            raise MalformedProgram(f"bad transform: {tdoc!r}")
        name = tdoc["name"]
        if name not in PARAM_TYPES:
            raise MalformedProgram(f"unknown transform {name!r}")
        params_doc = tdoc.get("params", [])
        if not isinstance(params_doc, list):
            raise MalformedProgram("'params' must be a list")
        params = tuple(_binding_from_json(p) for p in params_doc)
        try:
            step = TransformStep(name, params)
        except (ArityMismatch, UnknownTransform) as exc:
            raise MalformedProgram(str(exc)) from exc
        steps.append(FullOperation(_filter_from_json(entry["filter"]), step))
    return Program(abstraction, tuple(steps))
