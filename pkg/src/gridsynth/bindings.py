"""Transformation parameter bindings: static constants or values read off the graph.

A binding either ignores the node (Static), reads one of the node's own
relations (OwnRelation), or collects a relation value from neighbors matched
by a filter (NeighborRelation). With several matches the candidates are
ordered canonically (value ascending, then neighbor id) and the first wins;
with none the binding is absent and the enclosing operation skips the node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .filters import FilterExpr
from .graphs import (
    AbstractedGraph,
    HORIZONTAL_EDGE,
    ObjectNode,
    VERTICAL_EDGE,
)

REL_COLOR = "color"
REL_SIZE = "size"
REL_DIRECTION = "direction"

OWN_RELATIONS = (REL_COLOR, REL_SIZE)
NEIGHBOR_RELATIONS = (REL_COLOR, REL_SIZE, REL_DIRECTION)

# Canonical direction order, also used as the "ascending" order when a
# direction-valued binding has several candidates.
DIRECTIONS = (
    "up", "down", "left", "right",
    "up_left", "up_right", "down_left", "down_right",
)
DIRECTION_DELTAS = {
    "up": (-1, 0), "down": (1, 0), "left": (0, -1), "right": (0, 1),
    "up_left": (-1, -1), "up_right": (-1, 1),
    "down_left": (1, -1), "down_right": (1, 1),
}
_DIRECTION_RANK = {d: i for i, d in enumerate(DIRECTIONS)}


class ParamBinding:
    def bind(self, graph: AbstractedGraph, node: ObjectNode):
        raise NotImplementedError

    def key(self) -> tuple:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Static(ParamBinding):
    value: object

    def bind(self, graph, node):
        return self.value

    def key(self):
        return (0, repr(self.value))

    def describe(self):
        return repr(self.value)


@dataclass(frozen=True)
class OwnRelation(ParamBinding):
    relation: str

    def __post_init__(self) -> None:
        if self.relation not in OWN_RELATIONS:
            raise ValueError(f"unsupported own relation {self.relation!r}")

    def bind(self, graph, node):
        return node.color if self.relation == REL_COLOR else node.size

    def key(self):
        return (1, self.relation)

    def describe(self):
        return f"own.{self.relation}"


def direction_toward(graph: AbstractedGraph, node: ObjectNode,
                     neighbor: ObjectNode) -> list[str]:
    """Directions from node toward an edge-connected neighbor.

    A vertical edge (shared column) points up or down by comparing topmost
    rows; a horizontal edge points left or right by leftmost columns. A pair
    aligned on both axes yields both candidates.
    """
    out = []
    for edge_dir in graph.edge_directions(node.id, neighbor.id):
        if edge_dir == VERTICAL_EDGE:
            out.append("up" if neighbor.min_pixel[0] < node.min_pixel[0] else "down")
        elif edge_dir == HORIZONTAL_EDGE:
            nb_col = min(neighbor.cols)
            own_col = min(node.cols)
            out.append("left" if nb_col < own_col else "right")
    return out


@dataclass(frozen=True)
class NeighborRelation(ParamBinding):
    filter: FilterExpr
    relation: str

    def __post_init__(self) -> None:
        if self.relation not in NEIGHBOR_RELATIONS:
            raise ValueError(f"unsupported neighbor relation {self.relation!r}")

    def bind(self, graph, node):
        candidates: list[tuple[tuple, object]] = []
        for nb in graph.neighbors(node.id):
            if not self.filter.evaluate(graph, nb):
                continue
            if self.relation == REL_COLOR:
                candidates.append(((nb.color, nb.id), nb.color))
            elif self.relation == REL_SIZE:
                candidates.append(((nb.size, nb.id), nb.size))
            else:
                for d in direction_toward(graph, node, nb):
                    candidates.append(((_DIRECTION_RANK[d], nb.id), d))
        if not candidates:
            return None
        candidates.sort(key=lambda item: item[0])
        return candidates[0][1]

    def key(self):
        return (2, self.relation, self.filter.key())

    def describe(self):
        return f"neighbor[{self.filter.describe()}].{self.relation}"


def bind_param(p: ParamBinding, graph: AbstractedGraph, node: ObjectNode) -> Optional[object]:
    return p.bind(graph, node)
