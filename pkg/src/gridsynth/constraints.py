"""Constraint acquisition from training pairs, and operation pruning.

For every candidate filter, input and output training graphs are paired node
by node (greedy maximal pixel overlap). A constraint kind is acquired for the
filter only when pairing succeeds on every training instance and the kind
holds on every pair; acquisition is deliberately conservative, so ambiguous
evidence yields nothing. Pruning is static: a transformation is rejected
under a filter when its name is incompatible with an acquired kind.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .filters import FilterExpr
from .graphs import AbstractedGraph, ObjectNode
from .programs import FullOperation
from .transforms import (
    ADD_BORDER,
    EXTEND,
    FILL_RECTANGLE,
    FLIP,
    HOLLOW_RECTANGLE,
    MIRROR,
    MOVE,
    MOVE_MAX,
    ROTATE,
    UPDATE_COLOR,
)

POSITION_UNCHANGED = "position_unchanged"
COLOR_UNCHANGED = "color_unchanged"
SIZE_UNCHANGED = "size_unchanged"
CONSTRAINT_KINDS = (POSITION_UNCHANGED, COLOR_UNCHANGED, SIZE_UNCHANGED)

# Transformations statically incompatible with each acquired kind. A
# transformation appears under position_unchanged iff it rewrites the matched
# node's own pixel set.
INCOMPATIBLE = {
    POSITION_UNCHANGED: frozenset(
        {MOVE, MOVE_MAX, ROTATE, EXTEND, MIRROR, FLIP, HOLLOW_RECTANGLE}),
    COLOR_UNCHANGED: frozenset({UPDATE_COLOR}),
    SIZE_UNCHANGED: frozenset(
        {EXTEND, FILL_RECTANGLE, HOLLOW_RECTANGLE, ADD_BORDER}),
}

AcquiredConstraints = dict[FilterExpr, frozenset[str]]


def check_constraint(kind: str, before: ObjectNode, after: ObjectNode) -> bool:
    if kind == POSITION_UNCHANGED:
        return before.pixels == after.pixels
    if kind == COLOR_UNCHANGED:
        return before.color == after.color
    if kind == SIZE_UNCHANGED:
        return before.size == after.size
    raise ValueError(f"unknown constraint kind {kind!r}")


def pair_nodes(in_graph: AbstractedGraph, out_graph: AbstractedGraph,
               f: FilterExpr) -> Optional[list[tuple[ObjectNode, ObjectNode]]]:
    """Match filter-selected input nodes to output nodes by pixel overlap.

    Greedy: largest intersection first, ties by node ids. Returns None when
    the selections differ in cardinality or any node stays unmatched.
    """
    ins = [n for n in in_graph.nodes if f.evaluate(in_graph, n)]
    outs = [n for n in out_graph.nodes if f.evaluate(out_graph, n)]
    if len(ins) != len(outs):
        return None
    if not ins:
        return []
    overlaps = []
    for a in ins:
        for b in outs:
            common = len(a.pixels & b.pixels)
            if common:
                overlaps.append((-common, a.id, b.id, a, b))
    overlaps.sort(key=lambda item: item[:3])
    used_in: set[int] = set()
    used_out: set[int] = set()
    pairs: list[tuple[ObjectNode, ObjectNode]] = []
    for _, aid, bid, a, b in overlaps:
        if aid in used_in or bid in used_out:
            continue
        used_in.add(aid)
        used_out.add(bid)
        pairs.append((a, b))
    if len(pairs) != len(ins):
        return None  # some node had no overlapping candidate left
    return pairs


def acquire_constraints(
    training_graphs: Sequence[tuple[AbstractedGraph, AbstractedGraph]],
    candidate_filters: Sequence[FilterExpr],
) -> AcquiredConstraints:
    """Constraints that held for every pair of every training instance.

    Filters that fail to pair on some instance, or match nothing anywhere,
    are left out entirely.
    """
    acquired: AcquiredConstraints = {}
    for f in candidate_filters:
        all_pairs: list[tuple[ObjectNode, ObjectNode]] = []
        usable = True
        for gin, gout in training_graphs:
            pairs = pair_nodes(gin, gout, f)
            if pairs is None or not pairs:
                usable = False
                break
            all_pairs += pairs
        if not usable:
            continue
        kinds = frozenset(
            kind for kind in CONSTRAINT_KINDS
            if all(check_constraint(kind, a, b) for a, b in all_pairs)
        )
        if kinds:
            acquired[f] = kinds
    return acquired


def violates(op: FullOperation, acquired: AcquiredConstraints) -> bool:
    kinds = acquired.get(op.filter)
    if not kinds:
        return False
    name = op.transform.name
    return any(name in INCOMPATIBLE[kind] for kind in kinds)
