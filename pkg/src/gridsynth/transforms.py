"""Node-level graph rewrites.

Each transformation replaces the target node with a transformed version that
gets a fresh id (so overlap painting favors the most recent change); some add
one extra node (rectangle fill, hollow interior, border, inserted pattern).
Edges are rebuilt over the new node set. Pixels may leave the grid or overlap
other nodes; nothing is clipped here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bindings import DIRECTION_DELTAS, ParamBinding
from .graphs import AbstractedGraph, ObjectNode, Pixel

UPDATE_COLOR = "update_color"
MOVE = "move"
MOVE_MAX = "move_max"
ROTATE = "rotate"
FILL_RECTANGLE = "fill_rectangle"
HOLLOW_RECTANGLE = "hollow_rectangle"
ADD_BORDER = "add_border"
INSERT_PATTERN = "insert_pattern"
MIRROR = "mirror"
EXTEND = "extend"
FLIP = "flip"

# Parameter value types per transformation, in signature order.
PARAM_TYPES: dict[str, tuple[str, ...]] = {
    UPDATE_COLOR: ("color",),
    MOVE: ("direction",),
    MOVE_MAX: ("direction",),
    ROTATE: (),
    FILL_RECTANGLE: ("color",),
    HOLLOW_RECTANGLE: ("color",),
    ADD_BORDER: ("color",),
    INSERT_PATTERN: ("pattern",),
    MIRROR: ("pixel", "direction"),
    EXTEND: ("direction",),
    FLIP: ("direction",),
}
TRANSFORM_ORDER = tuple(PARAM_TYPES)


class ArityMismatch(ValueError):
    """Wrong number of parameter values for a transformation."""


class UnknownTransform(ValueError):
    """Transformation name outside the DSL vocabulary."""


@dataclass(frozen=True)
class Pattern:
    """Pixel offsets with colors, relative to a node's bounding-box top-left."""

    cells: tuple[tuple[int, int, int], ...]  # (dr, dc, color), sorted

    def __post_init__(self) -> None:
        if not self.cells:
            raise ValueError("pattern must be non-empty")
        object.__setattr__(self, "cells", tuple(sorted(self.cells)))

    def colors(self) -> tuple[int, ...]:
        return tuple(sorted({color for _, _, color in self.cells}))


@dataclass(frozen=True)
class TransformStep:
    name: str
    params: tuple[ParamBinding, ...] = ()

    def __post_init__(self) -> None:
        if self.name not in PARAM_TYPES:
            raise UnknownTransform(f"unknown transformation {self.name!r}")
        expected = len(PARAM_TYPES[self.name])
        if len(self.params) != expected:
            raise ArityMismatch(
                f"{self.name} takes {expected} parameter(s), got {len(self.params)}")

    def key(self) -> tuple:
        return (TRANSFORM_ORDER.index(self.name), tuple(p.key() for p in self.params))

    def describe(self) -> str:
        args = ", ".join(p.describe() for p in self.params)
        return f"{self.name}({args})"


def _shift(pixels: frozenset[Pixel], dr: int, dc: int) -> frozenset[Pixel]:
    return frozenset((r + dr, c + dc) for r, c in pixels)


def _in_bounds(pixels, height: int, width: int) -> bool:
    return all(0 <= r < height and 0 <= c < width for r, c in pixels)


def _other_pixels(graph: AbstractedGraph, node_id: int) -> set[Pixel]:
    out: set[Pixel] = set()
    for n in graph.nodes:
        if n.id != node_id:
            out |= n.pixels
    return out


def _occupied(graph: AbstractedGraph) -> set[Pixel]:
    out: set[Pixel] = set()
    for n in graph.nodes:
        out |= n.pixels
    return out


def _direction_delta(value) -> tuple[int, int]:
    try:
        return DIRECTION_DELTAS[value]
    except (KeyError, TypeError):
        raise ValueError(f"not a direction: {value!r}") from None


def apply_transform(graph: AbstractedGraph, node: ObjectNode, name: str,
                    values) -> AbstractedGraph:
    """Apply one transformation to one node, returning the rewritten graph."""
    if name not in PARAM_TYPES:
        raise UnknownTransform(f"unknown transformation {name!r}")
    values = tuple(values)
    if len(values) != len(PARAM_TYPES[name]):
        raise ArityMismatch(
            f"{name} takes {len(PARAM_TYPES[name])} value(s), got {len(values)}")

    fresh = graph.next_id()
    new_pixels = node.pixels
    new_color = node.color
    extra: list[tuple[frozenset[Pixel], int]] = []  # (pixels, color) nodes to add

    if name == UPDATE_COLOR:
        new_color = _color_value(values[0])

    elif name == MOVE:
        dr, dc = _direction_delta(values[0])
        new_pixels = _shift(node.pixels, dr, dc)

    elif name == MOVE_MAX:
        dr, dc = _direction_delta(values[0])
        others = _other_pixels(graph, node.id)
        current = node.pixels
        while True:
            candidate = _shift(current, dr, dc)
            if not _in_bounds(candidate, graph.height, graph.width):
                break
            if candidate & others:
                break
            current = candidate
        new_pixels = current

    elif name == ROTATE:
        r0, c0, r1, c1 = node.bounding_box
        rsum, csum = r0 + r1, c0 + c1
        # 90 degrees clockwise about the box center; half-pixel centers floor
        new_pixels = frozenset(
            ((rsum + 2 * c - csum) // 2, (csum + rsum - 2 * r) // 2)
            for r, c in node.pixels
        )

    elif name == EXTEND:
        dr, dc = _direction_delta(values[0])
        others = _other_pixels(graph, node.id)
        grown = set(node.pixels)
        for r, c in node.pixels:
            nr, nc = r + dr, c + dc
            while 0 <= nr < graph.height and 0 <= nc < graph.width and (nr, nc) not in others:
                grown.add((nr, nc))
                nr, nc = nr + dr, nc + dc
        new_pixels = frozenset(grown)

    elif name == FILL_RECTANGLE:
        color = _color_value(values[0])
        interior = _interior_cells(graph, node)
        occupied = _occupied(graph)
        cells = frozenset(p for p in interior if p not in occupied)
        if cells:
            extra.append((cells, color))

    elif name == HOLLOW_RECTANGLE:
        color = _color_value(values[0])
        interior = frozenset(_interior_cells(graph, node))
        if interior:
            extra.append((interior, color))
            remaining = node.pixels - interior
            new_pixels = remaining  # may become empty; node is then dropped

    elif name == ADD_BORDER:
        color = _color_value(values[0])
        occupied = _occupied(graph)
        ring: set[Pixel] = set()
        for r, c in node.pixels:
            for nr in (r - 1, r, r + 1):
                for nc in (c - 1, c, c + 1):
                    if (nr, nc) == (r, c):
                        continue
                    if not (0 <= nr < graph.height and 0 <= nc < graph.width):
                        continue
                    if (nr, nc) not in occupied:
                        ring.add((nr, nc))
        if ring:
            extra.append((frozenset(ring), color))

    elif name == INSERT_PATTERN:
        pattern = values[0]
        if not isinstance(pattern, Pattern):
            raise ValueError(f"not a pattern: {pattern!r}")
        r0, c0, _, _ = node.bounding_box
        for color in pattern.colors():  # one node per color, ascending
            cells = frozenset(
                (r0 + dr, c0 + dc) for dr, dc, col in pattern.cells if col == color)
            extra.append((cells, color))

    elif name == MIRROR:
        pivot = values[0]
        if (not isinstance(pivot, tuple) or len(pivot) != 2
                or not all(isinstance(v, int) for v in pivot)):
            raise ValueError(f"not a pixel: {pivot!r}")
        new_pixels = frozenset(
            _reflect_about(pivot, values[1], p) for p in node.pixels)

    elif name == FLIP:
        r0, c0, r1, c1 = node.bounding_box
        new_pixels = frozenset(
            _flip_in_box(values[0], r0, c0, r1, c1, p) for p in node.pixels)

    nodes = [n for n in graph.nodes if n.id != node.id]
    if new_pixels:
        nodes.append(ObjectNode(fresh, new_pixels, new_color))
        fresh += 1
    for cells, color in extra:
        nodes.append(ObjectNode(fresh, cells, color))
        fresh += 1
    return graph.with_nodes(nodes)


def _color_value(value) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value <= 9:
        raise ValueError(f"not a color: {value!r}")
    return value


def _interior_cells(graph: AbstractedGraph, node: ObjectNode) -> list[Pixel]:
    """In-bounds cells strictly inside the node's bounding box."""
    r0, c0, r1, c1 = node.bounding_box
    return [
        (r, c)
        for r in range(max(r0 + 1, 0), min(r1, graph.height))
        for c in range(max(c0 + 1, 0), min(c1, graph.width))
    ]


def _reflect_about(pivot: Pixel, direction, p: Pixel) -> Pixel:
    pr, pc = pivot
    r, c = p
    delta = _direction_delta(direction)
    if delta in ((-1, 0), (1, 0)):        # mirror across the row through pivot
        return (2 * pr - r, c)
    if delta in ((0, -1), (0, 1)):        # mirror across the column through pivot
        return (r, 2 * pc - c)
    if delta in ((-1, 1), (1, -1)):       # main diagonal through pivot
        return (pr + (c - pc), pc + (r - pr))
    return (pr - (c - pc), pc - (r - pr))  # anti-diagonal


def _flip_in_box(direction, r0: int, c0: int, r1: int, c1: int, p: Pixel) -> Pixel:
    delta = _direction_delta(direction)
    r, c = p
    if delta in ((-1, 0), (1, 0)):        # flip across the box's horizontal axis
        return (r0 + r1 - r, c)
    if delta in ((0, -1), (0, 1)):        # vertical axis
        return (r, c0 + c1 - c)
    if delta in ((-1, -1), (1, 1)):       # main diagonal of the box
        return (r0 + (c - c0), c0 + (r - r0))
    return (r0 + (c1 - c), c0 + (r1 - r))  # anti-diagonal
