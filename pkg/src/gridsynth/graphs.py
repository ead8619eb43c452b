"""Object-graph abstraction of grids.

An abstraction rule maps a grid to a set of single-color object nodes plus
alignment edges. Two rules ship: ``connected`` (4-connected same-color
components) and ``vertical`` (maximal same-color vertical runs). Nodes keep
their pixels when transformed later, even off-grid or overlapping; clipping
happens only at reconstruction.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable

from .grids import Grid

Pixel = tuple[int, int]

CONNECTED = "connected"
VERTICAL = "vertical"

HORIZONTAL_EDGE = "horizontal"
VERTICAL_EDGE = "vertical"


@dataclass(frozen=True)
class ObjectNode:
    """A single-color object: a non-empty set of (row, col) pixels."""

    id: int
    pixels: frozenset[Pixel]
    color: int

    def __post_init__(self) -> None:
        if not self.pixels:
            raise ValueError("object node needs at least one pixel")

    @property
    def size(self) -> int:
        return len(self.pixels)

    @cached_property
    def rows(self) -> frozenset[int]:
        return frozenset(r for r, _ in self.pixels)

    @cached_property
    def cols(self) -> frozenset[int]:
        return frozenset(c for _, c in self.pixels)

    @cached_property
    def min_pixel(self) -> Pixel:
        return min(self.pixels)

    @cached_property
    def bounding_box(self) -> tuple[int, int, int, int]:
        """(min_row, min_col, max_row, max_col) over the pixel set."""
        rows = [r for r, _ in self.pixels]
        cols = [c for _, c in self.pixels]
        return min(rows), min(cols), max(rows), max(cols)

    def canonical(self) -> tuple:
        return (tuple(sorted(self.pixels)), self.color)


@dataclass(frozen=True)
class GraphEdge:
    """Undirected alignment edge; source < target by construction."""

    source: int
    target: int
    direction: str  # HORIZONTAL_EDGE (shared row) or VERTICAL_EDGE (shared column)


@dataclass(frozen=True)
class AbstractedGraph:
    kind: str
    height: int
    width: int
    background: int
    nodes: tuple[ObjectNode, ...]  # ascending id
    edges: frozenset[GraphEdge]

    @cached_property
    def _by_id(self) -> dict[int, ObjectNode]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def _adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, set[int]] = {n.id: set() for n in self.nodes}
        for e in self.edges:
            adj[e.source].add(e.target)
            adj[e.target].add(e.source)
        return {i: tuple(sorted(ids)) for i, ids in adj.items()}

    def node(self, node_id: int) -> ObjectNode:
        return self._by_id[node_id]

    def neighbors(self, node_id: int) -> tuple[ObjectNode, ...]:
        return tuple(self._by_id[i] for i in self._adjacency[node_id])

    @cached_property
    def _pair_directions(self) -> dict[tuple[int, int], tuple[str, ...]]:
        pairs: dict[tuple[int, int], list[str]] = {}
        for e in self.edges:
            pairs.setdefault((e.source, e.target), []).append(e.direction)
        return {k: tuple(sorted(v)) for k, v in pairs.items()}

    def edge_directions(self, a: int, b: int) -> tuple[str, ...]:
        lo, hi = min(a, b), max(a, b)
        return self._pair_directions.get((lo, hi), ())

    def next_id(self) -> int:
        return max((n.id for n in self.nodes), default=-1) + 1

    def with_nodes(self, nodes: Iterable[ObjectNode]) -> "AbstractedGraph":
        """New graph over the given nodes; edges are rebuilt."""
        ordered = tuple(sorted(nodes, key=lambda n: n.id))
        return AbstractedGraph(
            kind=self.kind,
            height=self.height,
            width=self.width,
            background=self.background,
            nodes=ordered,
            edges=build_edges(ordered),
        )

    @cached_property
    def canonical(self) -> tuple:
        """Id-free structural form: equal values mean equivalent states."""
        return (
            self.kind,
            self.height,
            self.width,
            self.background,
            tuple(sorted(n.canonical() for n in self.nodes)),
        )


def detect_background(grid: Grid) -> int:
    """Color 0 when present anywhere, else the most frequent color (ties: lowest)."""
    counts: Counter[int] = Counter()
    for row in grid.cells:
        counts.update(row)
    if counts[0]:
        return 0
    best = max(counts.items(), key=lambda kv: (kv[1], -kv[0]))
    return best[0]


def build_edges(nodes: Iterable[ObjectNode]) -> frozenset[GraphEdge]:
    """Alignment edges: shared row -> horizontal, shared column -> vertical.

    Both edges may exist for one pair. No blocking check is performed.
    """
    ordered = sorted(nodes, key=lambda n: n.id)
    edges = set()
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if a.rows & b.rows:
                edges.add(GraphEdge(a.id, b.id, HORIZONTAL_EDGE))
            if a.cols & b.cols:
                edges.add(GraphEdge(a.id, b.id, VERTICAL_EDGE))
    return frozenset(edges)


def _finish(grid: Grid, kind: str, background: int,
            components: list[tuple[Pixel, set[Pixel], int]]) -> AbstractedGraph:
    # ids in raster-scan order of each component's smallest pixel
    components.sort(key=lambda item: item[0])
    nodes = tuple(
        ObjectNode(i, frozenset(pixels), color)
        for i, (_, pixels, color) in enumerate(components)
    )
    return AbstractedGraph(
        kind=kind,
        height=grid.height,
        width=grid.width,
        background=background,
        nodes=nodes,
        edges=build_edges(nodes),
    )


def abstract_connected(grid: Grid) -> AbstractedGraph:
    """One node per 4-connected component of same-colored non-background pixels."""
    background = detect_background(grid)
    seen = [[False] * grid.width for _ in range(grid.height)]
    components: list[tuple[Pixel, set[Pixel], int]] = []
    for r in range(grid.height):
        for c in range(grid.width):
            color = grid.at(r, c)
            if seen[r][c] or color == background:
                continue
            stack = [(r, c)]
            seen[r][c] = True
            pixels: set[Pixel] = set()
            while stack:
                pr, pc = stack.pop()
                pixels.add((pr, pc))
                for nr, nc in ((pr - 1, pc), (pr + 1, pc), (pr, pc - 1), (pr, pc + 1)):
                    if (0 <= nr < grid.height and 0 <= nc < grid.width
                            and not seen[nr][nc] and grid.at(nr, nc) == color):
                        seen[nr][nc] = True
                        stack.append((nr, nc))
            components.append(((r, c), pixels, color))
    return _finish(grid, CONNECTED, background, components)


def abstract_vertical(grid: Grid) -> AbstractedGraph:
    """One node per maximal vertical run of same-colored non-background pixels."""
    background = detect_background(grid)
    components: list[tuple[Pixel, set[Pixel], int]] = []
    for c in range(grid.width):
        r = 0
        while r < grid.height:
            color = grid.at(r, c)
            if color == background:
                r += 1
                continue
            top = r
            while r < grid.height and grid.at(r, c) == color:
                r += 1
            components.append(((top, c), {(rr, c) for rr in range(top, r)}, color))
    return _finish(grid, VERTICAL, background, components)


ABSTRACTIONS: dict[str, Callable[[Grid], AbstractedGraph]] = {
    CONNECTED: abstract_connected,
    VERTICAL: abstract_vertical,
}


def abstract(kind: str, grid: Grid) -> AbstractedGraph:
    try:
        return ABSTRACTIONS[kind](grid)
    except KeyError:
        raise ValueError(f"unknown abstraction kind {kind!r}") from None


def reconstruct_rows(graph: AbstractedGraph) -> list[list[int]]:
    """Paint nodes over a background canvas in ascending id order.

    Later-created (higher-id) nodes win overlaps; off-grid pixels are dropped.
    """
    rows = [[graph.background] * graph.width for _ in range(graph.height)]
    for node in graph.nodes:  # ascending id
        for r, c in node.pixels:
            if 0 <= r < graph.height and 0 <= c < graph.width:
                rows[r][c] = node.color
    return rows


def reconstruct(graph: AbstractedGraph) -> Grid:
    return Grid(tuple(tuple(row) for row in reconstruct_rows(graph)))
