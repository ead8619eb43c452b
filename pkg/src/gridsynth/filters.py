"""First-order node filters over abstracted graphs.

Leaves test a node's own color/size or the existence of a neighbor with a
given color/size; combinators are And/Or/Not plus neighbor quantifiers.
Filter values are immutable and hashable, so they double as dictionary keys
(constraint acquisition) and as canonical sort keys (enumeration order).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import AbstractedGraph, ObjectNode


class FilterExpr:
    """Base class; subclasses implement evaluate() and key()."""

    def evaluate(self, graph: AbstractedGraph, node: ObjectNode) -> bool:
        raise NotImplementedError

    def key(self) -> tuple:
        raise NotImplementedError

    def depth(self) -> int:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class MatchAll(FilterExpr):
    """Matches every node (the bare node-type predicate)."""

    def evaluate(self, graph, node):
        return True

    def key(self):
        return (0,)

    def depth(self):
        return 1

    def describe(self):
        return "any"


@dataclass(frozen=True)
class ByColor(FilterExpr):
    color: int

    def evaluate(self, graph, node):
        return node.color == self.color

    def key(self):
        return (1, self.color)

    def depth(self):
        return 1

    def describe(self):
        return f"color={self.color}"


@dataclass(frozen=True)
class BySize(FilterExpr):
    size: int

    def evaluate(self, graph, node):
        return node.size == self.size

    def key(self):
        return (2, self.size)

    def depth(self):
        return 1

    def describe(self):
        return f"size={self.size}"


@dataclass(frozen=True)
class ByNeighborColor(FilterExpr):
    color: int

    def evaluate(self, graph, node):
        return any(nb.color == self.color for nb in graph.neighbors(node.id))

    def key(self):
        return (3, self.color)

    def depth(self):
        return 1

    def describe(self):
        return f"neighbor_color={self.color}"


@dataclass(frozen=True)
class ByNeighborSize(FilterExpr):
    size: int

    def evaluate(self, graph, node):
        return any(nb.size == self.size for nb in graph.neighbors(node.id))

    def key(self):
        return (4, self.size)

    def depth(self):
        return 1

    def describe(self):
        return f"neighbor_size={self.size}"


@dataclass(frozen=True)
class Not(FilterExpr):
    inner: FilterExpr

    def evaluate(self, graph, node):
        return not self.inner.evaluate(graph, node)

    def key(self):
        return (5, self.inner.key())

    def depth(self):
        return 1 + self.inner.depth()

    def describe(self):
        return f"not({self.inner.describe()})"


@dataclass(frozen=True)
class And(FilterExpr):
    left: FilterExpr
    right: FilterExpr

    def evaluate(self, graph, node):
        return self.left.evaluate(graph, node) and self.right.evaluate(graph, node)

    def key(self):
        return (6, self.left.key(), self.right.key())

    def depth(self):
        return 1 + max(self.left.depth(), self.right.depth())

    def describe(self):
        return f"({self.left.describe()} and {self.right.describe()})"


@dataclass(frozen=True)
class Or(FilterExpr):
    left: FilterExpr
    right: FilterExpr

    def evaluate(self, graph, node):
        return self.left.evaluate(graph, node) or self.right.evaluate(graph, node)

    def key(self):
        return (7, self.left.key(), self.right.key())

    def depth(self):
        return 1 + max(self.left.depth(), self.right.depth())

    def describe(self):
        return f"({self.left.describe()} or {self.right.describe()})"


@dataclass(frozen=True)
class ExistsNeighbor(FilterExpr):
    inner: FilterExpr

    def evaluate(self, graph, node):
        return any(self.inner.evaluate(graph, nb) for nb in graph.neighbors(node.id))

    def key(self):
        return (8, self.inner.key())

    def depth(self):
        return 1 + self.inner.depth()

    def describe(self):
        return f"exists_neighbor({self.inner.describe()})"


@dataclass(frozen=True)
class ForAllNeighbors(FilterExpr):
    """Vacuously true for isolated nodes."""

    inner: FilterExpr

    def evaluate(self, graph, node):
        return all(self.inner.evaluate(graph, nb) for nb in graph.neighbors(node.id))

    def key(self):
        return (9, self.inner.key())

    def depth(self):
        return 1 + self.inner.depth()

    def describe(self):
        return f"all_neighbors({self.inner.describe()})"


def eval_filter(f: FilterExpr, graph: AbstractedGraph, node: ObjectNode) -> bool:
    return f.evaluate(graph, node)


def generate_filters(depth: int, colors, sizes) -> list[FilterExpr]:
    """All filter trees up to the given depth over the given constants.

    Output order is canonical: leaves first (match-all, colors, sizes,
    neighbor colors, neighbor sizes, each ascending), then per extra level
    Not / ExistsNeighbor / ForAllNeighbors of the previous level and
    And / Or over key-ordered operand pairs. Deterministic for equal inputs.
    """
    colors = sorted(set(colors))
    sizes = sorted(set(sizes))
    leaves: list[FilterExpr] = [MatchAll()]
    leaves += [ByColor(c) for c in colors]
    leaves += [BySize(s) for s in sizes]
    leaves += [ByNeighborColor(c) for c in colors]
    leaves += [ByNeighborSize(s) for s in sizes]
    result: list[FilterExpr] = list(leaves)
    seen = {f.key() for f in result}
    for _ in range(depth - 1):
        base = list(result)  # deeper levels combine across all shallower trees
        grown: list[FilterExpr] = []
        grown += [Not(f) for f in base]
        grown += [ExistsNeighbor(f) for f in base]
        grown += [ForAllNeighbors(f) for f in base]
        for i, a in enumerate(base):
            for b in base[i + 1:]:
                grown.append(And(a, b))
        for i, a in enumerate(base):
            for b in base[i + 1:]:
                grown.append(Or(a, b))
        for f in grown:
            k = f.key()
            if k not in seen:
                seen.add(k)
                result.append(f)
    return result
