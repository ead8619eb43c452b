"""Greedy best-first synthesis of operation sequences over abstracted graphs.

One root per enabled abstraction enters a shared frontier. Expanding a node
enumerates candidate operations, drops those that violate acquired
constraints, applies the survivors to every training instance's graph, and
keeps children that change something and (with hashing on) have not been seen
before, giving the search tree DAG structure. The frontier pops the lowest
pixel-penalty score, ties broken by insertion order, so identical runs are
identical. A score-0 node is verified by exact grid comparison before the
search declares success.
"""

from __future__ import annotations

import hashlib
import heapq
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .constraints import AcquiredConstraints, acquire_constraints, violates
from .enumeration import (
    CARDINAL_DIRECTIONS,
    DEFAULT_TRANSFORMS,
    EnumerationConfig,
    enumerate_operations,
    harvest_patterns,
)
from .filters import generate_filters
from .graphs import CONNECTED, VERTICAL, AbstractedGraph, abstract, reconstruct
from .grids import Grid, Task
from .programs import FullOperation, Program, apply_operation, apply_program

BEST_FIRST = "best-first"
BREADTH_FIRST = "bfs"


class DimensionMismatch(ValueError):
    """Training input and output grids differ in shape; pixel scoring is undefined."""


def score_graphs(graphs: Sequence[AbstractedGraph], outputs: Sequence[Grid]) -> int:
    """Pixel penalty against the training outputs, summed over instances.

    Per pixel: 2 when exactly one side is background, 1 when both are
    non-background but colors differ, 0 otherwise.
    """
    if len(graphs) != len(outputs):
        raise DimensionMismatch("one graph per training output required")
    total = 0
    for graph, out in zip(graphs, outputs):
        if graph.height != out.height or graph.width != out.width:
            raise DimensionMismatch(
                f"graph is {graph.height}x{graph.width}, output {out.height}x{out.width}")
        bg = graph.background
        predicted = reconstruct(graph)
        for prow, arow in zip(predicted.cells, out.cells):
            for p, a in zip(prow, arow):
                if (a == bg) != (p == bg):
                    total += 2
                elif a != bg and p != a:
                    total += 1
    return total


def hash_state(graphs: Sequence[AbstractedGraph]) -> str:
    """Digest of the id-erased canonical graph forms, one per instance."""
    canon = tuple(g.canonical for g in graphs)
    return hashlib.blake2b(repr(canon).encode(), digest_size=16).hexdigest()


@dataclass(frozen=True)
class SearchNode:
    abstraction: str
    graphs: tuple[AbstractedGraph, ...]
    history: tuple[FullOperation, ...]
    score: int
    digest: str


class Frontier:
    """Min-heap over (priority, insertion sequence); pop is deterministic."""

    def __init__(self, strategy: str = BEST_FIRST):
        if strategy not in (BEST_FIRST, BREADTH_FIRST):
            raise ValueError(f"unknown strategy {strategy!r}")
        self._strategy = strategy
        self._heap: list[tuple[tuple, SearchNode]] = []
        self._seq = 0

    def push(self, node: SearchNode) -> None:
        if self._strategy == BEST_FIRST:
            key = (node.score, self._seq)
        else:
            key = (self._seq,)
        self._seq += 1
        heapq.heappush(self._heap, (key, node))

    def push_entry(self, entry: tuple[tuple, SearchNode]) -> None:
        heapq.heappush(self._heap, entry)

    def pop_entry(self) -> tuple[tuple, SearchNode]:
        return heapq.heappop(self._heap)

    def __len__(self) -> int:
        return len(self._heap)


class TabuState:
    """Tracks per-abstraction score windows and temporary suspensions.

    Recording a strictly increasing (worsening) window of best child scores
    suspends that abstraction for a fixed number of subsequent expansions,
    unless it is the only abstraction still active.
    """

    def __init__(self, kinds: Sequence[str], window: int = 5, duration: int = 10):
        self.window = window
        self.duration = duration
        self._scores: dict[str, list[int]] = {k: [] for k in kinds}
        self._suspended: dict[str, int] = {k: 0 for k in kinds}

    def record(self, kind: str, child_scores: Sequence[int]) -> None:
        if not child_scores:
            return
        window = self._scores[kind]
        window.append(min(child_scores))
        if len(window) > self.window:
            window.pop(0)
        if len(window) == self.window and all(a < b for a, b in zip(window, window[1:])):
            others_active = any(
                k != kind and self._suspended[k] == 0 for k in self._suspended)
            if others_active:
                self._suspended[kind] = self.duration
                window.clear()

    def tick(self) -> None:
        for k, left in self._suspended.items():
            if left > 0:
                self._suspended[k] = left - 1

    def lift_all(self) -> None:
        for k in self._suspended:
            self._suspended[k] = 0
            self._scores[k].clear()

    def is_suspended(self, kind: str) -> bool:
        return self._suspended[kind] > 0


@dataclass(frozen=True)
class SolveConfig:
    node_limit: int = 50_000
    time_limit: float = 300.0
    max_depth: int = 4
    abstractions: tuple[str, ...] = (CONNECTED, VERTICAL)
    use_ca: bool = True
    use_tabu: bool = True
    use_hash: bool = True
    strategy: str = BEST_FIRST
    tabu_window: int = 5
    tabu_duration: int = 10
    filter_depth: int = 2
    directions: tuple[str, ...] = CARDINAL_DIRECTIONS
    transforms: tuple[str, ...] = DEFAULT_TRANSFORMS
    dynamic_bindings: bool = True
    binding_filter_depth: int = 1


@dataclass
class SolveStats:
    nodes_explored: int
    elapsed: float
    solved: bool
    program_length: Optional[int]


@dataclass
class SolveResult:
    program: Optional[Program]
    predictions: Optional[tuple[Grid, ...]]
    stats: SolveStats
    acquired: dict[str, AcquiredConstraints]


def expand(node: SearchNode, acquired: AcquiredConstraints, visited: set[str],
           config: SolveConfig, enum_config: EnumerationConfig,
           outputs: Sequence[Grid]) -> list[SearchNode]:
    """Children of one search node, committed in canonical operation order.

    Mutates ``visited`` when hashing is enabled. Drops constraint violations,
    operations ineffective on every instance, and (with hashing) states whose
    digest was already seen.
    """
    ops = enumerate_operations(node.graphs, enum_config)

    bind_cache: dict[tuple, object] = {}

    def binder_for(idx: int):
        def bound(binding, graph, n):
            key = (idx, binding, n.id)
            try:
                return bind_cache[key]
            except KeyError:
                value = binding.bind(graph, n)
                bind_cache[key] = value
                return value
        return bound

    binders = [binder_for(i) for i in range(len(node.graphs))]

    children: list[SearchNode] = []
    group_filter = None
    matches: list[list] = []
    any_match = False
    for op in ops:
        if op.filter is not group_filter:  # ops arrive filter-major
            group_filter = op.filter
            matches = [
                [n for n in g.nodes if group_filter.evaluate(g, n)]
                for g in node.graphs
            ]
            any_match = any(matches)
        if not any_match:
            continue
        if config.use_ca and violates(op, acquired):
            continue
        new_graphs = []
        changed_any = False
        for i, g in enumerate(node.graphs):
            new_graph, changed = apply_operation(op, g, matched=matches[i],
                                                 bind=binders[i])
            new_graphs.append(new_graph)
            changed_any = changed_any or changed
        if not changed_any:
            continue
        digest = hash_state(new_graphs)
        if config.use_hash:
            if digest in visited:
                continue
            visited.add(digest)
        children.append(SearchNode(
            abstraction=node.abstraction,
            graphs=tuple(new_graphs),
            history=node.history + (op,),
            score=score_graphs(new_graphs, outputs),
            digest=digest,
        ))
    return children


def _reproduces(graphs: Sequence[AbstractedGraph], outputs: Sequence[Grid]) -> bool:
    return all(reconstruct(g) == out for g, out in zip(graphs, outputs))


def solve(task: Task, config: SolveConfig = SolveConfig()) -> SolveResult:
    """Search for a program reproducing every training output exactly.

    Budget exhaustion is an unsolved result, not an error. Raises
    DimensionMismatch for tasks whose outputs change grid shape.
    """
    start = time.monotonic()
    deadline = start + config.time_limit
    if not config.abstractions:
        raise ValueError("at least one abstraction must be enabled")
    for pair in task.train:
        if (pair.input.height, pair.input.width) != (pair.output.height, pair.output.width):
            raise DimensionMismatch("training pair changes grid dimensions")
    inputs = [p.input for p in task.train]
    outputs = [p.output for p in task.train]

    enum_configs: dict[str, EnumerationConfig] = {}
    acquired_all: dict[str, AcquiredConstraints] = {}
    roots: list[SearchNode] = []
    for kind in config.abstractions:
        graphs = tuple(abstract(kind, g) for g in inputs)
        out_graphs = tuple(abstract(kind, g) for g in outputs)
        enum_configs[kind] = EnumerationConfig(
            filter_depth=config.filter_depth,
            directions=config.directions,
            transforms=config.transforms,
            extra_colors=tuple(sorted({n.color for g in out_graphs for n in g.nodes})),
            patterns=harvest_patterns(graphs, out_graphs),
            dynamic_bindings=config.dynamic_bindings,
            binding_filter_depth=config.binding_filter_depth,
        )
        if config.use_ca:
            colors = sorted({n.color for g in graphs + out_graphs for n in g.nodes})
            sizes = sorted({n.size for g in graphs + out_graphs for n in g.nodes})
            candidates = generate_filters(config.filter_depth, colors, sizes)
            acquired_all[kind] = acquire_constraints(
                list(zip(graphs, out_graphs)), candidates)
        else:
            acquired_all[kind] = {}
        roots.append(SearchNode(kind, graphs, (), score_graphs(graphs, outputs),
                                hash_state(graphs)))

    frontier = Frontier(config.strategy)
    tabu = TabuState(config.abstractions, config.tabu_window, config.tabu_duration)
    stash: dict[str, list[tuple[tuple, SearchNode]]] = {
        kind: [] for kind in config.abstractions}
    visited: set[str] = set()
    nodes_explored = 0
    solution: Optional[SearchNode] = None

    for root in roots:
        visited.add(root.digest)
        nodes_explored += 1
        if solution is None and root.score == 0 and _reproduces(root.graphs, outputs):
            solution = root
        frontier.push(root)

    while solution is None and (len(frontier) or any(stash.values())):
        if time.monotonic() > deadline or nodes_explored >= config.node_limit:
            break
        if not len(frontier):
            # Only suspended work remains; suspension cannot outlast the search.
            tabu.lift_all()
            for kind, entries in stash.items():
                for entry in entries:
                    frontier.push_entry(entry)
                entries.clear()
            continue
        entry = frontier.pop_entry()
        node = entry[1]
        if config.use_tabu and tabu.is_suspended(node.abstraction):
            stash[node.abstraction].append(entry)
            continue
        if len(node.history) >= config.max_depth:
            continue
        children = expand(node, acquired_all[node.abstraction], visited, config,
                          enum_configs[node.abstraction], outputs)
        nodes_explored += len(children)
        for child in children:
            if child.score == 0 and _reproduces(child.graphs, outputs):
                solution = child
                break
        if solution is not None:
            break
        for child in children:
            frontier.push(child)
        if config.use_tabu:
            tabu.tick()
            tabu.record(node.abstraction, [c.score for c in children])
            for kind, entries in stash.items():
                if entries and not tabu.is_suspended(kind):
                    for entry in entries:
                        frontier.push_entry(entry)
                    entries.clear()

    elapsed = time.monotonic() - start
    if solution is not None:
        program = Program(solution.abstraction, solution.history)
        predictions = tuple(apply_program(program, t.input) for t in task.test)
        stats = SolveStats(nodes_explored, elapsed, True, len(solution.history))
        return SolveResult(program, predictions, stats, acquired_all)
    return SolveResult(None, None, SolveStats(nodes_explored, elapsed, False, None),
                       acquired_all)
