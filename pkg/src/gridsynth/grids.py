"""Grids, tasks and the ARC JSON task format.

Tasks are distributed as ``{"train": [{"input": [[int]], "output": [[int]]}, ...],
"test": [{"input": [[int]], "output"?: [[int]]}, ...]}``. Grids are rectangular,
at most 30x30, with cell colors 0..9.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

MAX_SIDE = 30
NUM_COLORS = 10


class MalformedDocument(ValueError):
    """The task document is not parseable as the ARC JSON shape."""


class InvalidGrid(ValueError):
    """A grid array is ragged, empty, oversized, or holds an out-of-range color."""


@dataclass(frozen=True)
class Grid:
    """A rectangular array of colored cells, stored row-major."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.cells or not self.cells[0]:
            raise InvalidGrid("grid must have at least one row and one column")
        width = len(self.cells[0])
        if any(len(row) != width for row in self.cells):
            raise InvalidGrid("grid rows must all have the same length")
        if len(self.cells) > MAX_SIDE or width > MAX_SIDE:
            raise InvalidGrid(f"grid exceeds {MAX_SIDE}x{MAX_SIDE}")
        for row in self.cells:
            for value in row:
                if isinstance(value, bool) or not isinstance(value, int):
                    raise InvalidGrid(f"cell value {value!r} is not an integer")
                if not 0 <= value < NUM_COLORS:
                    raise InvalidGrid(f"color {value} outside 0..{NUM_COLORS - 1}")

    @property
    def height(self) -> int:
        return len(self.cells)

    @property
    def width(self) -> int:
        return len(self.cells[0])

    def at(self, row: int, col: int) -> int:
        return self.cells[row][col]

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.cells]

    @classmethod
    def from_lists(cls, rows) -> "Grid":
        if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
            raise InvalidGrid("grid must be a list of row lists")
        return cls(tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class TrainPair:
    input: Grid
    output: Grid


@dataclass(frozen=True)
class TestPair:
    input: Grid
    output: Optional[Grid] = None


@dataclass(frozen=True)
class Task:
    """Training input/output pairs plus one or more test inputs."""

    train: tuple[TrainPair, ...]
    test: tuple[TestPair, ...]


def _parse_grid(value) -> Grid:
    return Grid.from_lists(value)


def parse_task(text: str) -> Task:
    """Parse an ARC JSON document into a Task.

    Raises MalformedDocument for structural problems and InvalidGrid for
    bad grid content; never returns a partially-built task.
    """
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise MalformedDocument(f"not a JSON document: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedDocument("top level must be a JSON object")
    for key in ("train", "test"):
        if key not in doc:
            raise MalformedDocument(f"missing top-level key {key!r}")
        if not isinstance(doc[key], list) or not doc[key]:
            raise MalformedDocument(f"{key!r} must be a non-empty list")

    train = []
    for i, entry in enumerate(doc["train"]):
        if not isinstance(entry, dict) or "input" not in entry or "output" not in entry:
            raise MalformedDocument(f"train[{i}] must hold 'input' and 'output'")
        train.append(TrainPair(_parse_grid(entry["input"]), _parse_grid(entry["output"])))

    test = []
    for i, entry in enumerate(doc["test"]):
        if not isinstance(entry, dict) or "input" not in entry:
            raise MalformedDocument(f"test[{i}] must hold 'input'")
        output = _parse_grid(entry["output"]) if "output" in entry else None
        test.append(TestPair(_parse_grid(entry["input"]), output))

    return Task(tuple(train), tuple(test))


def serialize_prediction(grid: Grid) -> str:
    """Emit a grid as a compact JSON 2-D integer array (row-major)."""
    return json.dumps(grid.to_lists(), separators=(",", ":"))


def serialize_task(task: Task) -> str:
    """Inverse of parse_task, used for fixtures and round-trip checks."""
    doc = {
        "train": [
            {"input": p.input.to_lists(), "output": p.output.to_lists()}
            for p in task.train
        ],
        "test": [
            {"input": p.input.to_lists()}
            if p.output is None
            else {"input": p.input.to_lists(), "output": p.output.to_lists()}
            for p in task.test
        ],
    }
    return json.dumps(doc, separators=(",", ":"))
