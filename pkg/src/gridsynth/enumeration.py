"""Candidate operation enumeration for the synthesis search.

Filters are instantiated only with colors and sizes present in the current
graphs; transformation parameters draw on present colors (plus configured
extras, normally the training outputs' colors), the configured directions,
harvested patterns, and single-hop dynamic bindings. Output order is
canonical: filters in generation order, then transformations in vocabulary
order, then parameter combinations (statics before dynamics, ascending).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .bindings import (
    DIRECTIONS,
    NeighborRelation,
    OwnRelation,
    ParamBinding,
    Static,
)
from .filters import FilterExpr, generate_filters
from .graphs import AbstractedGraph
from .programs import FullOperation
from .transforms import (
    PARAM_TYPES,
    Pattern,
    TRANSFORM_ORDER,
    TransformStep,
    UPDATE_COLOR,
)

CARDINAL_DIRECTIONS = DIRECTIONS[:4]

# mirror is omitted by default: nothing in the parameter sources produces a
# pixel, so it would enumerate zero instantiations anyway. Supplying
# EnumerationConfig.mirror_pixels turns it on.
DEFAULT_TRANSFORMS = tuple(t for t in TRANSFORM_ORDER if t != "mirror")


@dataclass(frozen=True)
class EnumerationConfig:
    filter_depth: int = 2
    directions: tuple[str, ...] = CARDINAL_DIRECTIONS
    transforms: tuple[str, ...] = DEFAULT_TRANSFORMS
    extra_colors: tuple[int, ...] = ()
    patterns: tuple[Pattern, ...] = ()
    dynamic_bindings: bool = True
    binding_filter_depth: int = 1
    mirror_pixels: tuple[tuple[int, int], ...] = ()


def harvest_patterns(input_graphs: Sequence[AbstractedGraph],
                     output_graphs: Sequence[AbstractedGraph]) -> tuple[Pattern, ...]:
    """Patterns from nodes present in a training output but not its input.

    A node counts as new when its (pixel set, color) pair has no exact match
    among the input's nodes; the pattern stores offsets from the node's own
    bounding-box top-left.
    """
    found: set[Pattern] = set()
    for gin, gout in zip(input_graphs, output_graphs):
        existing = {(n.pixels, n.color) for n in gin.nodes}
        for node in gout.nodes:
            if (node.pixels, node.color) in existing:
                continue
            r0, c0, _, _ = node.bounding_box
            found.add(Pattern(tuple((r - r0, c - c0, node.color) for r, c in node.pixels)))
    return tuple(sorted(found, key=lambda p: (len(p.cells), p.cells)))


def _color_bindings(colors: Sequence[int], binding_filters: Sequence[FilterExpr],
                    config: EnumerationConfig, transform: str) -> list[ParamBinding]:
    out: list[ParamBinding] = [Static(c) for c in colors]
    if config.dynamic_bindings:
        if transform != UPDATE_COLOR:
            # recoloring to the node's own color can never change anything
            out.append(OwnRelation("color"))
        out += [NeighborRelation(f, "color") for f in binding_filters]
    return out


def _direction_bindings(binding_filters: Sequence[FilterExpr],
                        config: EnumerationConfig) -> list[ParamBinding]:
    out: list[ParamBinding] = [Static(d) for d in config.directions]
    if config.dynamic_bindings:
        out += [NeighborRelation(f, "direction") for f in binding_filters]
    return out


def enumerate_operations(graphs: Sequence[AbstractedGraph],
                         config: EnumerationConfig = EnumerationConfig()
                         ) -> list[FullOperation]:
    """All candidate operations for the given per-instance graphs."""
    colors = sorted({n.color for g in graphs for n in g.nodes})
    sizes = sorted({n.size for g in graphs for n in g.nodes})
    param_colors = sorted(set(colors) | set(config.extra_colors))

    op_filters = generate_filters(config.filter_depth, colors, sizes)
    binding_filters = generate_filters(config.binding_filter_depth, colors, sizes)

    sources_by_type: dict[str, dict[str, list[ParamBinding]]] = {}
    for name in config.transforms:
        per_param: dict[str, list[ParamBinding]] = {}
        for ptype in PARAM_TYPES[name]:
            if ptype == "color":
                per_param[ptype] = _color_bindings(param_colors, binding_filters,
                                                   config, name)
            elif ptype == "direction":
                per_param[ptype] = _direction_bindings(binding_filters, config)
            elif ptype == "pattern":
                per_param[ptype] = [Static(p) for p in config.patterns]
            elif ptype == "pixel":
                per_param[ptype] = [Static(px) for px in config.mirror_pixels]
        sources_by_type[name] = per_param

    steps: list[TransformStep] = []
    for name in TRANSFORM_ORDER:
        if name not in config.transforms:
            continue
        per_param = sources_by_type[name]
        pools = [per_param[ptype] for ptype in PARAM_TYPES[name]]
        for combo in itertools.product(*pools):
            steps.append(TransformStep(name, tuple(combo)))

    return [FullOperation(f, step) for f in op_filters for step in steps]
