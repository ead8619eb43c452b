"""Command-line driver: solve task files, emit programs, predictions and stats.

Per task the driver writes ``<task>.program.json`` (when solved) and
``<task>.prediction.json`` (a JSON array with one grid per test input), and
appends a record to ``stats.json``. The stats file is rewritten atomically
after every task so interrupted batches still leave valid JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from pathlib import Path

from .graphs import ABSTRACTIONS
from .grids import InvalidGrid, MalformedDocument, parse_task
from .render import render_ascii, render_ppm
from .search import (
    BEST_FIRST,
    BREADTH_FIRST,
    DimensionMismatch,
    SolveConfig,
    solve,
)
from .programs import program_to_json


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridsynth",
        description="Synthesize object-graph programs for ARC-style grid tasks.",
    )
    parser.add_argument("--task", action="append", default=[], metavar="PATH",
                        help="task JSON file (repeatable)")
    parser.add_argument("--tasks-dir", metavar="DIR",
                        help="solve every *.json task in a directory")
    parser.add_argument("--time-limit", type=float, default=300.0, metavar="S",
                        help="per-task time budget in seconds (default 300)")
    parser.add_argument("--node-limit", type=int, default=50_000, metavar="N",
                        help="per-task unique-node budget (default 50000)")
    parser.add_argument("--depth", type=int, default=4, metavar="K",
                        help="max program length (default 4)")
    parser.add_argument("--abstractions", default="connected,vertical",
                        help="comma-separated abstraction kinds (default connected,vertical)")
    parser.add_argument("--no-ca", action="store_true",
                        help="disable constraint acquisition")
    parser.add_argument("--no-tabu", action="store_true", help="disable the Tabu list")
    parser.add_argument("--no-hash", action="store_true",
                        help="disable state-hash deduplication")
    parser.add_argument("--strategy", choices=[BEST_FIRST, BREADTH_FIRST],
                        default=BEST_FIRST)
    parser.add_argument("--render", choices=["ascii", "image"],
                        help="also render predictions")
    parser.add_argument("--out", default="out", metavar="DIR",
                        help="output directory (default ./out)")
    return parser


def _config_from_args(args) -> SolveConfig:
    kinds = tuple(k.strip() for k in args.abstractions.split(",") if k.strip())
    if not kinds:
        raise ValueError("at least one abstraction must be enabled")
    for kind in kinds:
        if kind not in ABSTRACTIONS:
            raise ValueError(f"unknown abstraction {kind!r}")
    if args.node_limit <= 0 or args.time_limit <= 0:
        raise ValueError("budgets must be positive")
    return SolveConfig(
        node_limit=args.node_limit,
        time_limit=args.time_limit,
        max_depth=args.depth,
        abstractions=kinds,
        use_ca=not args.no_ca,
        use_tabu=not args.no_tabu,
        use_hash=not args.no_hash,
        strategy=args.strategy,
    )


def _atomic_write(path: Path, data) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data if isinstance(data, bytes) else data.encode())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _acquired_json(acquired_by_kind) -> dict:
    out = {}
    for kind, mapping in acquired_by_kind.items():
        out[kind] = {
            f.describe(): sorted(kinds)
            for f, kinds in sorted(mapping.items(), key=lambda kv: kv[0].key())
        }
    return out


def run_solve(args) -> int:
    """Solve each task; returns the process exit status."""
    config = _config_from_args(args)
    paths = [Path(p) for p in args.task]
    if args.tasks_dir:
        paths += sorted(Path(args.tasks_dir).glob("*.json"))
    if not paths:
        print("no tasks given; use --task or --tasks-dir", file=sys.stderr)
        return 2

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    stats_path = out_dir / "stats.json"
    records: list[dict] = []
    had_input_errors = False

    for path in paths:
        record: dict = {"task": path.stem}
        started = time.monotonic()
        try:
            task = parse_task(path.read_text())
        except OSError as exc:
            record["error"] = f"unreadable: {exc}"
            had_input_errors = True
            records.append(record)
            _atomic_write(stats_path, json.dumps(records, indent=2))
            continue
        except (MalformedDocument, InvalidGrid) as exc:
            record["error"] = f"malformed: {exc}"
            had_input_errors = True
            records.append(record)
            _atomic_write(stats_path, json.dumps(records, indent=2))
            continue

        try:
            result = solve(task, config)
        except DimensionMismatch as exc:
            record.update({
                "error": str(exc),
                "solved": False,
                "trainSolved": False,
                "seconds": round(time.monotonic() - started, 3),
            })
            records.append(record)
            _atomic_write(stats_path, json.dumps(records, indent=2))
            continue

        train_solved = result.stats.solved
        solved = train_solved
        if train_solved:
            known = [(pred, t.output) for pred, t in zip(result.predictions, task.test)
                     if t.output is not None]
            solved = all(pred == expected for pred, expected in known)

        record.update({
            "solved": solved,
            "trainSolved": train_solved,
            "nodesExplored": result.stats.nodes_explored,
            "seconds": round(result.stats.elapsed, 3),
            "programLength": result.stats.program_length,
            "acquiredConstraints": _acquired_json(result.acquired),
        })
        records.append(record)

        if result.program is not None:
            _atomic_write(out_dir / f"{path.stem}.program.json",
                          program_to_json(result.program))
            grids = [g.to_lists() for g in result.predictions]
            _atomic_write(out_dir / f"{path.stem}.prediction.json",
                          json.dumps(grids, separators=(",", ":")))
            if args.render == "ascii":
                text = "\n\n".join(render_ascii(g) for g in result.predictions)
                _atomic_write(out_dir / f"{path.stem}.prediction.txt", text + "\n")
            elif args.render == "image":
                for i, grid in enumerate(result.predictions):
                    _atomic_write(out_dir / f"{path.stem}.prediction-{i}.ppm",
                                  render_ppm(grid))

        _atomic_write(stats_path, json.dumps(records, indent=2))

    return 1 if had_input_errors else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run_solve(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
