"""Byte-reproducible CSV/JSON writers (17 significant digits, sorted keys)."""

from __future__ import annotations

import json
from pathlib import Path


def fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(path, header, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def read_csv(path) -> tuple[list[str], list[list[str]]]:
    lines = Path(path).read_text().strip().split("\n")
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


def write_json(path, obj) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def read_json(path):
    return json.loads(Path(path).read_text())


def measure_to_csv(measure, path) -> None:
    """Rows `index,probability`; indices are coordinate tuples joined by ':'."""
    items = sorted(measure.support.items())
    rows = [(":".join(str(c) for c in g), p) for g, p in items]
    write_csv(path, ("index", "probability"), rows)


def measure_from_csv(path) -> dict[tuple[int, ...], float]:
    _, rows = read_csv(path)
    return {tuple(int(c) for c in idx.split(":")): float(p) for idx, p in rows}


def measure_to_json(measure, path) -> None:
    obj = {
        "walk": measure.walk.describe(),
        "support": {":".join(str(c) for c in g): p for g, p in sorted(measure.support.items())},
    }
    write_json(path, obj)


def measure_from_json(path) -> dict[tuple[int, ...], float]:
    obj = read_json(path)
    return {tuple(int(c) for c in k.split(":")): float(v) for k, v in obj["support"].items()}
