"""Polygon files shipped with the package (tight examples, gadgets, small cases)."""

from __future__ import annotations

from importlib import resources

from .grid import GridPolygon, parse_polygon

TIGHT = ("cellexpltight", "cellexplsptight", "wcwexa-i")


def bundled_names() -> list[str]:
    root = resources.files("gridrover") / "data"
    return sorted(p.name[: -len(".poly")] for p in root.iterdir() if p.name.endswith(".poly"))


def bundled_text(name: str) -> str:
    if name.endswith(".poly"):
        name = name[: -len(".poly")]
    path = resources.files("gridrover") / "data" / f"{name}.poly"
    if not path.is_file():
        raise FileNotFoundError(f"no bundled polygon named {name!r}")
    return path.read_text()


def load_bundled(name: str) -> GridPolygon:
    return parse_polygon(bundled_text(name))


__all__ = ["TIGHT", "bundled_names", "bundled_text", "load_bundled"]
