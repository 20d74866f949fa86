"""Bundled diagrams: four template knots and singular diagrams built from them."""

from __future__ import annotations

from importlib import resources
from typing import Dict, List

from .diagram import SingularDiagram, parse_pd

TEMPLATES = ("trefoil", "figure_eight", "5_1", "5_2")


def names() -> List[str]:
    files = resources.files("regional.data")
    return sorted(p.name[:-3] for p in files.iterdir() if p.name.endswith(".pd"))


def read_text(name: str) -> str:
    return resources.files("regional.data").joinpath(f"{name}.pd").read_text(encoding="utf-8")


def load(name: str) -> SingularDiagram:
    return parse_pd(read_text(name))


def templates() -> Dict[str, SingularDiagram]:
    return {name: load(name) for name in TEMPLATES}


def singular(r: int | None = None) -> Dict[str, SingularDiagram]:
    """Corpus diagrams with double points, optionally only those with exactly ``r``."""
    out = {}
    for name in names():
        d = load(name)
        if d.r and (r is None or d.r == r):
            out[name] = d
    return out
