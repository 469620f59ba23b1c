"""Graphviz export of bounded slices of automatic graphs."""

from __future__ import annotations

from itertools import product as _cartesian
from typing import Optional, Sequence

from . import automata as au
from .coloring import RegularColoring
from .relations import AutomaticRelation

_PALETTE = (
    "#a6cee3", "#b2df8a", "#fb9a99", "#fdbf6f",
    "#cab2d6", "#ffff99", "#1f78b4", "#33a02c",
)


def _label(word: Sequence[str]) -> str:
    return "".join(word) if word else "ε"


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def export_dot(e: AutomaticRelation, max_len: int,
               coloring: Optional[RegularColoring] = None,
               secondary: Optional[AutomaticRelation] = None,
               max_vertices: int = 4000) -> str:
    """Render the subgraph on all words of length <= max_len.

    Vertices are labeled by their words; edges of the optional secondary
    relation are dashed; colors fill vertices when a coloring is given.
    """
    alpha = e.alphabet
    vertices = []
    for n in range(max_len + 1):
        for w in _cartesian(alpha, repeat=n):
            vertices.append(w)
            if len(vertices) > max_vertices:
                raise au.BudgetExceededError(
                    f"more than {max_vertices} vertices at max_len={max_len}")
    lines = ["digraph automatic {", "  rankdir=LR;"]
    for w in vertices:
        attrs = [f"label={_quote(_label(w))}"]
        if coloring is not None:
            idx = coloring.color_of(w)
            if idx is not None:
                attrs.append(f'style=filled fillcolor="{_PALETTE[idx % len(_PALETTE)]}"')
        lines.append(f"  {_quote(_label(w))} [{' '.join(attrs)}];")
    for u in vertices:
        for v in vertices:
            if au.membership(e.base, (u, v)):
                lines.append(f"  {_quote(_label(u))} -> {_quote(_label(v))};")
            elif secondary is not None and au.membership(secondary.base, (u, v)):
                lines.append(
                    f"  {_quote(_label(u))} -> {_quote(_label(v))} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
