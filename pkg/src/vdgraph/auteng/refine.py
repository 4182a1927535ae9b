"""Vertex colorings and equitable refinement."""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Sequence

from ..graph import Graph
from . import _backend

__all__ = ["Coloring", "refine", "is_equitable", "csr", "partition_from_colors"]


@dataclass(frozen=True)
class Coloring:
    """Per-vertex colors ``0..c-1`` together with the cells in color order."""

    color: tuple[int, ...]
    cells: tuple[tuple[int, ...], ...]

    @classmethod
    def unit(cls, n: int) -> "Coloring":
        return cls.from_colors([0] * n)

    @classmethod
    def from_colors(cls, colors: Sequence[int]) -> "Coloring":
        """Normalize arbitrary comparable colors to a contiguous range, keeping their order."""
        values = sorted(set(colors))
        rank = {c: i for i, c in enumerate(values)}
        color = tuple(rank[c] for c in colors)
        cells = [[] for _ in values]
        for v, c in enumerate(color):
            cells[c].append(v)
        return cls(color, tuple(tuple(c) for c in cells))

    @property
    def num_cells(self) -> int:
        return len(self.cells)

    def is_discrete(self) -> bool:
        return len(self.cells) == len(self.color)


def csr(g: Graph) -> tuple[array, array]:
    off = array("i", [0])
    nbr = array("i")
    for row in g.adjacency:
        nbr.extend(row)
        off.append(len(nbr))
    return off, nbr


def partition_from_colors(colors: Sequence[int]) -> tuple[array, array, array, list[int]]:
    """Partition buffers for the given colors plus the list of cell starts."""
    n = len(colors)
    c = Coloring.from_colors(colors)
    lab = array("i")
    cell = array("i", [0] * n)
    size = array("i", [0] * n)
    starts = []
    for members in c.cells:
        s = len(lab)
        starts.append(s)
        size[s] = len(members)
        for v in members:
            cell[v] = s
            lab.append(v)
    return lab, cell, size, starts


def _to_coloring(lab, size, n: int) -> Coloring:
    color = [0] * n
    cells = []
    s = 0
    while s < n:
        members = tuple(sorted(lab[s : s + size[s]]))
        for v in members:
            color[v] = len(cells)
        cells.append(members)
        s += size[s]
    return Coloring(tuple(color), tuple(cells))


def refine(g: Graph, c: Coloring | None = None, kernel=None) -> Coloring:
    """Coarsest equitable coloring finer than ``c``.

    Split cells keep the position of their parent and are ordered by the
    number of neighbors in the splitting cell, so the numbering does not
    depend on vertex indices.
    """
    kernel = kernel or _backend.kernel
    if c is None:
        c = Coloring.unit(g.n)
    if len(c.color) != g.n:
        raise ValueError("coloring size does not match graph")
    off, nbr = csr(g)
    lab, cell, size, starts = partition_from_colors(c.color)
    kernel.refine(off, nbr, lab, cell, size, starts)
    return _to_coloring(lab, size, g.n)


def is_equitable(g: Graph, c: Coloring) -> bool:
    """Direct check: same-colored vertices see equally many neighbors of each color."""
    for members in c.cells:
        sigs = set()
        for v in members:
            counts = [0] * c.num_cells
            for w in g.adjacency[v]:
                counts[c.color[w]] += 1
            sigs.add(tuple(counts))
        if len(sigs) > 1:
            return False
    return True
