"""Automorphism groups by individualization-refinement.

The first path always individualizes the smallest vertex of the first
smallest non-singleton cell; its leaf is the reference labeling. Walking
that path bottom-up, every other vertex of the level's target cell that is
not already in a known orbit gets its subtree searched for a leaf that
matches the reference leaf through an automorphism. The automorphisms found
this way form a strong generating set relative to the first path.
"""

from __future__ import annotations

import time
from array import array
from typing import Sequence

from ..graph import Graph
from ..perm import Permutation, PermGroup, group_from_generators
from . import _backend
from .refine import csr, partition_from_colors

__all__ = ["automorphism_group", "automorphism_generators", "SearchTimeout", "SearchStats"]


class SearchTimeout(RuntimeError):
    pass


class SearchStats:
    __slots__ = ("nodes", "leaves", "bad_leaves", "pruned")

    def __init__(self):
        self.nodes = self.leaves = self.bad_leaves = self.pruned = 0

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__slots__}


class _Level:
    __slots__ = ("state", "target", "members", "choice", "trace")

    def __init__(self, state, target, members, choice, trace):
        self.state = state  # partition before individualizing
        self.target = target
        self.members = members
        self.choice = choice
        self.trace = trace  # trace hash of the child on the first path


def _copy(state):
    lab, cell, size = state
    return array("i", lab), array("i", cell), array("i", size)


class _Search:
    def __init__(self, g: Graph, colors, kernel, deadline):
        self.g = g
        self.n = g.n
        self.kernel = kernel
        self.deadline = deadline
        self.off, self.nbr = csr(g)
        self.stats = SearchStats()
        lab, cell, size, starts = partition_from_colors(colors)
        kernel.refine(self.off, self.nbr, lab, cell, size, starts)
        self.root = (lab, cell, size)

    def _tick(self):
        self.stats.nodes += 1
        if self.deadline is not None and self.stats.nodes % 64 == 0 and time.monotonic() > self.deadline:
            raise SearchTimeout("automorphism search exceeded its time budget")

    def _child(self, state, v):
        child = _copy(state)
        lab, cell, size = child
        s = self.kernel.individualize(lab, cell, size, v)
        trace = self.kernel.refine(self.off, self.nbr, lab, cell, size, [s])
        return child, trace

    def first_path(self):
        self.path: list[_Level] = []
        state = self.root
        while True:
            self._tick()
            lab, _, size = state
            t = self.kernel.target_cell(size, self.n)
            if t < 0:
                break
            members = sorted(lab[t : t + size[t]])
            child, trace = self._child(state, members[0])
            self.path.append(_Level(state, t, members, members[0], trace))
            state = child
        self.leaf = state[0]

    def _leaf_map(self, lab) -> tuple[int, ...] | None:
        img = [0] * self.n
        for a, b in zip(self.leaf, lab):
            img[a] = b
        self.stats.leaves += 1
        if self.g.is_automorphism(img):
            return tuple(img)
        self.stats.bad_leaves += 1
        return None

    def find(self, state, depth: int):
        """Search the subtree at ``state`` (which sits at ``depth``) for an automorphic leaf."""
        self._tick()
        lab, _, size = state
        t = self.kernel.target_cell(size, self.n)
        if depth == len(self.path):
            return self._leaf_map(lab) if t < 0 else None
        ref = self.path[depth]
        if t != ref.target or size[t] != len(ref.members):
            self.stats.pruned += 1
            return None
        for w in sorted(lab[t : t + size[t]]):
            child, trace = self._child(state, w)
            if trace != ref.trace:
                self.stats.pruned += 1
                continue
            found = self.find(child, depth + 1)
            if found is not None:
                return found
        return None

    def run(self) -> list[tuple[int, ...]]:
        self.first_path()
        parent = list(range(self.n))

        def root(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def absorb(g):
            for i, j in enumerate(g):
                a, b = root(i), root(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)

        gens: list[tuple[int, ...]] = []
        self.orbit_sizes = []
        for depth in range(len(self.path) - 1, -1, -1):
            level = self.path[depth]
            failed: list[int] = []
            for w in level.members:
                if w == level.choice or root(w) == root(level.choice):
                    continue
                if any(root(w) == root(f) for f in failed):
                    continue
                child, trace = self._child(level.state, w)
                found = None
                if trace == level.trace:
                    found = self.find(child, depth + 1)
                else:
                    self.stats.pruned += 1
                if found is None:
                    failed.append(w)
                else:
                    gens.append(found)
                    absorb(found)
            r = root(level.choice)
            self.orbit_sizes.append(sum(1 for w in level.members if root(w) == r))
        self.orbit_sizes.reverse()
        return gens


def automorphism_generators(
    g: Graph, colors: Sequence[int] | None = None, kernel=None, timeout: float | None = None
) -> tuple[list[Permutation], list[int]]:
    """Generators of Aut(g) (color-preserving if ``colors`` given) and the basic orbit sizes."""
    kernel = kernel or _backend.kernel
    if colors is None:
        colors = [0] * g.n
    if len(colors) != g.n:
        raise ValueError("color list does not match graph")
    deadline = time.monotonic() + timeout if timeout else None
    s = _Search(g, colors, kernel, deadline)
    gens = s.run()
    for p in gens:
        if not g.is_automorphism(p):
            raise AssertionError("search produced a non-automorphism")
    return [Permutation(p, check=False) for p in gens], s.orbit_sizes


def automorphism_group(
    g: Graph, colors: Sequence[int] | None = None, kernel=None, timeout: float | None = None
) -> PermGroup:
    """Full automorphism group of ``g`` with exact order.

    The generator list is fixed for a given graph: ascending vertex order
    breaks every tie and the first leaf is the reference labeling.
    """
    gens, orbit_sizes = automorphism_generators(g, colors, kernel, timeout)
    grp = group_from_generators(gens, g.n)
    expected = 1
    for k in orbit_sizes:
        expected *= k
    if grp.order != expected:
        raise AssertionError(f"Schreier-Sims order {grp.order} disagrees with search orbit product {expected}")
    return grp
