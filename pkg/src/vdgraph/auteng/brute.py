"""Exhaustive automorphism enumeration and restriction of permutations to a part."""

from __future__ import annotations

from typing import Iterable, Mapping

from ..graph import Graph
from ..perm import Permutation

__all__ = ["automorphism_group_brute", "restrict", "DEFAULT_BRUTE_CAP", "RestrictionError"]

DEFAULT_BRUTE_CAP = 10


class RestrictionError(ValueError):
    pass


def automorphism_group_brute(g: Graph, cap: int = DEFAULT_BRUTE_CAP) -> list[Permutation]:
    """Every automorphism of ``g``, in lexicographic order of image tuples.

    Backtracks over vertices 0..n-1, only pruning on degree and on adjacency
    to already-placed vertices; no refinement is involved so it can serve as
    an oracle for the search engine.
    """
    n = g.n
    if n > cap:
        raise ValueError(f"brute-force oracle capped at {cap} vertices, graph has {n}")
    deg = g.degrees()
    img = [-1] * n
    used = [False] * n
    out: list[Permutation] = []

    def extend(v: int) -> None:
        if v == n:
            out.append(Permutation(img, check=False))
            return
        for x in range(n):
            if used[x] or deg[x] != deg[v]:
                continue
            if any(g.has_edge(u, v) != g.has_edge(img[u], x) for u in range(v)):
                continue
            img[v] = x
            used[x] = True
            extend(v + 1)
            used[x] = False
        img[v] = -1

    extend(0)
    return out


def restrict(p: Permutation, part: Iterable[int], index_map: Mapping[int, int] | None = None) -> Permutation:
    """Action of ``p`` on ``part``, re-indexed by ``index_map`` (default: ascending order)."""
    part = sorted(set(part))
    if index_map is None:
        index_map = {v: i for i, v in enumerate(part)}
    img = [0] * len(part)
    for v in part:
        w = p.images[v]
        if w not in index_map:
            raise RestrictionError(f"permutation maps {v} outside the part")
        img[index_map[v]] = index_map[w]
    return Permutation(img)
