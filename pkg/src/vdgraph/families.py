"""Constructors for the set-system graph families and the family-spec grammar.

Elements of ``[n]`` are 1-based in labels and in :class:`KSubset`; masks use
bit ``i - 1`` for element ``i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .graph import Graph
from .perm import Permutation

__all__ = [
    "FamilySpec",
    "FamilySpecError",
    "parse_spec",
    "build",
    "rank_subset",
    "unrank_subset",
    "subsets",
    "subset_label",
    "johnson",
    "kneser",
    "bipartite_kneser",
    "bnk",
    "set_inclusion",
    "complement_map",
    "complete",
    "cycle",
]

MAX_N = 63


class FamilySpecError(ValueError):
    pass


KINDS = {
    "johnson": "Johnson",
    "kneser": "Kneser",
    "bipartite-kneser": "BipartiteKneser",
    "bnk": "Bnk",
    "set-inclusion": "SetInclusion",
    "complete": "Complete",
    "cycle": "Cycle",
    "grassmann": "Grassmann",
    "doubled-grassmann": "DoubledGrassmann",
}
_ALIASES = {
    "j": "johnson",
    "k": "kneser",
    "h": "bipartite-kneser",
    "bipartitekneser": "bipartite-kneser",
    "b": "bnk",
    "g": "set-inclusion",
    "setinclusion": "set-inclusion",
    "set_inclusion": "set-inclusion",
    "bipartite_kneser": "bipartite-kneser",
    "doubledgrassmann": "doubled-grassmann",
    "doubled_grassmann": "doubled-grassmann",
    "s": "doubled-grassmann",
}
_ARITY = {
    "Johnson": 2,
    "Kneser": 2,
    "BipartiteKneser": 2,
    "Bnk": 2,
    "SetInclusion": 3,
    "Complete": 1,
    "Cycle": 1,
    "Grassmann": 3,
    "DoubledGrassmann": 3,
}
_SPEC_RE = re.compile(r"^\s*([A-Za-z_-]+)\s*:\s*(\d+(?:\s*,\s*\d+)*)\s*$")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in _ARITY:
            raise FamilySpecError(f"unknown family kind {self.kind!r}")
        if len(self.params) != _ARITY[self.kind]:
            raise FamilySpecError(f"{self.kind} takes {_ARITY[self.kind]} parameters, got {len(self.params)}")
        _validate(self.kind, self.params)

    def __str__(self) -> str:
        name = next(k for k, v in KINDS.items() if v == self.kind)
        return f"{name}:{','.join(map(str, self.params))}"


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def _validate(kind: str, params: tuple[int, ...]) -> None:
    def bad(why: str):
        raise FamilySpecError(f"{kind}{params}: {why}")

    if kind in ("Johnson", "Kneser", "BipartiteKneser", "Bnk", "SetInclusion") and params[0] > MAX_N:
        bad(f"n > {MAX_N} not supported")
    if kind == "Johnson":
        n, k = params
        if not 1 <= k < n:
            bad("need 1 <= k < n")
    elif kind == "Kneser":
        n, k = params
        if not (k >= 1 and 2 * k < n):
            bad("need k >= 1 and 2k < n")
    elif kind == "Bnk":
        n, k = params
        if not (n >= 3 and 1 <= k and 2 * k < n):
            bad("need n >= 3 and 1 <= k < n/2")
    elif kind == "BipartiteKneser":
        n, k = params
        if not (k >= 1 and n > 2 * k):
            bad("need n > 2k >= 2")
    elif kind == "SetInclusion":
        n, k, l = params
        if not (0 < k < l < n and k + l <= n):
            bad("need 0 < k < l < n and k + l <= n")
    elif kind == "Complete":
        if params[0] < 1:
            bad("need n >= 1")
    elif kind == "Cycle":
        if params[0] < 3:
            bad("need n >= 3")
    elif kind == "Grassmann":
        q, n, k = params
        if not _is_prime_power(q):
            bad("q must be a prime power")
        if not (1 < k and 2 * k <= n):
            bad("need 1 < k <= n/2")
    elif kind == "DoubledGrassmann":
        q, n, k = params
        if not _is_prime_power(q):
            bad("q must be a prime power")
        if not (n >= 3 and 1 <= k and 2 * k <= n):
            bad("need n >= 3 and 1 <= k <= n/2")


def parse_spec(text: str) -> FamilySpec:
    """Parse ``"kind:a,b[,c]"`` case-insensitively.

    Kinds: johnson (j), kneser (k), bipartite-kneser (h), bnk (b),
    set-inclusion (g), complete, cycle, grassmann, doubled-grassmann (s).
    Grassmann kinds take ``q,n,k``; the others ``n[,k[,l]]``.
    """
    m = _SPEC_RE.match(text)
    if not m:
        raise FamilySpecError(f"cannot parse family spec {text!r}")
    name = m.group(1).lower()
    name = _ALIASES.get(name, name)
    if name not in KINDS:
        raise FamilySpecError(f"unknown family kind {m.group(1)!r}")
    params = tuple(int(x) for x in m.group(2).split(","))
    return FamilySpec(KINDS[name], params)


# -- subsets ---------------------------------------------------------------

def subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of ``[n]`` in lexicographic order."""
    return list(combinations(range(1, n + 1), k))


def subset_label(s) -> str:
    return "{" + ",".join(map(str, s)) + "}"


def rank_subset(s, n: int) -> int:
    """Lexicographic rank of the sorted subset ``s`` of ``[n]``."""
    s = tuple(s)
    k = len(s)
    if list(s) != sorted(set(s)) or (s and not (1 <= s[0] and s[-1] <= n)):
        raise ValueError(f"{s} is not a strictly ascending subset of [{n}]")
    r = 0
    prev = 0
    for i, x in enumerate(s):
        for y in range(prev + 1, x):
            r += comb(n - y, k - i - 1)
        prev = x
    return r


def unrank_subset(i: int, n: int, k: int) -> tuple[int, ...]:
    total = comb(n, k)
    if not 0 <= i < total:
        raise ValueError(f"index {i} out of range for C({n},{k}) = {total}")
    out = []
    x = 1
    for pos in range(k):
        while True:
            c = comb(n - x, k - pos - 1)
            if i < c:
                break
            i -= c
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def _mask(s) -> int:
    b = 0
    for x in s:
        b |= 1 << (x - 1)
    return b


def _pair_graph(n: int, k: int, adjacent) -> Graph:
    verts = subsets(n, k)
    masks = [_mask(s) for s in verts]
    edges = [(i, j) for i in range(len(verts)) for j in range(i + 1, len(verts)) if adjacent(masks[i], masks[j])]
    return Graph(len(verts), edges, [subset_label(s) for s in verts])


def johnson(n: int, k: int) -> Graph:
    _validate("Johnson", (n, k))
    return _pair_graph(n, k, lambda a, b: (a & b).bit_count() == k - 1)


def kneser(n: int, k: int) -> Graph:
    _validate("Kneser", (n, k))
    return _pair_graph(n, k, lambda a, b: a & b == 0)


def _inclusion_graph(n: int, k: int, l: int) -> Graph:
    low, high = subsets(n, k), subsets(n, l)
    lm, hm = [_mask(s) for s in low], [_mask(s) for s in high]
    off = len(low)
    edges = [(i, off + j) for i, a in enumerate(lm) for j, b in enumerate(hm) if a & b == a]
    return Graph(len(low) + len(high), edges, [subset_label(s) for s in low + high])


def set_inclusion(n: int, k: int, l: int) -> Graph:
    """G(n,k,l): k-subsets then l-subsets, adjacent under containment."""
    _validate("SetInclusion", (n, k, l))
    return _inclusion_graph(n, k, l)


def bnk(n: int, k: int) -> Graph:
    """B(n,k) = G(n,k,k+1)."""
    _validate("Bnk", (n, k))
    return _inclusion_graph(n, k, k + 1)


def bipartite_kneser(n: int, k: int) -> Graph:
    """H(n,k) = G(n,k,n-k)."""
    _validate("BipartiteKneser", (n, k))
    return _inclusion_graph(n, k, n - k)


def complement_map(n: int, k: int) -> Permutation:
    """The involution ``v -> [n] - v`` on the vertices of G(n,k,n-k)."""
    _validate("BipartiteKneser", (n, k))
    low = subsets(n, k)
    full = set(range(1, n + 1))
    off = len(low)
    img = [0] * (2 * off)
    for i, s in enumerate(low):
        j = rank_subset(sorted(full - set(s)), n)
        img[i] = off + j
        img[off + j] = i
    return Permutation(img)


def complete(n: int) -> Graph:
    _validate("Complete", (n,))
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle(n: int) -> Graph:
    _validate("Cycle", (n,))
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def build(spec: FamilySpec | str) -> Graph:
    """Construct the graph for a family spec (Grassmann kinds included)."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    p = spec.params
    if spec.kind == "Johnson":
        return johnson(*p)
    if spec.kind == "Kneser":
        return kneser(*p)
    if spec.kind == "BipartiteKneser":
        return bipartite_kneser(*p)
    if spec.kind == "Bnk":
        return bnk(*p)
    if spec.kind == "SetInclusion":
        return set_inclusion(*p)
    if spec.kind == "Complete":
        return complete(*p)
    if spec.kind == "Cycle":
        return cycle(*p)
    from . import grassmann

    if spec.kind == "Grassmann":
        return grassmann.grassmann_graph(*p)
    return grassmann.doubled_grassmann(*p)
