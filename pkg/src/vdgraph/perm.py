"""Permutations of ``{0..n-1}`` and permutation groups via deterministic Schreier-Sims.

Composition follows function notation: ``(p * q)(i) == p(q(i))``.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

__all__ = [
    "Permutation",
    "PermGroup",
    "PartViolation",
    "compose",
    "identity",
    "group_from_generators",
    "contains",
    "pointwise_stabilizer",
    "part_stabilizer",
    "commutes",
    "closure",
]


class PartViolation(ValueError):
    """A generator neither fixes nor swaps the requested part."""

    def __init__(self, message: str, generator: "Permutation"):
        super().__init__(message)
        self.generator = generator


class Permutation:
    """Immutable permutation stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError("images do not form a bijection on 0..n-1")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_hash", hash(images))

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n), check=False)

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> "Permutation":
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv, check=False)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def to_json(self) -> list[int]:
        return list(self.images)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Permutation":
        return cls(data)


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p ∘ q``, i.e. apply ``q`` first."""
    if len(p.images) != len(q.images):
        raise ValueError(f"degree mismatch: {len(p.images)} vs {len(q.images)}")
    pi = p.images
    return Permutation([pi[j] for j in q.images], check=False)


# Raw tuple helpers used on the hot path of Schreier-Sims.

def _mul(p: tuple, q: tuple) -> tuple:
    return tuple([p[j] for j in q])


def _inv(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _is_id(p: tuple) -> bool:
    for i, j in enumerate(p):
        if i != j:
            return False
    return True


class _Level:
    __slots__ = ("point", "gens", "transversal", "checked")

    def __init__(self, point: int, ident: tuple):
        self.point = point
        self.gens: list[tuple] = []
        # orbit point -> coset representative u with u(point) == orbit point
        self.transversal: dict[int, tuple] = {point: ident}
        # (orbit point, generator index) pairs whose Schreier generator sifted through
        self.checked: set[tuple[int, int]] = set()

    def extend_orbit(self) -> None:
        trans = self.transversal
        frontier = list(trans)
        while frontier:
            nxt = []
            for beta in frontier:
                u = trans[beta]
                for s in self.gens:
                    img = s[beta]
                    if img not in trans:
                        trans[img] = _mul(s, u)
                        nxt.append(img)
            frontier = nxt


class _Chain:
    """Mutable stabilizer chain; only used while building a :class:`PermGroup`."""

    def __init__(self, degree: int, base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.ident = tuple(range(degree))
        self.levels: list[_Level] = [_Level(b, self.ident) for b in base_prefix]

    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        for j in range(start, len(self.levels)):
            lvl = self.levels[j]
            img = g[lvl.point]
            u = lvl.transversal.get(img)
            if u is None:
                return g, j
            g = _mul(_inv(u), g)
        return g, len(self.levels)

    def _new_point(self, g: tuple) -> int:
        used = {lvl.point for lvl in self.levels}
        for i, j in enumerate(g):
            if i != j and i not in used:
                return i
        raise AssertionError("residue moves only base points")

    def _install(self, g: tuple, lo: int, hi: int) -> None:
        """Add ``g`` (fixing base points before ``lo``) as a strong generator of levels lo..hi."""
        if hi == len(self.levels):
            self.levels.append(_Level(self._new_point(g), self.ident))
        for l in range(lo, hi + 1):
            lvl = self.levels[l]
            lvl.gens.append(g)
            lvl.extend_orbit()

    def build(self, gens: Iterable[tuple]) -> None:
        for g in gens:
            if _is_id(g):
                continue
            h, j = self.sift(g)
            if j == len(self.levels) and _is_id(h):
                continue
            # g itself fixes the base points before its first non-fixed one
            first = 0
            while first < len(self.levels) and g[self.levels[first].point] == self.levels[first].point:
                first += 1
            self._install(g, 0, first)
        self._complete()

    def order(self) -> int:
        out = 1
        for lvl in self.levels:
            out *= len(lvl.transversal)
        return out

    def build_known_order(self, grp: "PermGroup", rng: random.Random) -> None:
        """Rebuild ``grp`` on this chain's base by sifting uniform random elements.

        The product of basic orbit lengths never exceeds |grp| and reaches it
        only when the chain is complete, so stopping there is exact.
        """
        while self.order() < grp.order:
            g = grp.random_element(rng).images
            h, j = self.sift(g)
            if j == len(self.levels) and _is_id(h):
                continue
            self._install(h, 0, j)

    def _complete(self) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            lvl = self.levels[i]
            added = False
            for beta in sorted(lvl.transversal):
                u_beta = lvl.transversal[beta]
                for si, s in enumerate(lvl.gens):
                    key = (beta, si)
                    if key in lvl.checked:
                        continue
                    img = s[beta]
                    h = _mul(_inv(lvl.transversal[img]), _mul(s, u_beta))
                    y, j = self.sift(h, i + 1)
                    if j < len(self.levels) or not _is_id(y):
                        self._install(y, i + 1, j)
                        i = j
                        added = True
                        break
                    lvl.checked.add(key)
                if added:
                    break
            if not added:
                i -= 1


class PermGroup:
    """Permutation group with a base and strong generating set.

    ``levels[i]`` holds the strong generators fixing ``base[:i]`` pointwise;
    ``order`` is the exact product of the basic orbit lengths.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], chain: _Chain):
        self.degree = degree
        self.generators = tuple(generators)
        self.base = tuple(lvl.point for lvl in chain.levels)
        self._transversals = tuple(dict(lvl.transversal) for lvl in chain.levels)
        self.levels = tuple(tuple(Permutation(g, check=False) for g in lvl.gens) for lvl in chain.levels)
        seen: dict[tuple, Permutation] = {}
        for lvl in self.levels:
            for g in lvl:
                seen.setdefault(g.images, g)
        self.strong_generators = tuple(seen.values())
        order = 1
        for t in self._transversals:
            order *= len(t)
        self.order = order

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order}, base={list(self.base)})"

    def __contains__(self, p: Permutation) -> bool:
        return contains(self, p)

    def basic_orbits(self) -> list[list[int]]:
        return [sorted(t) for t in self._transversals]

    def orbits(self) -> list[list[int]]:
        """Orbits of the group on points, each sorted, listed by smallest element."""
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for i, j in enumerate(g.images):
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for i in range(self.degree):
            groups.setdefault(find(i), []).append(i)
        return [groups[r] for r in sorted(groups)]

    def random_element(self, rng: random.Random) -> Permutation:
        """Uniform random element from the stabilizer chain."""
        g = tuple(range(self.degree))
        for t in reversed(self._transversals):
            g = _mul(t[rng.choice(sorted(t))], g)
        return Permutation(g, check=False)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "generators": [g.to_json() for g in self.generators],
            "order": str(self.order),
        }


def _check_degrees(degree: int, perms: Iterable[Permutation]) -> None:
    for p in perms:
        if len(p.images) != degree:
            raise ValueError(f"degree mismatch: expected {degree}, got {len(p.images)}")


def group_from_generators(
    gens: Sequence[Permutation], degree: int | None = None, base_prefix: Sequence[int] = ()
) -> PermGroup:
    """Schreier-Sims closure of ``gens``.

    The base starts with ``base_prefix`` and is then extended by the first
    moved point of each residue, so the result is fully deterministic.
    """
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generator list")
        degree = len(gens[0].images)
    _check_degrees(degree, gens)
    chain = _Chain(degree, base_prefix)
    chain.build(g.images for g in gens)
    return PermGroup(degree, gens, chain)


def contains(grp: PermGroup, p: Permutation) -> bool:
    if len(p.images) != grp.degree:
        raise ValueError(f"degree mismatch: {grp.degree} vs {len(p.images)}")
    g = p.images
    for b, trans in zip(grp.base, grp._transversals):
        u = trans.get(g[b])
        if u is None:
            return False
        g = _mul(_inv(u), g)
    return _is_id(g)


def pointwise_stabilizer(grp: PermGroup, points: Sequence[int]) -> PermGroup:
    """Subgroup fixing every point in ``points`` (base change with ``points`` first)."""
    for x in points:
        if not 0 <= x < grp.degree:
            raise ValueError(f"point {x} outside degree {grp.degree}")
    prefix = list(dict.fromkeys(points))
    chain = _Chain(grp.degree, prefix)
    chain.build_known_order(grp, random.Random(len(prefix)))
    sub = _Chain(grp.degree)
    sub.levels = chain.levels[len(prefix):]
    gens = []
    if sub.levels:
        gens = [Permutation(g, check=False) for g in sub.levels[0].gens]
    return PermGroup(grp.degree, gens, sub)


def part_stabilizer(grp: PermGroup, part: Iterable[int]) -> PermGroup:
    """Setwise stabilizer of ``part`` when every generator fixes or swaps it.

    Generators: the part-fixing generators ``s``, their conjugates
    ``g0 s g0^-1`` and the products ``g0 h``, ``h g0^-1`` for a fixed swapping
    generator ``g0`` and every swapping generator ``h``. This is the full
    Schreier generating set for the index-2 subgroup with transversal
    ``{1, g0}``.
    """
    part = frozenset(part)
    others = frozenset(range(grp.degree)) - part
    fixing, swapping = [], []
    for g in grp.generators:
        image = frozenset(g.images[x] for x in part)
        if image == part:
            fixing.append(g)
        elif image == others:
            swapping.append(g)
        else:
            raise PartViolation("generator neither fixes nor swaps the part", g)
    if not swapping:
        return group_from_generators(fixing, grp.degree)
    g0 = swapping[0]
    g0inv = g0.inverse()
    gens = list(fixing)
    gens += [g0 * s * g0inv for s in fixing]
    for h in swapping:
        gens.append(g0 * h)
        gens.append(h * g0inv)
    return group_from_generators(gens, grp.degree)


def commutes(p: Permutation, grp: PermGroup) -> bool:
    if len(p.images) != grp.degree:
        raise ValueError(f"degree mismatch: {grp.degree} vs {len(p.images)}")
    return all(p * g == g * p for g in grp.generators)


def closure(gens: Sequence[Permutation], degree: int, limit: int = 10**4) -> set[Permutation]:
    """All elements generated by ``gens`` by breadth-first multiplication.

    Brute-force oracle for :func:`group_from_generators`; raises once more
    than ``limit`` elements are found.
    """
    _check_degrees(degree, gens)
    ident = Permutation.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    if len(seen) > limit:
                        raise OverflowError(f"closure exceeds {limit} elements")
                    nxt.append(y)
        frontier = nxt
    return seen
