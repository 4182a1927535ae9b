"""Grassmann graphs G(q,n,k), the inclusion graphs S(q,n,k), the perp involution
and explicit connecting paths in S(q,n,k)."""

from __future__ import annotations

from .families import FamilySpecError
from .fq import (
    FieldSpec,
    SubspaceRep,
    apply_semilinear,
    contains_subspace,
    enumerate_subspaces,
    field,
    intersect_dim,
    perp,
    rank,
    span,
    sum_space,
)
from .graph import Graph
from .perm import Permutation

__all__ = [
    "grassmann_graph",
    "doubled_grassmann",
    "doubled_vertices",
    "perp_automorphism",
    "connect_path",
    "path_indices",
    "semilinear_generators",
]


def _check(kind: str, q: int, n: int, k: int) -> FieldSpec:
    from .families import FamilySpec

    FamilySpec(kind, (q, n, k))
    return field(q)


def grassmann_graph(q: int, n: int, k: int) -> Graph:
    """k-subspaces of F_q^n, adjacent when they meet in dimension k-1."""
    f = _check("Grassmann", q, n, k)
    verts = enumerate_subspaces(f, n, k)
    edges = [
        (i, j)
        for i in range(len(verts))
        for j in range(i + 1, len(verts))
        if intersect_dim(verts[i], verts[j]) == k - 1
    ]
    return Graph(len(verts), edges, [v.label() for v in verts])


def doubled_vertices(q: int, n: int, k: int) -> list[SubspaceRep]:
    """Vertex order of S(q,n,k): all k-subspaces, then all (k+1)-subspaces."""
    f = field(q)
    return enumerate_subspaces(f, n, k) + enumerate_subspaces(f, n, k + 1)


def doubled_grassmann(q: int, n: int, k: int) -> Graph:
    """S(q,n,k): k- and (k+1)-subspaces adjacent under containment."""
    _check("DoubledGrassmann", q, n, k)
    verts = doubled_vertices(q, n, k)
    low = sum(1 for v in verts if v.k == k)
    edges = [
        (i, j)
        for i in range(low)
        for j in range(low, len(verts))
        if contains_subspace(verts[j], verts[i])
    ]
    return Graph(len(verts), edges, [v.label() for v in verts])


def perp_automorphism(q: int, n: int, k: int) -> Permutation:
    """``v -> v^perp`` as a vertex permutation.

    For ``n == 2k`` it acts on G(q,n,k); for ``n == 2k + 1`` on S(q,n,k),
    where it swaps the two sides.
    """
    f = field(q)
    if n == 2 * k:
        _check("Grassmann", q, n, k)
        verts = enumerate_subspaces(f, n, k)
    elif n == 2 * k + 1:
        _check("DoubledGrassmann", q, n, k)
        verts = doubled_vertices(q, n, k)
    else:
        raise FamilySpecError(f"perp is a graph map only for n = 2k or n = 2k+1 (n={n}, k={k})")
    index = {v: i for i, v in enumerate(verts)}
    return Permutation(index[perp(v)] for v in verts)


def _extend_basis(f: FieldSpec, base: list, target: SubspaceRep) -> list:
    """Rows of ``target`` appended greedily to ``base`` until it spans ``target``."""
    out = list(base)
    r = rank(f, out) if out else 0
    for row in target.rows:
        if rank(f, out + [row]) > r:
            out.append(row)
            r += 1
    return out[len(base):]


def connect_path(q: int, n: int, k: int, v1: SubspaceRep, v2: SubspaceRep) -> list[SubspaceRep]:
    """Path between two k-subspaces in S(q,n,k) alternating k / (k+1)-subspaces.

    With ``j = k - dim(v1 & v2)`` the path has exactly ``2j`` edges: for
    ``j == 1`` it passes through ``v1 + v2``; otherwise a pivot subspace ``s``
    sharing everything but one basis vector with ``v1``-side and one step
    closer to ``v2`` splits the problem.
    """
    if v1.k != k or v2.k != k:
        raise ValueError("connect_path needs two k-subspaces")
    if v1.n != n or v2.n != n or v1.field != v2.field:
        raise ValueError("subspaces do not live in F_q^n")
    f = v1.field
    j = k - intersect_dim(v1, v2)
    if j == 0:
        return [v1]
    if j == 1:
        return [v1, sum_space(v1, v2), v2]
    w = _intersection_basis(v1, v2)
    c = _extend_basis(f, w, v1)
    d = _extend_basis(f, w, v2)
    # s = <w, c_1, d_2..d_j>: meets v1 in dim k-j+1 and v2 in dim k-1
    s = span(f, n, w + [c[0]] + d[1:])
    assert s.k == k and intersect_dim(s, v2) == k - 1
    head = connect_path(q, n, k, v1, s)
    return head + [sum_space(s, v2), v2]


def _intersection_basis(a: SubspaceRep, b: SubspaceRep) -> list:
    """Basis of ``a & b`` via the kernel of the stacked coordinates."""
    f, n = a.field, a.n
    t = f.tables
    # x in a & b  <=>  x = u A = w B; solve [A; -B]^T-style via null space of stacked rows
    stacked = [list(r) for r in a.rows] + [[t.neg[x] for x in r] for r in b.rows]
    # left null space of `stacked`: vectors y with y @ stacked == 0
    cols = [list(col) for col in zip(*stacked)]  # n x (ka+kb)
    kern = perp(span(f, len(stacked), cols)) if cols else None
    out = []
    for y in kern.rows:
        x = [0] * n
        for coef, row in zip(y[: a.k], a.rows):
            if coef:
                x = [t.add[xi][t.mul[coef][ri]] for xi, ri in zip(x, row)]
        out.append(tuple(x))
    rows = span(f, n, out).rows if out else ()
    return [tuple(r) for r in rows]


def path_indices(q: int, n: int, k: int, path: list[SubspaceRep]) -> list[int]:
    """Map a path of subspaces to vertex indices of S(q,n,k)."""
    index = {v: i for i, v in enumerate(doubled_vertices(q, n, k))}
    return [index[v] for v in path]


def _primitive(f: FieldSpec) -> int:
    for a in range(2, f.q):
        x, order = a, 1
        while x != 1:
            x = f.mul(x, a)
            order += 1
        if order == f.q - 1:
            return a
    return 1


def semilinear_generators(q: int, n: int, k: int, doubled: bool = False) -> list[Permutation]:
    """Permutations induced on G(q,n,k) (or S(q,n,k)) by generators of PΓL_n(F_q).

    Uses all elementary transvections, diag(w, 1, ..., 1) for a primitive w,
    and the Frobenius map when F_q is not prime.
    """
    f = field(q)
    verts = doubled_vertices(q, n, k) if doubled else enumerate_subspaces(f, n, k)
    index = {v: i for i, v in enumerate(verts)}
    eye = [[int(i == j) for j in range(n)] for i in range(n)]
    maps = []
    for i in range(n):
        for j in range(n):
            if i != j:
                m = [row[:] for row in eye]
                m[i][j] = 1
                maps.append((m, 0))
    w = _primitive(f)
    if w != 1:
        m = [row[:] for row in eye]
        m[0][0] = w
        maps.append((m, 0))
    if f.m > 1:
        maps.append((eye, 1))
    return [Permutation(index[apply_semilinear(m, s, v)] for v in verts) for m, s in maps]
