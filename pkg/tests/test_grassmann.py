import itertools

import pytest

from vdgraph.families import FamilySpecError
from vdgraph.fq import contains_subspace, enumerate_subspaces, field, gaussian_binomial, intersect_dim, sum_space
from vdgraph.graph import bipartition, distances_from, is_connected, is_vd
from vdgraph.grassmann import (
    connect_path,
    doubled_grassmann,
    doubled_vertices,
    grassmann_graph,
    path_indices,
    perp_automorphism,
    semilinear_generators,
)
from vdgraph.perm import group_from_generators


def test_grassmann_examples():
    g = grassmann_graph(2, 4, 2)
    assert g.n == 35
    assert all(g.degree(v) == 18 for v in range(g.n))
    assert g.m == 315
    verts = enumerate_subspaces(field(2), 4, 2)
    for v in range(g.n):
        dist = distances_from(g, v)
        for w in range(g.n):
            assert dist[w] == 2 - intersect_dim(verts[v], verts[w])


def test_grassmann_rejects_k1():
    with pytest.raises(FamilySpecError):
        grassmann_graph(2, 4, 1)


def test_doubled_examples():
    s = doubled_grassmann(2, 3, 1)
    assert s.n == 14 and all(s.degree(v) == 3 for v in range(14))
    assert bipartition(s) == (tuple(range(7)), tuple(range(7, 14)))
    assert is_connected(s) and is_vd(s)[0]
    assert doubled_grassmann(2, 4, 1).n == 50


@pytest.mark.parametrize("q,n,k", [(2, 3, 1), (2, 4, 1), (2, 4, 2), (3, 3, 1), (2, 5, 2)])
def test_doubled_side_sizes(q, n, k):
    s = doubled_grassmann(q, n, k)
    a, b = gaussian_binomial(n, k, q), gaussian_binomial(n, k + 1, q)
    assert s.n == a + b
    assert (a == b) == (n == 2 * k + 1)


def test_perp_automorphism_grassmann():
    g = grassmann_graph(2, 4, 2)
    theta = perp_automorphism(2, 4, 2)
    assert (theta * theta).is_identity()
    assert g.is_automorphism(theta.images)


def test_perp_automorphism_doubled():
    s = doubled_grassmann(2, 3, 1)
    theta = perp_automorphism(2, 3, 1)
    assert sorted(theta.images[:7]) == list(range(7, 14))
    assert (theta * theta).is_identity()
    for u, v in s.edges():
        assert s.has_edge(theta.images[u], theta.images[v])


def test_perp_automorphism_bad_params():
    with pytest.raises(FamilySpecError):
        perp_automorphism(2, 5, 1)


def test_common_neighbor_structure_on_upper_side():
    for n in (3, 4):
        for k in range(1, n // 2 + 1):
            verts = doubled_vertices(2, n, k)
            s = doubled_grassmann(2, n, k)
            low = [i for i, v in enumerate(verts) if v.k == k]
            for a, b in itertools.combinations(low, 2):
                common = [x for x in range(s.n) if s.has_edge(a, x) and s.has_edge(b, x)]
                if intersect_dim(verts[a], verts[b]) == k - 1:
                    assert [verts[x] for x in common] == [sum_space(verts[a], verts[b])]
                else:
                    assert common == []


def test_connect_path_trivial_and_j1():
    verts = enumerate_subspaces(field(2), 4, 2)
    assert connect_path(2, 4, 2, verts[0], verts[0]) == [verts[0]]
    a, b = next((x, y) for x, y in itertools.combinations(verts, 2) if intersect_dim(x, y) == 1)
    assert connect_path(2, 4, 2, a, b) == [a, sum_space(a, b), b]


def _check_path(q, n, k):
    s = doubled_grassmann(q, n, k)
    low = [v for v in doubled_vertices(q, n, k) if v.k == k]
    for a, b in itertools.combinations(low, 2):
        path = connect_path(q, n, k, a, b)
        j = k - intersect_dim(a, b)
        idx = path_indices(q, n, k, path)
        assert path[0] == a and path[-1] == b
        assert len(path) - 1 <= 2 * j
        assert len(path) - 1 >= distances_from(s, idx[0])[idx[-1]]
        for x, y in zip(idx, idx[1:]):
            assert s.has_edge(x, y)


def test_connect_path_all_pairs_s242():
    _check_path(2, 4, 2)


def test_connect_path_s373():
    # j up to 3 exercises the recursion twice
    verts = [v for v in doubled_vertices(2, 7, 3) if v.k == 3]
    a = verts[0]
    far = [v for v in verts if intersect_dim(a, v) == 0][:20]
    for b in far:
        path = connect_path(2, 7, 3, a, b)
        assert len(path) - 1 == 6
        for x, y in zip(path, path[1:]):
            lo, hi = (x, y) if x.k < y.k else (y, x)
            assert hi.k == lo.k + 1 and contains_subspace(hi, lo)


def test_connect_path_rejects_wrong_dimension():
    verts = enumerate_subspaces(field(2), 4, 1)
    with pytest.raises(ValueError):
        connect_path(2, 4, 2, verts[0], verts[1])


@pytest.mark.parametrize("q,n,k,doubled,order", [(2, 4, 2, False, 20160), (2, 3, 1, True, 168), (3, 3, 1, True, 5616), (4, 4, 2, False, 1974067200)])
def test_semilinear_generators_order(q, n, k, doubled, order):
    gens = semilinear_generators(q, n, k, doubled)
    g = doubled_grassmann(q, n, k) if doubled else grassmann_graph(q, n, k)
    assert all(g.is_automorphism(p.images) for p in gens)
    assert group_from_generators(gens, g.n).order == order
