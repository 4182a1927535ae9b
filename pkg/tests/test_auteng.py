import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vdgraph.auteng import (
    Coloring,
    RestrictionError,
    SearchTimeout,
    automorphism_generators,
    automorphism_group,
    automorphism_group_brute,
    is_equitable,
    refine,
    restrict,
)
from vdgraph.auteng import _backend
from vdgraph.auteng.refine import csr, partition_from_colors
from vdgraph.families import build, complete, cycle, johnson, kneser
from vdgraph.graph import Graph, bipartite_double, bipartition
from vdgraph.perm import Permutation, contains

KERNELS = [_backend.python_kernel] + ([_backend.compiled_kernel] if _backend.compiled_kernel else [])


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


def random_graph(rng, n, p=0.5):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_compiled_backend_available():
    # the repo ships a compiled kernel; the fallback is only for builds without Cython
    assert _backend.compiled_kernel is not None
    assert _backend.BACKEND in ("cython", "python")


def test_refine_examples():
    c5 = refine(cycle(5))
    assert c5.num_cells == 1
    p3 = refine(Graph(3, [(0, 1), (1, 2)]))
    assert p3.cells == ((0, 2), (1,))


@pytest.mark.parametrize("kernel", KERNELS, ids=lambda k: k.__name__.rsplit(".", 1)[-1])
def test_refine_equitable_and_idempotent(kernel):
    rng = random.Random(3)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 14), rng.random())
        start = Coloring.from_colors([rng.randint(0, 2) for _ in range(g.n)])
        c = refine(g, start, kernel=kernel)
        assert is_equitable(g, c)
        # finer than the start coloring
        assert all(start.color[v] == start.color[c.cells[c.color[v]][0]] for v in range(g.n))
        assert refine(g, c, kernel=kernel) == c


def test_refine_is_coarsest():
    # equitable colorings of a vertex-transitive graph never split the unit cell
    for g in (cycle(7), kneser(5, 2), johnson(6, 3), build("grassmann:2,4,2")):
        assert refine(g).num_cells == 1


@pytest.mark.skipif(_backend.compiled_kernel is None, reason="extension not built")
def test_kernels_bit_for_bit():
    rng = random.Random(11)
    py, cy = _backend.python_kernel, _backend.compiled_kernel
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 20), rng.random())
        off, nbr = csr(g)
        colors = [rng.randint(0, 3) for _ in range(g.n)]
        states = []
        for k in (py, cy):
            lab, cell, size, starts = partition_from_colors(colors)
            h = k.refine(off, nbr, lab, cell, size, starts)
            t = k.target_cell(size, g.n)
            if t >= 0:
                v = lab[t + size[t] - 1]
                s = k.individualize(lab, cell, size, v)
                h2 = k.refine(off, nbr, lab, cell, size, [s])
            else:
                h2 = None
            states.append((h, h2, t, list(lab), list(cell), list(size)))
        assert states[0] == states[1]


@pytest.mark.skipif(_backend.compiled_kernel is None, reason="extension not built")
def test_kernels_give_identical_generators():
    for spec in ("johnson:6,3", "kneser:5,2", "bipartite-kneser:5,2", "doubled-grassmann:2,3,1"):
        g = build(spec)
        a = automorphism_generators(g, kernel=_backend.python_kernel)
        b = automorphism_generators(g, kernel=_backend.compiled_kernel)
        assert a == b


def test_automorphism_group_examples():
    assert automorphism_group(cycle(5)).order == 10
    assert automorphism_group(kneser(5, 2)).order == 120
    assert automorphism_group(johnson(5, 2)).order == 120
    assert automorphism_group(Graph(1)).order == 1
    assert automorphism_group(Graph(0)).order == 1
    assert automorphism_group(Graph(5)).order == 120


def test_brute_examples():
    assert len(automorphism_group_brute(complete(3))) == 6
    assert len(automorphism_group_brute(Graph(3, [(0, 1), (1, 2)]))) == 2
    assert len(automorphism_group_brute(cycle(6))) == 12
    with pytest.raises(ValueError):
        automorphism_group_brute(cycle(11))


@settings(max_examples=300, deadline=None)
@given(graphs())
def test_engine_matches_brute_force(g):
    A = automorphism_group(g)
    everything = automorphism_group_brute(g)
    assert A.order == len(everything)
    for p in everything:
        assert contains(A, p)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=12), st.data())
def test_colored_search(g, data):
    colors = data.draw(st.lists(st.integers(0, 2), min_size=g.n, max_size=g.n))
    gens, _ = automorphism_generators(g, colors)
    for p in gens:
        assert g.is_automorphism(p.images)
        assert all(colors[p.images[v]] == colors[v] for v in range(g.n))


def test_generators_deterministic_and_verified():
    g = johnson(7, 3)
    first = automorphism_group(g)
    again = automorphism_group(g)
    assert [p.images for p in first.generators] == [p.images for p in again.generators]
    for p in first.generators:
        for u, v in g.edges():
            assert g.has_edge(p.images[u], p.images[v])


def test_orbits_refine_consistently():
    rng = random.Random(7)
    for _ in range(50):
        g = random_graph(rng, rng.randint(2, 16), 0.3)
        c = refine(g)
        for orbit in automorphism_group(g).orbits():
            assert len({c.color[v] for v in orbit}) == 1


def test_bipartite_generators_respect_sides():
    for spec in ("bipartite-kneser:5,2", "bnk:5,2", "doubled-grassmann:2,3,1", "cycle:8"):
        g = build(spec)
        U, W = bipartition(g)
        for p in automorphism_group(g).generators:
            image = {p.images[u] for u in U}
            assert image in (set(U), set(W))


def test_timeout():
    with pytest.raises(SearchTimeout):
        automorphism_group(build("grassmann:3,4,2"), timeout=1e-9)


def test_restrict_examples():
    b = bipartite_double(cycle(5))
    ident = Permutation.identity(10)
    assert restrict(ident, range(5)) == Permutation.identity(5)
    A = automorphism_group(b)
    c5 = cycle(5)
    for p in A.generators:
        if all(p.images[v] < 5 for v in range(5)):
            assert c5.is_automorphism(restrict(p, range(5)).images)
    swap = Permutation(list(range(5, 10)) + list(range(5)))
    with pytest.raises(RestrictionError):
        restrict(swap, range(5))


def test_large_groups():
    assert automorphism_group(build("grassmann:2,4,2")).order == 40320
    assert automorphism_group(bipartite_double(johnson(7, 2))).order == 10080
    assert automorphism_group(build("doubled-grassmann:2,4,1")).order == 20160


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, VDGRAPH_PURE_PYTHON="1")
    code = "from vdgraph.auteng import BACKEND, automorphism_group; from vdgraph.families import cycle; print(BACKEND, automorphism_group(cycle(9)).order)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
    assert out.split() == ["python", "18"]
