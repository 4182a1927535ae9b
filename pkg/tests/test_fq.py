import itertools

import pytest

from vdgraph.fq import (
    FieldSpec,
    apply_semilinear,
    contains_subspace,
    enumerate_subspaces,
    field,
    gaussian_binomial,
    intersect_dim,
    perp,
    pgammal_order,
    rank,
    rref,
    span,
    sum_space,
)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9])
def test_field_axioms(q):
    f = field(q)
    els = range(q)
    for a in els:
        assert f.add(a, 0) == a and f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            assert f.sub(f.add(a, b), b) == a
    for a, b, c in itertools.product(els, repeat=3):
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


@pytest.mark.parametrize("q", [4, 8, 9])
def test_frobenius_is_automorphism_fixing_prime_field(q):
    f = field(q)
    for a in range(q):
        for b in range(q):
            assert f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b))
            assert f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b))
    for a in range(f.p):
        assert f.frobenius(a) == a
    assert sorted(f.frobenius(a) for a in range(q)) == list(range(q))
    assert all(f.frobenius(a, f.m) == a for a in range(q))


def test_small_field_examples():
    f2 = field(2)
    assert f2.add(1, 1) == 0
    f4 = field(4)  # x = 2, x + 1 = 3
    assert f4.mul(2, 3) == 1
    assert f4.frobenius(2) == 3


def test_field_errors():
    with pytest.raises(ZeroDivisionError):
        field(3).inv(0)
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2 over F2
    with pytest.raises(ValueError):
        field(6)


def test_rref_examples():
    f = field(2)
    eye = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert rref(f, eye) == (tuple(tuple(r) for r in eye), 3)
    assert rref(f, [[0, 0, 0]])[1] == 0
    assert rank(f, [[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 2


def test_rref_canonical():
    f = field(3)
    a = span(f, 3, [[1, 2, 0], [0, 1, 1]])
    b = span(f, 3, [[1, 0, 1], [2, 2, 1]])
    assert rank(f, [[1, 2, 0], [0, 1, 1], [1, 0, 1], [2, 2, 1]]) == 2
    assert a == b
    rows = a.rows
    assert all(rows[i][p] == 1 for i, p in enumerate(a.pivots))
    assert list(a.pivots) == sorted(a.pivots)


def test_enumerate_examples():
    f2 = field(2)
    assert len(enumerate_subspaces(f2, 3, 1)) == 7
    assert len(enumerate_subspaces(f2, 4, 2)) == 35
    zero = enumerate_subspaces(f2, 4, 0)
    assert len(zero) == 1 and zero[0].k == 0


@pytest.mark.parametrize("q", [2, 3, 4])
def test_enumeration_matches_gaussian_binomial(q):
    f = field(q)
    for n in range(1, 6):
        for k in range(n + 1):
            if q == 4 and n == 5 and k in (2, 3):
                continue  # covered in the acceptance run
            subs = enumerate_subspaces(f, n, k)
            assert len(subs) == gaussian_binomial(n, k, q)
            assert len(set(subs)) == len(subs)


def test_gaussian_binomial_examples():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 1, 2) == 7
    for q in (2, 3):
        for n in range(7):
            assert gaussian_binomial(n, 0, q) == 1
            for k in range(n + 1):
                assert gaussian_binomial(n, k, q) == gaussian_binomial(n, n - k, q)
    with pytest.raises(ValueError):
        gaussian_binomial(3, 4, 2)


def test_intersection_and_sum():
    f = field(2)
    a = span(f, 4, [[1, 0, 0, 0], [0, 1, 0, 0]])
    b = span(f, 4, [[0, 0, 1, 0], [0, 0, 0, 1]])
    c = span(f, 4, [[1, 0, 0, 0], [0, 0, 1, 0]])
    assert intersect_dim(a, a) == 2
    assert intersect_dim(a, b) == 0
    assert intersect_dim(a, c) == 1
    assert sum_space(a, c).k == 3
    assert contains_subspace(sum_space(a, c), a)
    with pytest.raises(ValueError):
        intersect_dim(a, span(field(3), 4, [[1, 0, 0, 0]]))


def test_perp_examples():
    f = field(2)
    full = span(f, 3, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert perp(full).k == 0
    e1 = span(f, 3, [[1, 0, 0]])
    assert perp(e1) == span(f, 3, [[0, 1, 0], [0, 0, 1]])


def test_perp_involution_and_dimension_law_f2_4():
    f = field(2)
    subs = [s for k in range(5) for s in enumerate_subspaces(f, 4, k)]
    for a in subs:
        pa = perp(a)
        assert pa.k == 4 - a.k
        assert perp(pa) == a
    lines = enumerate_subspaces(f, 4, 1)
    planes = enumerate_subspaces(f, 4, 2)
    for a in lines:
        for b in planes:
            if contains_subspace(b, a):
                assert contains_subspace(perp(a), perp(b))


def test_apply_semilinear_examples():
    f2 = field(2)
    a = span(f2, 3, [[1, 0, 0]])
    eye = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert apply_semilinear(eye, 0, a) == a
    swap = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert apply_semilinear(swap, 0, a) == span(f2, 3, [[0, 1, 0]])
    f4 = field(4)
    line = span(f4, 2, [[1, 2]])
    assert apply_semilinear([[1, 0], [0, 1]], 1, line) == span(f4, 2, [[1, 3]])
    with pytest.raises(ValueError):
        apply_semilinear([[1, 1, 0], [1, 1, 0], [0, 0, 1]], 0, a)


def test_apply_semilinear_preserves_intersections():
    f = field(2)
    m = [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
    planes = enumerate_subspaces(f, 4, 2)
    images = [apply_semilinear(m, 0, p) for p in planes]
    assert len(set(images)) == len(planes)
    for i, a in enumerate(planes):
        for j, b in enumerate(planes):
            assert intersect_dim(images[i], images[j]) == intersect_dim(a, b)


def test_apply_semilinear_composition():
    f = field(4)
    m1 = [[1, 2], [0, 1]]
    m2 = [[3, 0], [1, 1]]
    for v in enumerate_subspaces(f, 2, 1):
        once = apply_semilinear(m2, 0, apply_semilinear(m1, 0, v))
        prod = [[f.add(f.mul(m1[i][0], m2[0][j]), f.mul(m1[i][1], m2[1][j])) for j in range(2)] for i in range(2)]
        assert once == apply_semilinear(prod, 0, v)


def test_pgammal_order_examples():
    assert pgammal_order(3, 2) == 168
    assert pgammal_order(4, 2) == 20160
    assert pgammal_order(3, field(4)) == 120960
    with pytest.raises(ValueError):
        pgammal_order(1, 2)


def test_subspace_json():
    f = field(4)
    s = span(f, 3, [[1, 2, 0]])
    data = s.to_json()
    assert data["rows"] == [[1, 2, 0]]
    assert s.label() == "120"
