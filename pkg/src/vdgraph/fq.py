"""Arithmetic in F_q (q = p^m) and canonical subspaces of F_q^n.

Field elements are integers ``0..q-1``: the base-p digits of an element are
its coefficients in the polynomial basis ``1, x, ..., x^(m-1)``. Vectors are
row vectors and subspaces are stored by their reduced row echelon form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

__all__ = [
    "FieldSpec",
    "SubspaceRep",
    "field",
    "rref",
    "rank",
    "enumerate_subspaces",
    "gaussian_binomial",
    "span",
    "intersect_dim",
    "sum_space",
    "contains_subspace",
    "perp",
    "apply_semilinear",
    "pgammal_order",
]

# Monic moduli (coefficients low degree first) shipped for composite orders.
DEFAULT_MODULI = {
    4: (2, 2, (1, 1, 1)),  # x^2 + x + 1
    8: (2, 3, (1, 1, 0, 1)),  # x^3 + x + 1
    9: (3, 2, (1, 0, 1)),  # x^2 + 1
}

Matrix = tuple[tuple[int, ...], ...]


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _poly_divmod_is_zero(a: list[int], b: list[int], p: int) -> bool:
    """True iff monic ``b`` divides ``a`` over F_p."""
    a = a[:]
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return all(x % p == 0 for x in a[:db])


def _irreducible(p: int, modulus: Sequence[int]) -> bool:
    m = len(modulus) - 1
    # trial division by every monic polynomial of degree 1..m//2
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            if _poly_divmod_is_zero(list(modulus), list(low) + [1], p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int = 1
    modulus: tuple[int, ...] = (0, 1)

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.m < 1:
            raise ValueError("extension degree must be >= 1")
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise ValueError("modulus coefficients must lie in 0..p-1")
        if self.m > 1 and not _irreducible(self.p, self.modulus):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def tables(self) -> "_Tables":
        return _tables(self.p, self.m, self.modulus)

    def add(self, a: int, b: int) -> int:
        return self.tables.add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.tables.sub[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.tables.mul[a][b]

    def neg(self, a: int) -> int:
        return self.tables.neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.tables.inv[a]

    def frobenius(self, a: int, power: int = 1) -> int:
        """``a^(p^power)``."""
        fr = self.tables.frob
        for _ in range(power % self.m):
            a = fr[a]
        return a

    def describe(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}


def field(q: int, modulus: Sequence[int] | None = None) -> FieldSpec:
    """FieldSpec for order ``q``; composite orders use the shipped modulus unless one is given."""
    if q < 2:
        raise ValueError("field order must be >= 2")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    if m == 1:
        return FieldSpec(p)
    if modulus is None:
        if q not in DEFAULT_MODULI:
            raise ValueError(f"no default modulus for q={q}; pass one explicitly")
        modulus = DEFAULT_MODULI[q][2]
    return FieldSpec(p, m, tuple(modulus))


class _Tables:
    __slots__ = ("add", "sub", "mul", "neg", "inv", "frob")


@lru_cache(maxsize=None)
def _tables(p: int, m: int, modulus: tuple[int, ...]) -> _Tables:
    q = p**m

    def digits(a):
        out = []
        for _ in range(m):
            out.append(a % p)
            a //= p
        return out

    def number(ds):
        return sum(d * p**i for i, d in enumerate(ds))

    def polymul(a, b):
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(digits(a)):
            for j, y in enumerate(digits(b)):
                prod[i + j] = (prod[i + j] + x * y) % p
        for i in range(len(prod) - 1, m - 1, -1):
            c = prod[i]
            if c:
                for j in range(m + 1):
                    prod[i - m + j] = (prod[i - m + j] - c * modulus[j]) % p
        return number(prod[:m])

    t = _Tables()
    t.add = tuple(tuple(number([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q)) for a in range(q))
    t.neg = tuple(number([(-x) % p for x in digits(a)]) for a in range(q))
    t.sub = tuple(tuple(t.add[a][t.neg[b]] for b in range(q)) for a in range(q))
    t.mul = tuple(tuple(polymul(a, b) for b in range(q)) for a in range(q))
    inv = [0] * q
    for a in range(1, q):
        inv[a] = next(b for b in range(1, q) if t.mul[a][b] == 1)
    t.inv = tuple(inv)
    frob = []
    for a in range(q):
        r = 1
        for _ in range(p):
            r = t.mul[r][a]
        frob.append(r)
    t.frob = tuple(frob)
    return t


# -- matrices --------------------------------------------------------------

def rref(f: FieldSpec, mat: Sequence[Sequence[int]]) -> tuple[Matrix, int]:
    """Reduced row echelon form (zero rows dropped) and rank."""
    t = f.tables
    rows = [list(r) for r in mat]
    if not rows:
        return (), 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = t.inv[rows[r][c]]
        if s != 1:
            rows[r] = [t.mul[s][x] for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                fac = rows[i][c]
                mf = t.mul[fac]
                rows[i] = [t.sub[x][mf[y]] for x, y in zip(rows[i], pr)]
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r]), r


def rank(f: FieldSpec, mat: Sequence[Sequence[int]]) -> int:
    return rref(f, mat)[1]


def _matmul(f: FieldSpec, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    t = f.tables
    cols = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = 0
            for x, y in zip(row, col):
                if x and y:
                    acc = t.add[acc][t.mul[x][y]]
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


@dataclass(frozen=True)
class SubspaceRep:
    """A k-dimensional subspace of F_q^n held as its RREF basis (canonical)."""

    field: FieldSpec
    n: int
    rows: Matrix

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(c for c, x in enumerate(row) if x) for row in self.rows)

    def label(self) -> str:
        sep = "," if self.field.q > 10 else ""
        if not self.rows:
            return "0"
        return "|".join(sep.join(map(str, r)) for r in self.rows)

    def to_json(self) -> dict:
        return {"field": self.field.describe(), "n": self.n, "rows": [list(r) for r in self.rows]}


def span(f: FieldSpec, n: int, vectors: Sequence[Sequence[int]]) -> SubspaceRep:
    for v in vectors:
        if len(v) != n:
            raise ValueError("vector length does not match ambient dimension")
    rows, _ = rref(f, vectors)
    return SubspaceRep(f, n, rows)


def _check_pair(a: SubspaceRep, b: SubspaceRep) -> None:
    if a.field != b.field or a.n != b.n:
        raise ValueError("subspaces live in different ambient spaces")


def enumerate_subspaces(f: FieldSpec, n: int, k: int) -> list[SubspaceRep]:
    """All k-subspaces of F_q^n.

    Ordered by pivot-column set (lexicographic), then by the free entries
    read row-major with values ascending.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    q = f.q
    out = []
    for pivots in combinations(range(n), k):
        pset = set(pivots)
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pset]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), x in zip(free, values):
                rows[r][c] = x
            out.append(SubspaceRep(f, n, tuple(tuple(row) for row in rows)))
    return out


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-subspaces of an n-dimensional space over F_q."""
    if not 0 <= k <= n or q < 2:
        raise ValueError(f"invalid Gaussian binomial arguments n={n}, k={k}, q={q}")
    num = den = 1
    for i in range(k):
        num *= q**n - q**i
        den *= q**k - q**i
    assert num % den == 0
    return num // den


def intersect_dim(a: SubspaceRep, b: SubspaceRep) -> int:
    _check_pair(a, b)
    return a.k + b.k - rank(a.field, a.rows + b.rows)


def sum_space(a: SubspaceRep, b: SubspaceRep) -> SubspaceRep:
    _check_pair(a, b)
    rows, _ = rref(a.field, a.rows + b.rows)
    return SubspaceRep(a.field, a.n, rows)


def contains_subspace(big: SubspaceRep, small: SubspaceRep) -> bool:
    """``small <= big``."""
    return intersect_dim(big, small) == small.k


def perp(a: SubspaceRep) -> SubspaceRep:
    """Orthogonal complement under the standard dot product."""
    f, n = a.field, a.n
    t = f.tables
    piv = a.pivots
    free = [c for c in range(n) if c not in set(piv)]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for r, pc in enumerate(piv):
            v[pc] = t.neg[a.rows[r][fc]]
        basis.append(v)
    return span(f, n, basis)


def apply_semilinear(m: Sequence[Sequence[int]], s: int, a: SubspaceRep) -> SubspaceRep:
    """Image of ``a`` under ``x -> frob^s(x) @ m`` (row vectors, frobenius entrywise)."""
    f, n = a.field, a.n
    if len(m) != n or any(len(r) != n for r in m):
        raise ValueError("matrix shape does not match ambient dimension")
    if rank(f, m) != n:
        raise ValueError("semilinear map needs an invertible matrix")
    twisted = [[f.frobenius(x, s) for x in row] for row in a.rows]
    return span(f, n, _matmul(f, twisted, m) if twisted else [])


def pgammal_order(n: int, f: FieldSpec | int) -> int:
    """|PΓL_n(F_q)| = m * |GL_n(F_q)| / (q - 1)."""
    if isinstance(f, int):
        f = field(f)
    if n < 2:
        raise ValueError("pgammal_order needs n >= 2")
    q = f.q
    gl = 1
    for i in range(n):
        gl *= q**n - q**i
    return f.m * gl // (q - 1)
