"""Exact rational matrices, subspaces and integer lattice helpers.

Everything here works over ``fractions.Fraction`` (rationals) or plain ``int``
(lattices).  Matrices are immutable; the module level helpers also accept raw
lists of rows so hot loops elsewhere can avoid wrapping.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

Rational = Fraction

Row = Tuple[Fraction, ...]


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class _Matrix:
    """Dense row-major matrix with immutable entries."""

    __slots__ = ("rows", "cols", "entries")
    _scalar = staticmethod(to_rational)

    def __init__(self, data: Iterable[Iterable], cols: Optional[int] = None) -> None:
        entries = tuple(tuple(self._scalar(x) for x in row) for row in data)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def tolist(self) -> List[list]:
        return [list(r) for r in self.entries]

    def transpose(self):
        return type(self)([self.column(j) for j in range(self.cols)], self.rows)

    @property
    def T(self):
        return self.transpose()

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        out = [[sum((a * b for a, b in zip(r, c)), self._scalar(0)) for c in cols] for r in self.entries]
        cls = type(self) if type(self) is type(other) else QMatrix
        return cls(out, other.cols)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return type(self)([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return type(self)([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __neg__(self):
        return type(self)([[-a for a in r] for r in self.entries], self.cols)

    def scale(self, c):
        return type(self)([[c * a for a in r] for r in self.entries], self.cols)

    def apply(self, v: Sequence) -> tuple:
        return tuple(sum((a * b for a, b in zip(r, v)), self._scalar(0)) for r in self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, _Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.entries for a in r)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.entries)
        return f"{type(self).__name__}([{body}])"


class QMatrix(_Matrix):
    """Matrix over the rationals."""

    def rank(self) -> int:
        return len(rref(self)[1])

    def det(self) -> Fraction:
        return det(self.tolist())


class ZMatrix(_Matrix):
    """Matrix over the integers."""

    @staticmethod
    def _scalar(x) -> int:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"non-integer entry {x}")
            return int(x.numerator)
        if isinstance(x, int):
            return x
        raise TypeError(f"non-integer entry {x!r}")

    def to_q(self) -> QMatrix:
        return QMatrix(self.entries, self.cols)

    def det(self) -> int:
        return int(det(self.tolist()))


# ---------------------------------------------------------------------------
# raw list helpers


def rref_rows(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form of a list of rows; zero rows dropped."""
    m = [[to_rational(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pr = m[r]
        inv = 1 / pr[c]
        if inv != 1:
            pr = [x * inv for x in pr]
            m[r] = pr
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f != 0:
                    row = m[i]
                    m[i] = [a - f * b for a, b in zip(row, pr)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rref(m: QMatrix) -> Tuple[QMatrix, List[int]]:
    """Unique reduced row echelon form (same shape) and pivot columns."""
    rows, pivots = rref_rows(m.entries, m.cols)
    rows = rows + [[Fraction(0)] * m.cols for _ in range(m.rows - len(rows))]
    return QMatrix(rows, m.cols), pivots


def kernel_rows(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of the right null space, returned in rref."""
    red, pivots = rref_rows(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return rref_rows(basis, ncols)[0] if basis else []


def kernel_basis(m: QMatrix) -> QMatrix:
    return QMatrix(kernel_rows(m.entries, m.cols), m.cols)


def rank_of(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    return len(rref_rows(rows, ncols)[1])


def det(rows: Sequence[Sequence]) -> Fraction:
    m = [[to_rational(x) for x in r] for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] * inv
            if f != 0:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[List[Fraction]]:
    """One solution x of rows·x = rhs (free variables zero), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [to_rational(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref_rows(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def inverse(rows: Sequence[Sequence]) -> List[List[Fraction]]:
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[list]:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(r, c)), 0) for c in cols] for r in a]


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Linear subspace of Q^ambient stored by its rref basis."""

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: int, vectors: Iterable[Sequence] = ()) -> None:
        rows, pivots = rref_rows(list(vectors), ambient)
        self.ambient = ambient
        self.basis: Tuple[Row, ...] = tuple(tuple(r) for r in rows)
        self.pivots: Tuple[int, ...] = tuple(pivots)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return self.dim

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v: Sequence) -> Optional[List[Fraction]]:
        """Coefficients of v in the rref basis, or None when v is outside."""
        w = [to_rational(x) for x in v]
        coeffs = []
        for row, p in zip(self.basis, self.pivots):
            c = w[p]
            coeffs.append(c)
            if c != 0:
                w = [a - c * b for a, b in zip(w, row)]
        if any(x != 0 for x in w):
            return None
        return coeffs

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        if not self.basis or not other.basis:
            return Subspace(self.ambient)
        k, l = self.dim, other.dim
        # solve sum a_i u_i - sum b_j w_j = 0
        cols = [list(u) for u in self.basis] + [[-x for x in w] for w in other.basis]
        mat = [[cols[c][r] for c in range(k + l)] for r in range(self.ambient)]
        ker = kernel_rows(mat, k + l)
        vecs = []
        for sol in ker:
            v = [Fraction(0)] * self.ambient
            for a, u in zip(sol[:k], self.basis):
                if a != 0:
                    v = [x + a * y for x, y in zip(v, u)]
            vecs.append(v)
        return Subspace(self.ambient, vecs)

    def extend_to(self, candidates: Iterable[Sequence]) -> List[tuple]:
        """Greedily pick candidates independent of self and of each other."""
        chosen = []
        cur = self
        for c in candidates:
            if not cur.contains(c):
                chosen.append(tuple(to_rational(x) for x in c))
                cur = Subspace(self.ambient, list(cur.basis) + [c])
        return chosen

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def tolists(self) -> List[List[str]]:
        return [[str(x) for x in r] for r in self.basis]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


# ---------------------------------------------------------------------------
# integer lattices


def smith_normal_form(m: ZMatrix) -> Tuple[ZMatrix, ZMatrix, ZMatrix]:
    """Return (U, D, V) with U·m·V = D diagonal, d_i | d_{i+1}, U and V unimodular."""
    A = [list(r) for r in m.entries]
    nr, nc = m.rows, m.cols
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for r in A:
            r[dst] -= q * r[src]
        for r in V:
            r[dst] -= q * r[src]

    for t in range(min(nr, nc)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if A[i][j] != 0]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            done = True
            for i in range(t + 1, nr):
                if A[i][t]:
                    add_row(i, t, A[i][t] // A[t][t])
                    if A[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if A[t][j]:
                    add_col(j, t, A[t][j] // A[t][t])
                    if A[t][j]:
                        done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            # pull the offending row up so the next pass sees a smaller remainder
            A[t] = [a + b for a, b in zip(A[t], A[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if t < nr and t < nc and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return ZMatrix(U, nr), ZMatrix(A, nc), ZMatrix(V, nc)


def invariant_factors(m: ZMatrix) -> List[int]:
    _, D, _ = smith_normal_form(m)
    return [D[i, i] for i in range(min(D.rows, D.cols)) if D[i, i] != 0]


def is_lattice_basis(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the vectors are n vectors in Z^n with determinant ±1."""
    vectors = [list(v) for v in vectors]
    n = len(vectors)
    if n == 0 or any(len(v) != n for v in vectors):
        return False
    return abs(det(vectors)) == 1


def primitive(v: Sequence[int]) -> Tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def integer_vector(v: Sequence[Fraction]) -> Tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    lcm = 1
    for x in v:
        x = to_rational(x)
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    return primitive([int(to_rational(x) * lcm) for x in v])


def dual_basis(basis: Sequence[Sequence[int]]) -> List[Tuple[Fraction, ...]]:
    """Rows p_i* with <p_i, p_j*> = delta_ij."""
    inv = inverse([list(map(to_rational, b)) for b in basis])
    # columns of the inverse are the dual vectors
    n = len(basis)
    return [tuple(inv[r][c] for r in range(n)) for c in range(n)]


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def independent_subsets(vectors: Sequence[Sequence], k: int):
    """Index k-subsets whose vectors are linearly independent."""
    for idx in combinations(range(len(vectors)), k):
        if rank_of([vectors[i] for i in idx], len(vectors[0])) == k:
            yield idx
