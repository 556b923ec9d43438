"""Exact integer linear algebra over Z^n.

Vectors are tuples of Python ints (arbitrary precision), matrices are
lists of rows.  Characters of the torus live in X(T) = Z^n, one-parameter
subgroups in Y(T) = Z^n, dual to each other under the standard dot-product
pairing.  Everything here is a pure function of immutable data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import ShapeError

Vector = tuple[int, ...]
Matrix = list[list[int]]


def pairing(chi: Sequence[int], mu: Sequence[int]) -> int:
    """<chi, mu>: the integer with chi(mu(t)) = t^<chi,mu>."""
    if len(chi) != len(mu):
        raise ShapeError(f"pairing of vectors of lengths {len(chi)} and {len(mu)}")
    return sum(a * b for a, b in zip(chi, mu))


def primitive(v: Sequence[int]) -> Vector:
    """v divided by the gcd of its entries; sign is preserved."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("primitive of the zero vector")
    return tuple(x // g for x in v)


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols)]
        for row in a
    ]


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    return [[a[i][j] for i in range(rows)] for j in range(cols)]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ShapeError("determinant of a non-square matrix")
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence[int]]) -> int:
    """Exact rank over Q via Gaussian elimination with Fractions."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for j in range(cols):
        piv = next((i for i in range(r, rows) if a[i][j] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(rows):
            if i != r and a[i][j] != 0:
                f = a[i][j] / a[r][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def invert_unimodular(m: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of an integer matrix with determinant +-1 (integer result)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for j in range(n):
        piv = next(i for i in range(j, n) if a[i][j] != 0)
        a[j], a[piv] = a[piv], a[j]
        inv = 1 / a[j][j]
        a[j] = [x * inv for x in a[j]]
        for i in range(n):
            if i != j and a[i][j] != 0:
                f = a[i][j]
                a[i] = [x - f * y for x, y in zip(a[i], a[j])]
    out = [[x for x in row[n:]] for row in a]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


def smith_normal_form(
    m: Sequence[Sequence[int]],
) -> tuple[Matrix, Matrix, Matrix]:
    """Return unimodular U, V and diagonal D with U*M*V = D, d1 | d2 | ...

    Elementary row/column reduction with minimal-absolute-value pivoting;
    all nonzero diagonal entries are made positive and satisfy the
    divisibility chain.
    """
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def reduce_at(t):
        """Diagonalize position t against the trailing submatrix."""
        while True:
            piv = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] != 0 and (
                        piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])
                    ):
                        piv = (i, j)
            if piv is None:
                return False
            if piv != (t, t):
                if piv[0] != t:
                    swap_rows(t, piv[0])
                if piv[1] != t:
                    swap_cols(t, piv[1])
            clean = True
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    row_op(i, t, a[i][t] // a[t][t])
                    if a[i][t] != 0:
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    col_op(j, t, a[t][j] // a[t][t])
                    if a[t][j] != 0:
                        clean = False
            if clean:
                return True

    limit = min(rows, cols)
    t = 0
    while t < limit and reduce_at(t):
        t += 1

    # Enforce the divisibility chain d_i | d_{i+1}.
    changed = True
    while changed:
        changed = False
        for i in range(limit - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if dj != 0 and (di == 0 or dj % di != 0):
                col_op(i, i + 1, -1)  # col_i += col_{i+1}
                k = i
                while k < limit and reduce_at(k):
                    k += 1
                changed = True
                break

    for i in range(limit):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    return u, a, v


def diagonal_of(d: Sequence[Sequence[int]]) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def solve_integer(
    m: Sequence[Sequence[int]], b: Sequence[int]
) -> Optional[Vector]:
    """Some integer x with M x = b, or None when no integer solution exists."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if len(b) != rows:
        raise ShapeError(f"system with {rows} rows and rhs of length {len(b)}")
    if rows == 0:
        return (0,) * cols
    u, d, v = smith_normal_form(m)
    c = mat_vec(u, b)
    diag = diagonal_of(d)
    y = [0] * cols
    for i in range(rows):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
    return mat_vec(v, y)


def kernel_basis(m: Sequence[Sequence[int]]) -> list[Vector]:
    """Lattice basis of {x in Z^c : M x = 0} (a saturated sublattice)."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if rows == 0:
        return [tuple(int(i == j) for i in range(cols)) for j in range(cols)]
    _, d, v = smith_normal_form(m)
    diag = diagonal_of(d)
    free = [j for j in range(cols) if j >= len(diag) or diag[j] == 0]
    return [tuple(v[i][j] for i in range(cols)) for j in free]


@dataclass(frozen=True)
class QuotientLatticePresentation:
    """Z^n modulo a sublattice, presented as Z^rank (+) sum Z/d_i.

    ``project`` sends v to its coordinates in the presentation; two vectors
    have the same class iff their projections agree.  Built from the Smith
    normal form of the generator matrix; torsion is reported exactly as
    computed (no saturation).
    """

    n: int
    rank: int
    torsion: tuple[int, ...]
    _u: tuple[Vector, ...]
    _free_rows: tuple[int, ...]
    _torsion_rows: tuple[int, ...]

    def project(self, v: Sequence[int]) -> tuple[Vector, Vector]:
        if len(v) != self.n:
            raise ShapeError(f"vector of length {len(v)} in Z^{self.n}")
        y = mat_vec(self._u, v)
        free = tuple(y[i] for i in self._free_rows)
        tors = tuple(
            y[i] % d for i, d in zip(self._torsion_rows, self.torsion)
        )
        return free, tors

    def free_part(self, v: Sequence[int]) -> Vector:
        return self.project(v)[0]

    def is_zero(self, v: Sequence[int]) -> bool:
        free, tors = self.project(v)
        return not any(free) and not any(tors)

    def same_class(self, v: Sequence[int], w: Sequence[int]) -> bool:
        return self.is_zero(tuple(a - b for a, b in zip(v, w)))

    def projection_matrix(self) -> Matrix:
        """The rank x n matrix of the free coordinates."""
        return [list(self._u[i]) for i in self._free_rows]

    def lift_basis(self) -> list[Vector]:
        """Vectors in Z^n mapping to the free unit coordinates."""
        uinv = invert_unimodular([list(r) for r in self._u])
        return [
            tuple(uinv[i][j] for i in range(self.n)) for j in self._free_rows
        ]


def quotient_by_sublattice(
    n: int, generators: Sequence[Sequence[int]]
) -> QuotientLatticePresentation:
    """Present Z^n / <generators> as free part plus elementary divisors."""
    for g in generators:
        if len(g) != n:
            raise ShapeError(f"generator of length {len(g)} in Z^{n}")
    k = len(generators)
    if k == 0:
        u = identity_matrix(n)
        return QuotientLatticePresentation(
            n, n, (), tuple(tuple(r) for r in u), tuple(range(n)), ()
        )
    g = [[generators[j][i] for j in range(k)] for i in range(n)]  # n x k
    u, d, _ = smith_normal_form(g)
    diag = diagonal_of(d)
    free_rows = tuple(
        i for i in range(n) if i >= len(diag) or diag[i] == 0
    )
    torsion_rows = tuple(
        i for i in range(len(diag)) if diag[i] > 1
    )
    torsion = tuple(diag[i] for i in torsion_rows)
    return QuotientLatticePresentation(
        n,
        len(free_rows),
        torsion,
        tuple(tuple(r) for r in u),
        free_rows,
        torsion_rows,
    )
