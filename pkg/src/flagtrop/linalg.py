"""Small dense matrices over an arbitrary commutative field-like ring.

Entries may be Fractions, RatFuncs, or PuiseuxSeries; only +, -, *, and
multiplicative inverse are used.  Gauss-type factorizations raise
NotInBigCell on vanishing pivots (the geometric meaning throughout).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotInBigCell


def is_zero_elem(x):
    z = getattr(x, "is_zero", None)
    if z is not None:
        return z
    return x == 0


def inv_elem(x):
    f = getattr(x, "inv", None)
    if f is not None:
        return f()
    return Fraction(1) / x


class Mat:
    __slots__ = ("rows", "n", "m")

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]
        self.n = len(self.rows)
        self.m = len(self.rows[0]) if self.rows else 0

    @staticmethod
    def identity(n, one):
        zero = one * 0
        return Mat(
            [[one if i == j else zero for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(n, m, one):
        zero = one * 0
        return Mat([[zero for _ in range(m)] for _ in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def copy(self):
        return Mat([list(r) for r in self.rows])

    def __matmul__(self, other):
        assert self.m == other.n
        out = []
        for i in range(self.n):
            row = []
            for j in range(other.m):
                acc = None
                for k in range(self.m):
                    term = self.rows[i][k] * other.rows[k][j]
                    acc = term if acc is None else acc + term
                row.append(acc)
            out.append(row)
        return Mat(out)

    def transpose(self):
        return Mat([[self.rows[i][j] for i in range(self.n)] for j in range(self.m)])

    def map(self, f):
        return Mat([[f(x) for x in r] for r in self.rows])

    def scale(self, c):
        return self.map(lambda x: x * c)

    def inverse(self):
        """Gauss-Jordan inverse; raises NotInBigCell on singularity."""
        n = self.n
        assert n == self.m
        a = [list(r) for r in self.rows]
        one = None
        for r in self.rows:
            for x in r:
                if not is_zero_elem(x):
                    one = x * inv_elem(x)
                    break
            if one is not None:
                break
        if one is None:
            raise NotInBigCell("zero matrix")
        e = Mat.identity(n, one).rows
        for col in range(n):
            piv = None
            for r in range(col, n):
                if not is_zero_elem(a[r][col]):
                    piv = r
                    break
            if piv is None:
                raise NotInBigCell(f"singular matrix at column {col}")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
                e[col], e[piv] = e[piv], e[col]
            pinv = inv_elem(a[col][col])
            a[col] = [x * pinv for x in a[col]]
            e[col] = [x * pinv for x in e[col]]
            for r in range(n):
                if r == col or is_zero_elem(a[r][col]):
                    continue
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                e[r] = [x - f * y for x, y in zip(e[r], e[col])]
        return Mat(e)

    def minor(self, row_idx, col_idx):
        """Determinant of the submatrix on the given index lists."""
        sub = [[self.rows[i][j] for j in col_idx] for i in row_idx]
        return _det(sub)

    def det(self):
        return _det(self.rows)

    def __repr__(self):
        return "Mat([\n" + "\n".join("  " + repr(r) for r in self.rows) + "\n])"


def _det(rows):
    k = len(rows)
    if k == 0:
        raise ValueError("empty determinant")
    if k == 1:
        return rows[0][0]
    # cofactor expansion along the first row (desk-scale sizes)
    acc = None
    for j in range(k):
        x = rows[0][j]
        if is_zero_elem(x) and acc is not None:
            continue
        sub = [[r[c] for c in range(k) if c != j] for r in rows[1:]]
        term = x * _det(sub)
        if j % 2:
            term = term * -1
        acc = term if acc is None else acc + term
    return acc


def lu_unipotent_upper(g: Mat):
    """g = L U with L lower triangular (diagonal kept) and U upper unipotent.

    Exists iff the leading principal minors are nonzero.
    """
    n = g.n
    a = [list(r) for r in g.rows]
    one = None
    for r in g.rows:
        for x in r:
            if not is_zero_elem(x):
                one = x * inv_elem(x)
                break
        if one is not None:
            break
    L = Mat.identity(n, one).rows
    U = Mat.identity(n, one).rows
    zero = one * 0
    for k in range(n):
        piv = a[k][k]
        if is_zero_elem(piv):
            raise NotInBigCell(f"vanishing principal minor at {k}")
        pinv = inv_elem(piv)
        for i in range(k, n):
            L[i][k] = a[i][k]
        for j in range(k, n):
            U[k][j] = a[k][j] * pinv
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = a[i][j] - a[i][k] * pinv * a[k][j]
        for i in range(k + 1, n):
            a[i][k] = zero
            a[k][i] = zero
    return Mat(L), Mat(U)


def ldu(g: Mat):
    """g = L D U with L lower unipotent, D diagonal, U upper unipotent."""
    L, U = lu_unipotent_upper(g)
    n = g.n
    one = U.rows[0][0]
    D = Mat.identity(n, one)
    Lu = Mat.identity(n, one)
    for k in range(n):
        d = L.rows[k][k]
        D.rows[k][k] = d
        dinv = inv_elem(d)
        for i in range(k, n):
            Lu.rows[i][k] = L.rows[i][k] * dinv
    return Lu, D, U


def ul_unipotent_lower(g: Mat):
    """g = U L with U upper triangular (diagonal kept) and L lower unipotent.

    Exists iff the trailing principal minors are nonzero.  Computed by
    conjugating with the antidiagonal flip and reusing the LU routine.
    """
    n = g.n
    flip = lambda M: Mat(
        [[M.rows[n - 1 - i][n - 1 - j] for j in range(n)] for i in range(n)]
    )
    Lf, Uf = lu_unipotent_upper(flip(g))
    return flip(Lf), flip(Uf)


def gauss_lower_upper(g: Mat):
    """g = [g]_- [g]_0 [g]_+ : lower unipotent, diagonal, upper unipotent."""
    return ldu(g)
