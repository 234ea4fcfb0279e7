"""Resultant matrices over polynomial entries and exact determinants."""

from __future__ import annotations

from .errors import NonSquareError
from .polycore import XForm, exact_divide

__all__ = ["PolyMatrix", "sylvester_matrix", "bezout_matrix", "determinant"]


class PolyMatrix:
    """Rectangular matrix of X-forms; zero entries carry degree tags."""

    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if rows:
            widths = {len(r) for r in rows}
            if len(widths) != 1:
                raise ValueError("ragged rows")
            self.ncols = widths.pop()
        else:
            self.ncols = 0
        self.nrows = len(rows)
        self.rows = rows
        fields = {e.field for r in rows for e in r}
        if len(fields) > 1:
            raise ValueError("mixed scalar fields")
        self.field = fields.pop() if fields else None

    def entry(self, i, j):
        return self.rows[i][j]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self):
        return self.nrows == self.ncols

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in r) + "]" for r in self.rows)

    def __repr__(self):
        return f"PolyMatrix({self.nrows}x{self.ncols})"


def sylvester_matrix(f, g):
    """Sylvester matrix of two biforms with respect to t0, t1.

    For t-degrees m and n the matrix is (m+n) square: the first n rows
    hold shifted copies of f's X-form coefficient sequence, the last m
    rows shifted copies of g's.  Its determinant is the resultant.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero form")
    m, n = f.tdeg, g.tdeg
    if m < 1 or n < 1:
        raise ValueError("both forms need positive t-degree")
    size = m + n
    fz = XForm.zero(f.xdeg, f.field)
    gz = XForm.zero(g.xdeg, g.field)
    fc = [f.t_coefficient(i) for i in range(m + 1)]
    gc = [g.t_coefficient(i) for i in range(n + 1)]
    rows = []
    for i in range(n):
        rows.append([fz] * i + fc + [fz] * (n - 1 - i))
    for i in range(m):
        rows.append([gz] * i + gc + [gz] * (m - 1 - i))
    return PolyMatrix(rows)


def bezout_matrix(f, g):
    """Bezout matrix from the Cayley quotient.

    Both forms must share one t-degree m; the quotient
    (f(s) g(t) - f(t) g(s)) / (s0 t1 - s1 t0) is bihomogeneous of
    degree (m-1, m-1) and its coefficients fill a symmetric m x m
    matrix whose determinant is the resultant up to sign.
    """
    if f.tdeg != g.tdeg:
        raise ValueError("Bezout matrix needs equal t-degrees")
    m = f.tdeg
    if m < 1:
        raise ValueError("t-degree must be positive")
    deg = f.xdeg + g.xdeg
    field = f.field
    zero = XForm.zero(deg, field)
    fc = [f.t_coefficient(i) for i in range(m + 1)]
    gc = [g.t_coefficient(i) for i in range(m + 1)]
    a = [[fc[j] * gc[k] - fc[k] * gc[j] for k in range(m + 1)] for j in range(m + 1)]
    # divide by s0 t1 - s1 t0: solving q[j][l] = a[j][l+1] + q[j-1][l+1]
    q = [[zero] * m for _ in range(m)]
    for j in range(m):
        for l in range(m - 1, -1, -1):
            above = q[j - 1][l + 1] if (j > 0 and l + 1 < m) else zero
            q[j][l] = a[j][l + 1] + above
    # the leftover constraints of the exact division must close up
    for j in range(1, m + 1):
        leftover = a[j][0] + (q[j - 1][0] if j - 1 < m else zero)
        if not leftover.is_zero():
            raise ArithmeticError("Cayley quotient division left a remainder")
    return PolyMatrix(q)


def _cofactor(rows, field):
    n = len(rows)
    if n == 0:
        return XForm.constant(1, field)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    sign = 1
    for i in range(n):
        c = rows[i][0]
        if not c.is_zero():
            minor = [r[1:] for k, r in enumerate(rows) if k != i]
            term = c * _cofactor(minor, field)
            if sign < 0:
                term = -term
            total = term if total is None else total + term
        sign = -sign
    if total is None:
        return XForm.zero(0, field)
    return total


def determinant(matrix):
    """Exact determinant of a square matrix of X-forms.

    Uses fraction-free Bareiss elimination with exact polynomial
    divisions; matrices of size up to 4 go through plain cofactor
    expansion.  A pivot column with no nonzero entry means the
    remaining minor is singular, so the determinant is zero.
    """
    if not matrix.is_square():
        raise NonSquareError(f"matrix is {matrix.nrows}x{matrix.ncols}")
    n = matrix.nrows
    field = matrix.field
    if n == 0:
        raise NonSquareError("empty matrix")
    if n <= 4:
        return _cofactor([list(r) for r in matrix.rows], field)
    m = [list(r) for r in matrix.rows]
    sign = 1
    prev = XForm.constant(1, field)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return XForm.zero(0, field)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = exact_divide(num, prev) if not num.is_zero() else num
            m[i][k] = XForm.zero(m[i][k].degree, field)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det
