"""Pure-Python exact row reduction.

Everything here is fraction-free: rational matrices are handled as
integer rows (each row scaled to a primitive integer vector, which
changes nothing about row spans or kernels), and eliminations use
cross-multiplication followed by content stripping.  Outputs are
canonical, so the compiled twin in ``_core`` must produce bit-identical
results: echelon rows are primitive with a positive pivot, kernel
vectors are primitive with a positive entry at their free column.

A small GF(p) variant backs the prime-field scalar mode; it has no
compiled twin because residue arithmetic is already cheap.
"""

from math import gcd


def _strip(row, start=0):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        for j in range(start, len(row)):
            row[j] //= g
    return row


def _first_nonzero(row, start, n):
    for j in range(start, n):
        if row[j]:
            return j
    return n


def _insert(table, row, n):
    """Reduce ``row`` against the echelon rows in ``table``.

    Returns the column of a fresh pivot and stores the row, or n when
    the row reduces to zero.  ``table`` maps pivot column -> row.
    """
    c = _first_nonzero(row, 0, n)
    while c < n:
        piv = table.get(c)
        if piv is None:
            _strip(row, c)
            if row[c] < 0:
                for j in range(c, n):
                    row[j] = -row[j]
            table[c] = row
            return c
        a, b = piv[c], row[c]
        g = gcd(a, b)
        a //= g
        b //= g
        for j in range(c, n):
            row[j] = a * row[j] - b * piv[j]
        _strip(row, c)
        c = _first_nonzero(row, c + 1, n)
    return n


def _echelon(rows, ncols):
    table = {}
    for r in rows:
        _insert(table, list(r), ncols)
    return table


def _back_reduce(table, ncols):
    pivots = sorted(table)
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        r = table[c]
        for c2 in pivots[:i]:
            q = table[c2]
            if not q[c]:
                continue
            a, b = r[c], q[c]
            g = gcd(a, b)
            a //= g
            b //= g
            for j in range(c2, ncols):
                q[j] = a * q[j] - b * r[j]
            _strip(q, c2)
    for c in pivots:
        q = table[c]
        if q[c] < 0:
            for j in range(c, ncols):
                q[j] = -q[j]
    return pivots


def rref(rows, ncols):
    """Canonical integer reduced row echelon form over the rationals.

    Returns (pivot columns, rows); each row is primitive with a
    positive pivot entry.
    """
    table = _echelon(rows, ncols)
    pivots = _back_reduce(table, ncols)
    return pivots, [table[c] for c in pivots]


def nullspace(rows, ncols):
    """Canonical primitive basis of the right kernel.

    One vector per free column, entry at the free column positive.
    """
    pivots, red = rref(rows, ncols)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        scale = 1
        for i, c in enumerate(pivots):
            if red[i][f]:
                p = red[i][c]
                scale = scale * p // gcd(scale, p)
        v = [0] * ncols
        v[f] = scale
        for i, c in enumerate(pivots):
            if red[i][f]:
                v[c] = -red[i][f] * (scale // red[i][c])
        _strip(v)
        out.append(v)
    return out


class SpanBuilder:
    """Incremental rank computation by echelon insertion."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.table = {}
        self.rank = 0

    def add(self, vec):
        """Insert a vector; returns True when it enlarges the span."""
        c = _insert(self.table, list(vec), self.ncols)
        if c < self.ncols:
            self.rank += 1
            return True
        return False

    def contains(self, vec):
        """Membership test without inserting."""
        row = list(vec)
        n = self.ncols
        c = _first_nonzero(row, 0, n)
        while c < n:
            piv = self.table.get(c)
            if piv is None:
                return False
            a, b = piv[c], row[c]
            g = gcd(a, b)
            a //= g
            b //= g
            for j in range(c, n):
                row[j] = a * row[j] - b * piv[j]
            _strip(row, c)
            c = _first_nonzero(row, c + 1, n)
        return True


# ---------------------------------------------------------------------------
# GF(p)


def rref_modp(rows, ncols, p):
    """Reduced row echelon form over GF(p); pivot entries are 1."""
    table = {}
    for r in rows:
        row = [x % p for x in r]
        c = _first_nonzero(row, 0, ncols)
        while c < ncols:
            piv = table.get(c)
            if piv is None:
                inv = pow(row[c], p - 2, p)
                table[c] = [x * inv % p for x in row]
                break
            b = row[c]
            for j in range(c, ncols):
                row[j] = (row[j] - b * piv[j]) % p
            c = _first_nonzero(row, c + 1, ncols)
    pivots = sorted(table)
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        r = table[c]
        for c2 in pivots[:i]:
            q = table[c2]
            b = q[c]
            if b:
                for j in range(c, ncols):
                    q[j] = (q[j] - b * r[j]) % p
    return pivots, [table[c] for c in pivots]


def nullspace_modp(rows, ncols, p):
    pivots, red = rref_modp(rows, ncols, p)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            if red[i][f]:
                v[c] = -red[i][f] % p
        out.append(v)
    return out


class SpanBuilderModP:
    def __init__(self, ncols, p):
        self.ncols = ncols
        self.p = p
        self.table = {}
        self.rank = 0

    def add(self, vec):
        p = self.p
        n = self.ncols
        row = [x % p for x in vec]
        c = _first_nonzero(row, 0, n)
        while c < n:
            piv = self.table.get(c)
            if piv is None:
                inv = pow(row[c], p - 2, p)
                self.table[c] = [x * inv % p for x in row]
                self.rank += 1
                return True
            b = row[c]
            for j in range(c, n):
                row[j] = (row[j] - b * piv[j]) % p
            c = _first_nonzero(row, c + 1, n)
        return False
