# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of pyref's rational kernels, on top of GMP integers.

Outputs are bit-identical to the pure-Python implementation: canonical
integer RREF (primitive rows, positive pivots) and canonical primitive
kernel vectors.  Only the rational/integer path lives here; GF(p) stays
in pure Python.
"""

from cpython.long cimport PyLong_AsLongAndOverflow
from cpython.mem cimport PyMem_Malloc, PyMem_Free

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    ctypedef long mp_limb_t
    void mpz_init(mpz_t)
    void mpz_clear(mpz_t)
    void mpz_set(mpz_t, const mpz_t)
    void mpz_set_si(mpz_t, long)
    long mpz_get_si(const mpz_t)
    int mpz_fits_slong_p(const mpz_t)
    int mpz_sgn(const mpz_t)
    int mpz_cmp_ui(const mpz_t, unsigned long)
    void mpz_mul(mpz_t, const mpz_t, const mpz_t)
    void mpz_sub(mpz_t, const mpz_t, const mpz_t)
    void mpz_neg(mpz_t, const mpz_t)
    void mpz_gcd(mpz_t, const mpz_t, const mpz_t)
    void mpz_lcm(mpz_t, const mpz_t, const mpz_t)
    void mpz_divexact(mpz_t, const mpz_t, const mpz_t)
    void mpz_abs(mpz_t, const mpz_t)
    char* mpz_get_str(char*, int, const mpz_t)
    int mpz_set_str(mpz_t, const char*, int)
    size_t mpz_sizeinbase(const mpz_t, int)


cdef void py_to_mpz(object v, mpz_t out):
    cdef int overflow = 0
    cdef long sv = PyLong_AsLongAndOverflow(v, &overflow)
    if not overflow:
        mpz_set_si(out, sv)
        return
    data = format(v, "x").encode("ascii")
    mpz_set_str(out, <const char*> data, 16)


cdef object mpz_to_py(mpz_t x):
    if mpz_fits_slong_p(x):
        return mpz_get_si(x)
    cdef size_t size = mpz_sizeinbase(x, 16) + 3
    cdef char* buf = <char*> PyMem_Malloc(size)
    if buf == NULL:
        raise MemoryError()
    mpz_get_str(buf, 16, x)
    try:
        return int((<bytes> buf).decode("ascii"), 16)
    finally:
        PyMem_Free(buf)


cdef mpz_t* row_alloc(Py_ssize_t n) except NULL:
    cdef mpz_t* r = <mpz_t*> PyMem_Malloc(n * sizeof(mpz_t))
    if r == NULL:
        raise MemoryError()
    cdef Py_ssize_t j
    for j in range(n):
        mpz_init(r[j])
    return r


cdef void row_release(mpz_t* r, Py_ssize_t n):
    cdef Py_ssize_t j
    if r == NULL:
        return
    for j in range(n):
        mpz_clear(r[j])
    PyMem_Free(r)


cdef Py_ssize_t row_first_nonzero(mpz_t* r, Py_ssize_t start, Py_ssize_t n):
    cdef Py_ssize_t j
    for j in range(start, n):
        if mpz_sgn(r[j]) != 0:
            return j
    return n


cdef void row_strip(mpz_t* r, Py_ssize_t start, Py_ssize_t n, mpz_t g):
    # divide the row by its content; entries before start are zero
    mpz_set_si(g, 0)
    cdef Py_ssize_t j
    for j in range(start, n):
        if mpz_sgn(r[j]) != 0:
            mpz_gcd(g, g, r[j])
            if mpz_cmp_ui(g, 1) == 0:
                return
    if mpz_sgn(g) == 0 or mpz_cmp_ui(g, 1) == 0:
        return
    for j in range(start, n):
        if mpz_sgn(r[j]) != 0:
            mpz_divexact(r[j], r[j], g)


cdef void row_negate(mpz_t* r, Py_ssize_t start, Py_ssize_t n):
    cdef Py_ssize_t j
    for j in range(start, n):
        mpz_neg(r[j], r[j])


cdef struct Scratch:
    mpz_t a
    mpz_t b
    mpz_t g
    mpz_t tmp


cdef void scratch_init(Scratch* s):
    mpz_init(s.a)
    mpz_init(s.b)
    mpz_init(s.g)
    mpz_init(s.tmp)


cdef void scratch_clear(Scratch* s):
    mpz_clear(s.a)
    mpz_clear(s.b)
    mpz_clear(s.g)
    mpz_clear(s.tmp)


cdef void row_combine(mpz_t* dst, mpz_t* piv, Py_ssize_t c, Py_ssize_t n,
                      Scratch* s):
    # dst = (piv[c]/g)*dst - (dst[c]/g)*piv on columns >= c, g = gcd
    mpz_gcd(s.g, piv[c], dst[c])
    mpz_divexact(s.a, piv[c], s.g)
    mpz_divexact(s.b, dst[c], s.g)
    cdef Py_ssize_t j
    for j in range(c, n):
        mpz_mul(dst[j], dst[j], s.a)
        mpz_mul(s.tmp, piv[j], s.b)
        mpz_sub(dst[j], dst[j], s.tmp)


cdef class _Echelon:
    """Echelon table: one optional pivot row per column."""

    cdef mpz_t** rows          # indexed by pivot column, NULL when absent
    cdef Py_ssize_t ncols
    cdef public Py_ssize_t rank
    cdef Scratch s

    def __cinit__(self, Py_ssize_t ncols):
        self.ncols = ncols
        self.rank = 0
        self.rows = <mpz_t**> PyMem_Malloc(max(ncols, 1) * sizeof(mpz_t*))
        if self.rows == NULL:
            raise MemoryError()
        cdef Py_ssize_t j
        for j in range(ncols):
            self.rows[j] = NULL
        scratch_init(&self.s)

    def __dealloc__(self):
        cdef Py_ssize_t j
        if self.rows != NULL:
            for j in range(self.ncols):
                row_release(self.rows[j], self.ncols)
            PyMem_Free(self.rows)
        scratch_clear(&self.s)

    cdef Py_ssize_t insert(self, mpz_t* row):
        """Consume ``row``; return its pivot column or ncols if zero."""
        cdef Py_ssize_t n = self.ncols
        cdef Py_ssize_t c = row_first_nonzero(row, 0, n)
        while c < n:
            if self.rows[c] == NULL:
                row_strip(row, c, n, self.s.g)
                if mpz_sgn(row[c]) < 0:
                    row_negate(row, c, n)
                self.rows[c] = row
                self.rank += 1
                return c
            row_combine(row, self.rows[c], c, n, &self.s)
            row_strip(row, c + 1, n, self.s.g)
            c = row_first_nonzero(row, c + 1, n)
        row_release(row, n)
        return n

    cdef mpz_t* load(self, object vec) except NULL:
        cdef Py_ssize_t n = self.ncols
        if len(vec) != n:
            raise ValueError("vector length mismatch")
        cdef mpz_t* row = row_alloc(n)
        cdef Py_ssize_t j = 0
        for item in vec:
            py_to_mpz(item, row[j])
            j += 1
        return row

    cdef void back_reduce(self):
        cdef Py_ssize_t n = self.ncols
        cdef Py_ssize_t c, c2
        cdef mpz_t* r
        cdef mpz_t* q
        for c in range(n - 1, -1, -1):
            r = self.rows[c]
            if r == NULL:
                continue
            for c2 in range(c):
                q = self.rows[c2]
                if q == NULL or mpz_sgn(q[c]) == 0:
                    continue
                row_combine_full(q, r, c2, c, n, &self.s)
                row_strip(q, c2, n, self.s.g)
        for c in range(n):
            r = self.rows[c]
            if r != NULL and mpz_sgn(r[c]) < 0:
                row_negate(r, c, n)


cdef void row_combine_full(mpz_t* dst, mpz_t* piv, Py_ssize_t dst_lead,
                           Py_ssize_t c, Py_ssize_t n, Scratch* s):
    # dst = (piv[c]/g)*dst - (dst[c]/g)*piv, scaling dst from its lead on;
    # piv is zero before column c
    mpz_gcd(s.g, piv[c], dst[c])
    mpz_divexact(s.a, piv[c], s.g)
    mpz_divexact(s.b, dst[c], s.g)
    cdef Py_ssize_t j
    for j in range(dst_lead, c):
        mpz_mul(dst[j], dst[j], s.a)
    for j in range(c, n):
        mpz_mul(dst[j], dst[j], s.a)
        mpz_mul(s.tmp, piv[j], s.b)
        mpz_sub(dst[j], dst[j], s.tmp)


cdef _Echelon _build(object rows, Py_ssize_t ncols):
    cdef _Echelon ech = _Echelon(ncols)
    for vec in rows:
        ech.insert(ech.load(vec))
    return ech


def rref(rows, Py_ssize_t ncols):
    """Canonical integer reduced row echelon form (see pyref.rref)."""
    cdef _Echelon ech = _build(rows, ncols)
    ech.back_reduce()
    cdef list pivots = []
    cdef list out = []
    cdef Py_ssize_t c, j
    cdef mpz_t* r
    for c in range(ncols):
        r = ech.rows[c]
        if r == NULL:
            continue
        pivots.append(c)
        out.append([mpz_to_py(r[j]) for j in range(ncols)])
    return pivots, out


def nullspace(rows, Py_ssize_t ncols):
    """Canonical primitive kernel basis (see pyref.nullspace)."""
    cdef _Echelon ech = _build(rows, ncols)
    ech.back_reduce()
    cdef list pivots = []
    cdef Py_ssize_t c
    for c in range(ncols):
        if ech.rows[c] != NULL:
            pivots.append(c)
    cdef list out = []
    cdef mpz_t scale, coef
    cdef mpz_t* v
    cdef mpz_t* r
    cdef Py_ssize_t f, j
    cdef Py_ssize_t npiv = len(pivots)
    cdef Py_ssize_t pc
    mpz_init(scale)
    mpz_init(coef)
    v = row_alloc(ncols)
    try:
        for f in range(ncols):
            if ech.rows[f] != NULL:
                continue
            mpz_set_si(scale, 1)
            for pc in pivots:
                r = ech.rows[pc]
                if mpz_sgn(r[f]) != 0:
                    mpz_lcm(scale, scale, r[pc])
            for j in range(ncols):
                mpz_set_si(v[j], 0)
            mpz_set(v[f], scale)
            for pc in pivots:
                r = ech.rows[pc]
                if mpz_sgn(r[f]) != 0:
                    mpz_divexact(coef, scale, r[pc])
                    mpz_mul(coef, coef, r[f])
                    mpz_neg(v[pc], coef)
            row_strip(v, 0, ncols, ech.s.g)
            out.append([mpz_to_py(v[j]) for j in range(ncols)])
    finally:
        row_release(v, ncols)
        mpz_clear(scale)
        mpz_clear(coef)
    return out


cdef class SpanBuilder:
    """Incremental rank computation by echelon insertion."""

    cdef _Echelon ech

    def __init__(self, Py_ssize_t ncols):
        self.ech = _Echelon(ncols)

    @property
    def rank(self):
        return self.ech.rank

    def add(self, vec):
        """Insert a vector; returns True when it enlarges the span."""
        return self.ech.insert(self.ech.load(vec)) < self.ech.ncols

    def contains(self, vec):
        """Membership test without inserting."""
        cdef Py_ssize_t n = self.ech.ncols
        cdef mpz_t* row = self.ech.load(vec)
        cdef Py_ssize_t c = row_first_nonzero(row, 0, n)
        while c < n:
            if self.ech.rows[c] == NULL:
                row_release(row, n)
                return False
            row_combine(row, self.ech.rows[c], c, n, &self.ech.s)
            row_strip(row, c + 1, n, self.ech.s.g)
            c = row_first_nonzero(row, c + 1, n)
        row_release(row, n)
        return True
