"""Moving-curve vector spaces, the mu invariant and mu-basis extraction.

A moving curve of bidegree (delta, nu) following a parametrization is a
biform vanishing identically once X is replaced by the parametrization
components.  In any fixed bidegree these form a finite-dimensional
vector space cut out by a linear system: the unknowns are the biform
coefficients, the equations the t-coefficients of the substitution.
"""

from __future__ import annotations

from math import gcd as _int_gcd

from . import _linalg
from .errors import (
    CrossProductFailureError,
    FieldMismatchError,
    NoDecompositionError,
)
from .polycore import (
    QQ,
    BiForm,
    TForm,
    cross_product,
    t_monomials,
    x_monomials,
)

__all__ = [
    "MovingCurve",
    "MuBasis",
    "substitution_matrix",
    "moving_space",
    "mu",
    "mu_basis",
    "decompose_moving_line",
]


class MovingCurve:
    """A biform together with the parametrization it follows."""

    __slots__ = ("form", "param")

    def __init__(self, form, param, check=True):
        if form.field != param.field:
            raise FieldMismatchError("form and parametrization over different fields")
        if check and not form.substitute_param(param).is_zero():
            raise ValueError("the form does not vanish on the parametrization")
        self.form = form
        self.param = param

    @property
    def bidegree(self):
        return self.form.bidegree

    def follows(self, param):
        return self.param == param

    def __eq__(self, other):
        if not isinstance(other, MovingCurve):
            return NotImplemented
        return self.form == other.form and self.param == other.param

    def __hash__(self):
        return hash((self.form, self.param))

    def __repr__(self):
        return f"MovingCurve({self.form})"

    def __str__(self):
        return str(self.form)


class MuBasis:
    """The pair of moving lines freely generating all moving lines."""

    __slots__ = ("mu", "P", "Q", "param", "cross_scalar")

    def __init__(self, mu, P, Q, param, cross_scalar):
        self.mu = mu
        self.P = P
        self.Q = Q
        self.param = param
        self.cross_scalar = cross_scalar

    def __repr__(self):
        return f"MuBasis(mu={self.mu}, P={self.P.form}, Q={self.Q.form})"


def substitution_matrix(phi, delta, nu):
    """Equations cutting out the moving curves of bidegree (delta, nu).

    Rows are the t-coefficients of the substituted biform, columns the
    unknown coefficients in the ``BiForm.coefficient_vector`` order.
    Rational entries are scaled to integers row by row.
    """
    field = phi.field
    xs = x_monomials(nu)
    powers = phi.monomial_powers(nu)
    nrows = delta + nu * phi.d + 1
    ncols = (delta + 1) * len(xs)
    rows = [[field.zero] * ncols for _ in range(nrows)]
    for i in range(delta + 1):
        for k, m in enumerate(xs):
            col = i * len(xs) + k
            prod = powers[m]
            for j, c in enumerate(prod.coeffs):
                if c:
                    rows[i + j][col] = c
    if field.char:
        return [[c.v for c in row] for row in rows], ncols
    return _linalg.integer_rows(rows), ncols


def kernel_vectors(phi, delta, nu):
    """Canonical integer basis vectors of the moving-curve space."""
    rows, ncols = substitution_matrix(phi, delta, nu)
    if phi.field.char:
        return _linalg.nullspace_modp(rows, ncols, phi.field.char)
    return _linalg.nullspace(rows, ncols)


def moving_space(phi, delta, nu):
    """Basis of the moving curves of bidegree (delta, nu) following phi.

    Deterministic: the kernel basis comes from the reduced echelon form
    of the substitution system over the fixed monomial order.
    """
    if delta < 0 or nu < 0:
        raise ValueError("bidegree components must be nonnegative")
    field = phi.field
    out = []
    for vec in kernel_vectors(phi, delta, nu):
        form = BiForm.from_coefficient_vector(
            [field.of(x) for x in vec], delta, nu, field
        )
        out.append(MovingCurve(form, phi))
    return out


def mu(phi):
    """Smallest t-degree carrying a moving line; always <= d/2."""
    for delta in range(phi.d // 2 + 1):
        rows, ncols = substitution_matrix(phi, delta, 1)
        if phi.field.char:
            pivots, _ = _linalg.rref_modp(rows, ncols, phi.field.char)
        else:
            pivots, _ = _linalg.rref(rows, ncols)
        if len(pivots) < ncols:
            return delta
    raise CrossProductFailureError("no moving line found up to d/2")


def _shift_t(vec, delta_from, nxs, by):
    """Multiply a coefficient vector by t0 (by=0) or t1 (by=1)."""
    out = [0] * ((delta_from + 2) * nxs)
    off = 0 if by == 0 else nxs
    for i in range((delta_from + 1) * nxs):
        if vec[i]:
            out[i + off] = vec[i]
    return out


def _x_shift_maps(nu_from):
    """Index maps sending x_monomials(nu_from) into x_monomials(nu_from+1)."""
    src = x_monomials(nu_from)
    dst = {m: k for k, m in enumerate(x_monomials(nu_from + 1))}
    maps = []
    for var in range(3):
        e = [0, 0, 0]
        e[var] = 1
        maps.append(
            [dst[(m[0] + e[0], m[1] + e[1], m[2] + e[2])] for m in src]
        )
    return maps


def _shift_x(vec, delta, nu_from, xmap):
    nsrc = len(x_monomials(nu_from))
    ndst = nsrc + nu_from + 2  # C(nu+3,2) - C(nu+2,2) = nu+2 more columns
    out = [0] * ((delta + 1) * ndst)
    for i in range(delta + 1):
        base_src = i * nsrc
        base_dst = i * ndst
        for k in range(nsrc):
            c = vec[base_src + k]
            if c:
                out[base_dst + xmap[k]] = c
    return out


def _reduce_mod(pivots, rows, vec):
    """Fraction-free reduction of an integer vector against echelon rows."""
    v = list(vec)
    for i, c in enumerate(pivots):
        if v[c]:
            a, b = rows[i][c], v[c]
            g = _int_gcd(a, b)
            a //= g
            b //= g
            row = rows[i]
            v = [a * x - b * y for x, y in zip(v, row)]
    g = 0
    for x in v:
        g = _int_gcd(g, x)
        if g == 1:
            break
    if g > 1:
        v = [x // g for x in v]
    for x in v:
        if x:
            if x < 0:
                v = [-y for y in v]
            break
    return v


def _scalar_ratio(forms, targets, field):
    """The scalar c with forms == c * targets, or None."""
    c = None
    for f, t in zip(forms, targets):
        if f.is_zero() != t.is_zero():
            return None
        if f.is_zero():
            continue
        for x, y in zip(f.coeffs, t.coeffs):
            if (not x) != (not y):
                return None
            if x and c is None:
                c = x / y
    if c is None:
        return None
    for f, t in zip(forms, targets):
        if f != t.scale(c):
            return None
    return c


def mu_basis(phi):
    """A mu-basis (P, Q) of t-degrees mu and d - mu.

    P is the first reduced-echelon basis element in degree mu; Q is the
    first degree-(d - mu) echelon element that survives reduction
    modulo the t-monomial multiples of P.  The cross product of the two
    coefficient triples is checked to be a scalar multiple of the
    parametrization before returning.
    """
    m = mu(phi)
    d = phi.d
    p_space = moving_space(phi, m, 1)
    P = p_space[0]
    pvec_field = P.form.coefficient_vector()
    q_candidates = p_space if d - m == m else moving_space(phi, d - m, 1)
    # span of the t-monomial multiples of P inside degree d - mu
    pvec = [int(x) for x in _linalg.integer_rows([pvec_field])[0]]
    mult_rows = []
    for e in range(d - 2 * m + 1):
        v = pvec
        for step in range(d - 2 * m):
            v = _shift_t(v, m + step, 3, 1 if step < e else 0)
        mult_rows.append(v)
    if phi.field.char:
        p = phi.field.char
        pivots, red = _linalg.rref_modp(
            [[x % p for x in r] for r in mult_rows], (d - m + 1) * 3, p
        )
    else:
        pivots, red = _linalg.rref(mult_rows, (d - m + 1) * 3)
    Q = None
    for cand in q_candidates:
        cvec = _linalg.integer_rows([cand.form.coefficient_vector()])[0]
        if phi.field.char:
            reduced = _reduce_modp(pivots, red, cvec, phi.field.char)
        else:
            reduced = _reduce_mod(pivots, red, cvec)
        if any(reduced):
            form = BiForm.from_coefficient_vector(
                [phi.field.of(x) for x in reduced], d - m, 1, phi.field
            )
            Q = MovingCurve(form, phi)
            break
    if Q is None:
        raise CrossProductFailureError("no independent moving line in degree d - mu")
    cross = cross_product(P.form.x_coefficient_triples(), Q.form.x_coefficient_triples())
    c = _scalar_ratio(cross, phi.u, phi.field)
    if c is None or not c:
        raise CrossProductFailureError(
            "mu-basis cross product is not proportional to the parametrization"
        )
    return MuBasis(m, P, Q, phi, c)


def _reduce_modp(pivots, rows, vec, p):
    v = [x % p for x in vec]
    for i, c in enumerate(pivots):
        if v[c]:
            b = v[c]
            row = rows[i]
            v = [(x - b * y) % p for x, y in zip(v, row)]
    for x in v:
        if x:
            inv = pow(x, p - 2, p)
            v = [y * inv % p for y in v]
            break
    return v


def decompose_moving_line(line, basis):
    """Write a moving line as p * P + q * Q over the mu-basis.

    Returns the unique homogeneous pair (p, q); degrees are
    delta - mu and delta - (d - mu), with q = 0 below the threshold.
    """
    if isinstance(line, MovingCurve):
        if line.param != basis.param:
            raise NoDecompositionError("line follows a different parametrization")
        form = line.form
    else:
        form = line
        if not form.substitute_param(basis.param).is_zero():
            raise NoDecompositionError("the form is not a moving line of this map")
    phi = basis.param
    d = phi.d
    m = basis.mu
    delta = form.tdeg
    if form.xdeg != 1:
        raise NoDecompositionError("only X-degree 1 forms decompose over a mu-basis")
    if delta < m:
        raise NoDecompositionError(f"t-degree {delta} is below mu = {m}")
    field = phi.field
    ncols_p = delta - m + 1
    ncols_q = max(delta - (d - m) + 1, 0)
    # columns of the linear system: t-monomial shifts of P and Q
    cols = []
    for e in range(ncols_p):
        shifted = basis.P.form * TForm.monomial(delta - m, e, 1, field)
        cols.append(shifted.coefficient_vector())
    for e in range(ncols_q):
        shifted = basis.Q.form * TForm.monomial(delta - d + m, e, 1, field)
        cols.append(shifted.coefficient_vector())
    target = form.coefficient_vector()
    nrows = (delta + 1) * 3
    aug = [[cols[j][r] for j in range(len(cols))] + [target[r]] for r in range(nrows)]
    if field.char:
        p = field.char
        pivots, red = _linalg.rref_modp([[c.v for c in row] for row in aug], len(cols) + 1, p)
    else:
        pivots, red = _linalg.rref(_linalg.integer_rows(aug), len(cols) + 1)
    if len(cols) in pivots:
        raise NoDecompositionError("inconsistent decomposition system")
    if len(pivots) != len(cols):
        raise NoDecompositionError("decomposition is not unique")
    sol = [field.zero] * len(cols)
    for i, c in enumerate(pivots):
        sol[c] = field.of(red[i][len(cols)]) / field.of(red[i][c])
    p_form = TForm(delta - m, sol[:ncols_p], field)
    if ncols_q:
        q_form = TForm(delta - d + m, sol[ncols_p:], field)
    else:
        q_form = TForm.zero(0, field)
    # exactness double-check; unreachable for true moving lines
    recombined = p_form * basis.P.form + (q_form * basis.Q.form if ncols_q else BiForm.zero(delta, 1, field))
    if recombined != form:
        raise NoDecompositionError("decomposition check failed")
    return p_form, q_form


def _one_x(field):
    from .polycore import XForm

    return XForm.constant(1, field)
