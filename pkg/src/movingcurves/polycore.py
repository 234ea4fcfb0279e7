"""Exact scalars and the polynomial types everything else is built on.

Three kinds of forms appear throughout:

* ``TForm``   -- homogeneous in the parameter variables t0, t1 (dense).
* ``XForm``   -- homogeneous in the plane coordinates X0, X1, X2 (sparse).
* ``BiForm``  -- bihomogeneous in both groups; bidegree is always the
  ordered pair (t-degree, X-degree).

All values are immutable after construction and every operation is a
pure function, so everything here is safe to share between threads.
Arithmetic is exact: rationals by default, or a prime residue field
(p > 2) for randomized cross-checks.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import (
    DegreeMismatchError,
    FieldMismatchError,
    InvalidParametrizationError,
    NotAPowerError,
    NotDivisibleError,
)

__all__ = [
    "QQ",
    "PrimeField",
    "TForm",
    "XForm",
    "BiForm",
    "Parametrization",
    "T0",
    "T1",
    "X0",
    "X1",
    "X2",
    "t_monomials",
    "x_monomials",
    "cross_product",
    "homogenize",
    "gcd_t",
    "kth_root",
    "exact_divide",
]


# ---------------------------------------------------------------------------
# scalar fields


def _is_probable_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24 with these bases
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RationalField:
    """The rational numbers; elements are ``fractions.Fraction``."""

    char = 0
    name = "rational"

    zero = Fraction(0)
    one = Fraction(1)

    def of(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into the rational field")

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


class ModInt:
    """Residue in GF(p).  Supports the arithmetic operators directly."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise FieldMismatchError("mixed moduli")
            return other
        if isinstance(other, int):
            return ModInt(other, self.p)
        if isinstance(other, Fraction):
            return ModInt(other.numerator, self.p) / ModInt(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModInt(self.v + other.v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModInt(self.v - other.v, self.p)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModInt(other.v - self.v, self.p)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return ModInt(self.v * other.v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.v % other.p == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return ModInt(self.v * pow(other.v, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        other = self._lift(other)
        return other / self

    def __pow__(self, k):
        return ModInt(pow(self.v, k, self.p), self.p)

    def __neg__(self):
        return ModInt(-self.v, self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"ModInt({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class PrimeField:
    """GF(p) for an odd prime p.  Characteristic 2 is rejected outright."""

    name = "prime"

    def __init__(self, p):
        if p == 2:
            raise ValueError("characteristic 2 is not supported")
        if not _is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.char = p
        self.zero = ModInt(0, p)
        self.one = ModInt(1, p)

    def of(self, value):
        if isinstance(value, ModInt):
            if value.p != self.char:
                raise FieldMismatchError("mixed moduli")
            return value
        if isinstance(value, int):
            return ModInt(value, self.char)
        if isinstance(value, Fraction):
            return ModInt(value.numerator, self.char) / ModInt(
                value.denominator, self.char
            )
        raise TypeError(f"cannot coerce {value!r} into GF({self.char})")

    def __repr__(self):
        return f"GF({self.char})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash(("GF", self.char))


def _same_field(a, b):
    if a.field != b.field:
        raise FieldMismatchError("operands live over different scalar fields")
    return a.field


def _render_coeff(c, lead, with_monomial):
    """Format one coefficient for the canonical text rendering."""
    neg = False
    if isinstance(c, Fraction):
        neg = c < 0
        mag = -c if neg else c
        body = str(mag)
    else:  # ModInt renders as its least nonnegative residue
        body = str(c)
    sign = "-" if neg else "+"
    if with_monomial and body == "1":
        body = ""
    if lead:
        return ("-" if neg else "") + body
    return f" {sign} {body}" if body else f" {sign} "


def _join_term(coeff_text, mon_text):
    if not mon_text:
        return coeff_text if coeff_text.strip(" +-") else coeff_text + "1"
    if coeff_text.endswith(" ") or coeff_text in ("", "-"):
        return coeff_text + mon_text
    return coeff_text + "*" + mon_text


def _mon_text(names, exps):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# monomial enumeration (shared by the linear-algebra layers)


def t_monomials(delta):
    """Exponent pairs of degree delta, t0-power descending."""
    return [(delta - i, i) for i in range(delta + 1)]


def x_monomials(nu):
    """Exponent triples of degree nu in graded-lex order, X0 > X1 > X2."""
    out = []
    for a0 in range(nu, -1, -1):
        for a1 in range(nu - a0, -1, -1):
            out.append((a0, a1, nu - a0 - a1))
    return out


def _xkey(mon):
    # graded-lex sort key, larger = later; total degree first
    return (mon[0] + mon[1] + mon[2], mon)


# ---------------------------------------------------------------------------
# TForm


class TForm:
    """Homogeneous polynomial in t0, t1, stored densely.

    ``coeffs[i]`` multiplies ``t0^(degree-i) * t1^i``.  The zero form
    keeps its degree tag so graded linear algebra stays well typed.
    """

    __slots__ = ("degree", "coeffs", "field")

    def __init__(self, degree, coeffs, field=QQ):
        if degree < 0:
            raise ValueError("negative degree")
        coeffs = tuple(field.of(c) for c in coeffs)
        if len(coeffs) != degree + 1:
            raise ValueError("coefficient vector has the wrong length")
        self.degree = degree
        self.coeffs = coeffs
        self.field = field

    @classmethod
    def zero(cls, degree, field=QQ):
        return cls(degree, (0,) * (degree + 1), field)

    @classmethod
    def monomial(cls, degree, i, c=1, field=QQ):
        coeffs = [0] * (degree + 1)
        coeffs[i] = c
        return cls(degree, coeffs, field)

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, TForm):
            return NotImplemented
        if self.field != other.field:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_zero():
            return hash(("TForm", 0))
        return hash(("TForm", self.degree, self.coeffs))

    def __neg__(self):
        return TForm(self.degree, tuple(-c for c in self.coeffs), self.field)

    def __add__(self, other):
        if not isinstance(other, TForm):
            return NotImplemented
        _same_field(self, other)
        if self.is_zero() and self.degree != other.degree:
            return other
        if other.is_zero() and self.degree != other.degree:
            return self
        if self.degree != other.degree:
            raise DegreeMismatchError(
                f"cannot add t-forms of degrees {self.degree} and {other.degree}"
            )
        return TForm(
            self.degree,
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
            self.field,
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TForm):
            _same_field(self, other)
            deg = self.degree + other.degree
            out = [self.field.zero] * (deg + 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
            return TForm(deg, out, self.field)
        if isinstance(other, XForm):
            return BiForm.product(self, other)
        if isinstance(other, (int, Fraction, ModInt)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ModInt)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        c = self.field.of(c)
        return TForm(self.degree, tuple(c * a for a in self.coeffs), self.field)

    def partial(self, var):
        """Partial derivative with respect to t0 (var=0) or t1 (var=1)."""
        if self.degree == 0:
            return TForm.zero(0, self.field)
        d = self.degree
        if var == 0:
            out = [(d - i) * self.coeffs[i] for i in range(d)]
        else:
            out = [(i + 1) * self.coeffs[i + 1] for i in range(d)]
        return TForm(d - 1, out, self.field)

    def evaluate(self, t0, t1):
        t0 = self.field.of(t0)
        t1 = self.field.of(t1)
        total = self.field.zero
        p0 = self.field.one
        # powers of t1 grow with the index, powers of t0 shrink
        powers1 = [self.field.one]
        for _ in range(self.degree):
            powers1.append(powers1[-1] * t1)
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c:
                total = total + c * p0 * powers1[i]
            p0 = p0 * t0
        return total

    def compose_linear(self, a, b, c, d):
        """Substitute t0 -> a*t0 + b*t1, t1 -> c*t0 + d*t1."""
        f = self.field
        l0 = TForm(1, (a, b), f)
        l1 = TForm(1, (c, d), f)
        out = TForm.zero(self.degree, f)
        p0 = TForm(0, (1,), f)
        pow0 = [p0]
        for _ in range(self.degree):
            pow0.append(pow0[-1] * l0)
        p1 = TForm(0, (1,), f)
        for i in range(self.degree + 1):
            coef = self.coeffs[i]
            if coef:
                out = out + (pow0[self.degree - i] * p1).scale(coef)
            p1 = p1 * l1
        return out

    def support(self):
        return [i for i, c in enumerate(self.coeffs) if c]

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = ""
        lead = True
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = _mon_text(("t0", "t1"), (self.degree - i, i))
            parts += _join_term(_render_coeff(c, lead, bool(mon)), mon)
            lead = False
        return parts

    def __repr__(self):
        return f"TForm({self})"


T0 = TForm(1, (1, 0))
T1 = TForm(1, (0, 1))


# ---------------------------------------------------------------------------
# XForm


class XForm:
    """Homogeneous polynomial in X0, X1, X2, stored as a sparse map.

    Keys are exponent triples summing to the degree; zero coefficients
    are never stored.
    """

    __slots__ = ("degree", "terms", "field")

    def __init__(self, degree, terms, field=QQ):
        if degree < 0:
            raise ValueError("negative degree")
        clean = {}
        for mon, c in terms.items():
            c = field.of(c)
            if not c:
                continue
            if sum(mon) != degree:
                raise DegreeMismatchError(
                    f"monomial {mon} does not have degree {degree}"
                )
            clean[tuple(mon)] = c
        self.degree = degree
        self.terms = clean
        self.field = field

    @classmethod
    def zero(cls, degree=0, field=QQ):
        return cls(degree, {}, field)

    @classmethod
    def constant(cls, c, field=QQ):
        return cls(0, {(0, 0, 0): c}, field)

    @classmethod
    def variable(cls, i, field=QQ):
        mon = [0, 0, 0]
        mon[i] = 1
        return cls(1, {tuple(mon): 1}, field)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or self.terms.keys() == {(0, 0, 0)}

    def constant_value(self):
        return self.terms.get((0, 0, 0), self.field.zero)

    def __eq__(self, other):
        if not isinstance(other, XForm):
            return NotImplemented
        if self.field != other.field:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        if not self.terms:
            return hash(("XForm", 0))
        return hash(("XForm", self.degree, frozenset(self.terms.items())))

    def __neg__(self):
        return XForm(self.degree, {m: -c for m, c in self.terms.items()}, self.field)

    def __add__(self, other):
        if not isinstance(other, XForm):
            return NotImplemented
        _same_field(self, other)
        if self.is_zero() and self.degree != other.degree:
            return other
        if other.is_zero() and self.degree != other.degree:
            return self
        if self.degree != other.degree:
            raise DegreeMismatchError(
                f"cannot add X-forms of degrees {self.degree} and {other.degree}"
            )
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, self.field.zero) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return XForm(self.degree, out, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, XForm):
            _same_field(self, other)
            out = {}
            zero = self.field.zero
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                    s = out.get(m, zero) + c1 * c2
                    if s:
                        out[m] = s
                    else:
                        out.pop(m, None)
            return XForm(self.degree + other.degree, out, self.field)
        if isinstance(other, TForm):
            return BiForm.product(other, self)
        if isinstance(other, (int, Fraction, ModInt)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ModInt)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        result = XForm.constant(1, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        c = self.field.of(c)
        if not c:
            return XForm.zero(self.degree, self.field)
        return XForm(self.degree, {m: c * a for m, a in self.terms.items()}, self.field)

    def partial(self, i):
        out = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            n = list(m)
            n[i] -= 1
            out[tuple(n)] = c * m[i]
        return XForm(max(self.degree - 1, 0), out, self.field)

    def leading(self):
        """(monomial, coefficient) at the graded-lex-greatest monomial."""
        if not self.terms:
            raise ValueError("zero form has no leading term")
        m = max(self.terms, key=_xkey)
        return m, self.terms[m]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _xkey(kv[0]), reverse=True)

    def canonical_factor(self):
        """Return (canonical form, c) with self = c * canonical form.

        Canonical means: integral coefficients with content 1 and a
        positive leading coefficient (rational mode), or monic (prime
        mode).  The zero form is its own canonical form with c = 1.
        """
        if not self.terms:
            return self, self.field.one
        if self.field.char:
            _, lc = self.leading()
            inv = self.field.one / lc
            return self.scale(inv), lc
        import math

        den = 1
        for c in self.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator * (den // c.denominator)))
        factor = Fraction(num, den)
        _, lc = self.leading()
        if lc < 0:
            factor = -factor
        return self.scale(1 / factor), factor

    def canonical(self):
        return self.canonical_factor()[0]

    def evaluate_tforms(self, forms):
        """Substitute X_i -> forms[i] (TForms of one common degree)."""
        f = self.field
        if not self.terms:
            return TForm.zero(0, f)
        base = forms[0].degree
        out = TForm.zero(self.degree * base, f)
        for m, c in self.terms.items():
            prod = TForm(0, (1,), f)
            for i in range(3):
                for _ in range(m[i]):
                    prod = prod * forms[i]
            out = out + prod.scale(c)
        return out

    def max_coeff_bits(self):
        bits = 0
        for c in self.terms.values():
            if isinstance(c, Fraction):
                bits = max(bits, c.numerator.bit_length(), c.denominator.bit_length())
            else:
                bits = max(bits, c.v.bit_length())
        return bits

    def __str__(self):
        if not self.terms:
            return "0"
        parts = ""
        lead = True
        for m, c in self.sorted_terms():
            mon = _mon_text(("X0", "X1", "X2"), m)
            parts += _join_term(_render_coeff(c, lead, bool(mon)), mon)
            lead = False
        return parts

    def __repr__(self):
        return f"XForm({self})"


X0 = XForm.variable(0)
X1 = XForm.variable(1)
X2 = XForm.variable(2)


# ---------------------------------------------------------------------------
# BiForm


class BiForm:
    """Bihomogeneous form in (t0, t1) and (X0, X1, X2).

    Bidegree is the pair (tdeg, xdeg) = (t-degree, X-degree).  Terms map
    ``(i, xmon)`` to a coefficient, where ``i`` is the t1-exponent (so
    the t-part is ``t0^(tdeg-i) * t1^i``) and ``xmon`` an exponent
    triple of degree xdeg.
    """

    __slots__ = ("tdeg", "xdeg", "terms", "field")

    def __init__(self, tdeg, xdeg, terms, field=QQ):
        if tdeg < 0 or xdeg < 0:
            raise ValueError("negative bidegree")
        clean = {}
        for (i, xmon), c in terms.items():
            c = field.of(c)
            if not c:
                continue
            if not 0 <= i <= tdeg or sum(xmon) != xdeg:
                raise DegreeMismatchError(f"term ({i}, {xmon}) violates the bidegree")
            clean[(i, tuple(xmon))] = c
        self.tdeg = tdeg
        self.xdeg = xdeg
        self.terms = clean
        self.field = field

    @property
    def bidegree(self):
        return (self.tdeg, self.xdeg)

    @classmethod
    def zero(cls, tdeg, xdeg, field=QQ):
        return cls(tdeg, xdeg, {}, field)

    @classmethod
    def product(cls, tform, xform):
        _same_field(tform, xform)
        terms = {}
        for i, a in enumerate(tform.coeffs):
            if not a:
                continue
            for m, b in xform.terms.items():
                terms[(i, m)] = a * b
        return cls(tform.degree, xform.degree, terms, tform.field)

    @classmethod
    def moving_line(cls, v0, v1, v2):
        """v0*X0 + v1*X1 + v2*X2 for TForms v0, v1, v2 of equal degree."""
        parts = [
            cls.product(v, XForm.variable(i, v.field)) for i, v in ((0, v0), (1, v1), (2, v2))
        ]
        return parts[0] + parts[1] + parts[2]

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        if self.field != other.field:
            return False
        if not self.terms and not other.terms:
            return True
        return self.bidegree == other.bidegree and self.terms == other.terms

    def __hash__(self):
        if not self.terms:
            return hash(("BiForm", 0))
        return hash(("BiForm", self.bidegree, frozenset(self.terms.items())))

    def __neg__(self):
        return BiForm(
            self.tdeg, self.xdeg, {k: -c for k, c in self.terms.items()}, self.field
        )

    def __add__(self, other):
        if not isinstance(other, BiForm):
            return NotImplemented
        _same_field(self, other)
        if self.is_zero() and self.bidegree != other.bidegree:
            return other
        if other.is_zero() and self.bidegree != other.bidegree:
            return self
        if self.bidegree != other.bidegree:
            raise DegreeMismatchError(
                f"cannot add bidegrees {self.bidegree} and {other.bidegree}"
            )
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, self.field.zero) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BiForm(self.tdeg, self.xdeg, out, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BiForm):
            _same_field(self, other)
            out = {}
            zero = self.field.zero
            for (i1, m1), c1 in self.terms.items():
                for (i2, m2), c2 in other.terms.items():
                    k = (i1 + i2, (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]))
                    s = out.get(k, zero) + c1 * c2
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
            return BiForm(
                self.tdeg + other.tdeg, self.xdeg + other.xdeg, out, self.field
            )
        if isinstance(other, TForm):
            return self * BiForm.product(other, XForm.constant(1, self.field))
        if isinstance(other, XForm):
            return self * BiForm.product(TForm(0, (1,), self.field), other)
        if isinstance(other, (int, Fraction, ModInt)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ModInt, TForm, XForm)):
            return self * other
        return NotImplemented

    def scale(self, c):
        c = self.field.of(c)
        if not c:
            return BiForm.zero(self.tdeg, self.xdeg, self.field)
        return BiForm(
            self.tdeg, self.xdeg, {k: c * a for k, a in self.terms.items()}, self.field
        )

    def partial_t(self, var):
        out = {}
        for (i, m), c in self.terms.items():
            e = self.tdeg - i if var == 0 else i
            if not e:
                continue
            j = i if var == 0 else i - 1
            out[(j, m)] = c * e
        return BiForm(max(self.tdeg - 1, 0), self.xdeg, out, self.field)

    def partial_x(self, var):
        out = {}
        for (i, m), c in self.terms.items():
            if m[var] == 0:
                continue
            n = list(m)
            n[var] -= 1
            out[(i, tuple(n))] = c * m[var]
        return BiForm(self.tdeg, max(self.xdeg - 1, 0), out, self.field)

    def t_coefficient(self, i):
        """The XForm multiplying t0^(tdeg-i) * t1^i."""
        out = {m: c for (j, m), c in self.terms.items() if j == i}
        return XForm(self.xdeg, out, self.field)

    def x_coefficient_triples(self):
        """For X-degree 1 forms: the coefficient TForms (v0, v1, v2)."""
        if self.xdeg != 1:
            raise ValueError("coefficient triples only exist in X-degree 1")
        vs = []
        for var in range(3):
            mon = [0, 0, 0]
            mon[var] = 1
            mon = tuple(mon)
            coeffs = [self.field.zero] * (self.tdeg + 1)
            for (i, m), c in self.terms.items():
                if m == mon:
                    coeffs[i] = c
            vs.append(TForm(self.tdeg, coeffs, self.field))
        return tuple(vs)

    def substitute_param(self, phi):
        """Substitute X_i -> u_i(t0, t1); the result is a TForm.

        The form follows ``phi`` exactly when this comes out zero.
        """
        if self.field != phi.field:
            raise FieldMismatchError("form and parametrization over different fields")
        f = self.field
        deg = self.tdeg + self.xdeg * phi.d
        out = [f.zero] * (deg + 1)
        powers = phi.monomial_powers(self.xdeg)
        for (i, m), c in self.terms.items():
            prod = powers[m]
            for j, a in enumerate(prod.coeffs):
                if a:
                    out[i + j] = out[i + j] + c * a
        return TForm(deg, out, f)

    def coefficient_vector(self):
        """Dense coefficient list over t_monomials x x_monomials order."""
        xs = x_monomials(self.xdeg)
        xindex = {m: k for k, m in enumerate(xs)}
        n = len(xs)
        vec = [self.field.zero] * ((self.tdeg + 1) * n)
        for (i, m), c in self.terms.items():
            vec[i * n + xindex[m]] = c
        return vec

    @classmethod
    def from_coefficient_vector(cls, vec, tdeg, xdeg, field=QQ):
        xs = x_monomials(xdeg)
        n = len(xs)
        terms = {}
        for i in range(tdeg + 1):
            for k, m in enumerate(xs):
                c = vec[i * n + k]
                if c:
                    terms[(i, m)] = c
        return cls(tdeg, xdeg, terms, field)

    def __str__(self):
        if not self.terms:
            return "0"
        def key(item):
            (i, m), _ = item
            return (-i, _xkey(m))
        parts = ""
        lead = True
        for (i, m), c in sorted(self.terms.items(), key=key, reverse=True):
            mon = _mon_text(
                ("t0", "t1", "X0", "X1", "X2"),
                (self.tdeg - i, i) + m,
            )
            parts += _join_term(_render_coeff(c, lead, bool(mon)), mon)
            lead = False
        return parts

    def __repr__(self):
        return f"BiForm({self})"


# ---------------------------------------------------------------------------
# bivariate gcd and friends


def _dehomogenize(f):
    """Strip t0/t1 powers; return (t0exp, t1exp, univariate coeff list).

    The univariate polynomial is in s = t1/t0, coefficients ascending,
    with nonzero constant and leading coefficient.
    """
    support = f.support()
    lo, hi = support[0], support[-1]
    core = list(f.coeffs[lo : hi + 1])
    return f.degree - hi, lo, core


def _rehomogenize(t0exp, t1exp, core, field):
    deg = t0exp + t1exp + len(core) - 1
    coeffs = [field.zero] * (deg + 1)
    for j, c in enumerate(core):
        coeffs[t1exp + j] = c
    return TForm(deg, coeffs, field)


def _umod(a, b, field):
    # remainder of univariate division, coefficient lists ascending
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        while a and not a[-1]:
            a.pop()
        if len(a) - 1 < db:
            break
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for j, c in enumerate(b):
            a[shift + j] = a[shift + j] - q * c
        a.pop()
    while a and not a[-1]:
        a.pop()
    return a


def gcd_t(f, g):
    """Monic gcd of two homogeneous t-forms.

    Powers of t0 and t1 are split off first, then the Euclidean
    algorithm runs on the dehomogenized cores.
    """
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero forms")
    field = _same_field(f, g)
    if f.is_zero() or g.is_zero():
        h = g if f.is_zero() else f
        lead = h.coeffs[h.support()[0]]
        return h.scale(field.one / lead)
    a0, a1, ca = _dehomogenize(f)
    b0, b1, cb = _dehomogenize(g)
    x, y = ca, cb
    while any(y):
        x, y = y, _umod(x, y, field)
    core = [c / x[-1] for c in x]
    return _rehomogenize(min(a0, b0), min(a1, b1), core, field)


def tform_exact_div(f, g):
    """Exact quotient f / g of homogeneous t-forms."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero form")
    field = _same_field(f, g)
    if f.is_zero():
        return TForm.zero(max(f.degree - g.degree, 0), field)
    a0, a1, ca = _dehomogenize(f)
    b0, b1, cb = _dehomogenize(g)
    if a0 < b0 or a1 < b1:
        raise NotDivisibleError("t-form division leaves a monomial remainder")
    # univariate long division, exactness required
    q = [field.zero] * (len(ca) - len(cb) + 1)
    rem = list(ca)
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + len(cb) - 1] / cb[-1]
        q[k] = c
        if c:
            for j, b in enumerate(cb):
                rem[k + j] = rem[k + j] - c * b
    if any(rem):
        raise NotDivisibleError("t-form division leaves a remainder")
    return _rehomogenize(a0 - b0, a1 - b1, q, field)


# ---------------------------------------------------------------------------
# XForm root extraction and exact division


def _int_kth_root(n, k):
    """Floor k-th root of n >= 0 plus exactness flag."""
    if n == 0:
        return 0, True
    if k == 1:
        return n, True
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x, x**k == n


def _scalar_kth_root(c, k, field):
    if field.char:
        # prime mode only needs the monic case
        if c == field.one:
            return field.one
        for r in range(field.char):
            if pow(r, k, field.char) == c.v:
                return ModInt(r, field.char)
        raise NotAPowerError("no k-th root in GF(p)")
    if k % 2 == 0 and c < 0:
        raise NotAPowerError("negative leading coefficient under an even root")
    sign = -1 if c < 0 else 1
    rn, okn = _int_kth_root(abs(c.numerator), k)
    rd, okd = _int_kth_root(c.denominator, k)
    if not (okn and okd):
        raise NotAPowerError("leading coefficient is not an exact k-th power")
    return Fraction(sign * rn, rd)


def kth_root(G, k):
    """Exact k-th root of an X-form, up to canonical normalization.

    Returns the canonical F with F^k proportional to G; raises
    NotAPowerError when no such form exists.  Coefficients are recovered
    one monomial at a time in descending graded-lex order.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if G.is_zero():
        raise NotAPowerError("zero form has no canonical root")
    G = G.canonical()
    if k == 1:
        return G
    if G.degree % k:
        raise NotAPowerError("degree is not divisible by k")
    lead_mon, lead_c = G.leading()
    if any(e % k for e in lead_mon):
        raise NotAPowerError("leading monomial is not a k-th power")
    root_mon = tuple(e // k for e in lead_mon)
    root_c = _scalar_kth_root(lead_c, k, G.field)
    F = XForm(G.degree // k, {root_mon: root_c}, G.field)
    denom = k * root_c ** (k - 1)
    last_key = None
    for _ in range(len(x_monomials(G.degree // k)) + 1):
        residual = G - F**k
        if residual.is_zero():
            assert F == F.canonical()
            return F
        m, c = residual.leading()
        rmon = tuple(m[i] - (k - 1) * root_mon[i] for i in range(3))
        if any(e < 0 for e in rmon):
            raise NotAPowerError("residual term not reachable from the root")
        if last_key is not None and _xkey(rmon) >= last_key:
            raise NotAPowerError("root recursion failed to make progress")
        last_key = _xkey(rmon)
        F = F + XForm(F.degree, {rmon: c / denom}, G.field)
    raise NotAPowerError("root recursion did not terminate")


def exact_divide(G, F):
    """Quotient Q with Q*F = G; raises NotDivisibleError otherwise."""
    if F.is_zero():
        raise ZeroDivisionError("division by the zero form")
    field = _same_field(G, F)
    if G.is_zero():
        return XForm.zero(max(G.degree - F.degree, 0), field)
    if G.degree < F.degree:
        raise NotDivisibleError("degree of the divisor exceeds the dividend")
    fm, fc = F.leading()
    out = {}
    R = G
    while not R.is_zero():
        m, c = R.leading()
        qm = (m[0] - fm[0], m[1] - fm[1], m[2] - fm[2])
        if any(e < 0 for e in qm):
            raise NotDivisibleError("leading monomial is not divisible")
        qc = c / fc
        out[qm] = qc
        R = R - XForm(G.degree - F.degree, {qm: qc}, field) * F
    return XForm(G.degree - F.degree, out, field)


# ---------------------------------------------------------------------------
# parametrizations


class Parametrization:
    """Three coprime t-forms of one degree d >= 1, mapping P^1 to P^2."""

    __slots__ = ("d", "u", "field", "_powers")

    def __init__(self, u0, u1, u2, field=None):
        forms = (u0, u1, u2)
        fields = {f.field for f in forms}
        if len(fields) != 1:
            raise FieldMismatchError("components over different scalar fields")
        self.field = field or forms[0].field
        degrees = {f.degree for f in forms}
        if len(degrees) != 1:
            raise InvalidParametrizationError(
                "DEGREE-MISMATCH",
                f"component degrees differ: {sorted(f.degree for f in forms)}",
            )
        d = degrees.pop()
        if d < 1:
            raise InvalidParametrizationError(
                "DEGREE-MISMATCH", "degree must be at least 1"
            )
        if all(f.is_zero() for f in forms):
            raise InvalidParametrizationError("ZERO", "all components vanish")
        nonzero = [f for f in forms if not f.is_zero()]
        g = nonzero[0]
        for f in nonzero[1:]:
            g = gcd_t(g, f)
        if g.degree > 0:
            raise InvalidParametrizationError(
                "COMMON-FACTOR", f"components share the factor {g}"
            )
        self.d = d
        self.u = forms
        self._powers = {}

    def __eq__(self, other):
        if not isinstance(other, Parametrization):
            return NotImplemented
        return self.u == other.u

    def __hash__(self):
        return hash(("Parametrization",) + tuple(f.coeffs for f in self.u))

    def evaluate(self, t0, t1):
        return tuple(f.evaluate(t0, t1) for f in self.u)

    def monomial_powers(self, nu):
        """TForms u0^a0 u1^a1 u2^a2 for all exponent triples of degree nu.

        Cached on the parametrization; the cache is the only mutable
        state and is safe to rebuild from any thread.
        """
        cached = self._powers.get(nu)
        if cached is not None:
            return cached
        f = self.field
        table = {(0, 0, 0): TForm(0, (1,), f)}
        for total in range(1, nu + 1):
            for m in x_monomials(total):
                for i in range(3):
                    if m[i]:
                        prev = list(m)
                        prev[i] -= 1
                        table[m] = table[tuple(prev)] * self.u[i]
                        break
        result = {m: table[m] for m in table}
        self._powers[nu] = result
        return result

    def compose_linear(self, a, b, c, d):
        """Reparametrize by t -> (a*t0 + b*t1, c*t0 + d*t1)."""
        return Parametrization(*(f.compose_linear(a, b, c, d) for f in self.u))

    def __repr__(self):
        return f"Parametrization({self.u[0]}; {self.u[1]}; {self.u[2]})"


def cross_product(p, q):
    """Componentwise cross product of two TForm triples."""
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def homogenize(a, b, c, field=QQ):
    """Turn an affine pair (a(t)/c(t), b(t)/c(t)) into a parametrization.

    Coefficient lists are ascending in t.  X0 takes the denominator
    role: u0 is the homogenization of c, u1 of a, u2 of b, all to the
    maximal degree.  Any common factor introduced on the way is stripped
    and reported; returns (parametrization, stripped factor or None).
    """
    polys = [list(map(field.of, p)) for p in (c, a, b)]
    if not any(polys[0]):
        raise InvalidParametrizationError("ZERO", "denominator is zero")
    if not any(itertools.chain.from_iterable(polys)):
        raise InvalidParametrizationError("ZERO", "all three polynomials vanish")
    degs = [max((i for i, x in enumerate(p) if x), default=0) for p in polys]
    d = max(degs)
    if d < 1:
        raise InvalidParametrizationError(
            "DEGREE-MISMATCH", "constant inputs do not parametrize a curve"
        )
    forms = []
    for p in polys:
        coeffs = [field.zero] * (d + 1)
        for j, x in enumerate(p):
            if x:
                coeffs[j] = x
        forms.append(TForm(d, coeffs, field))
    nonzero = [f for f in forms if not f.is_zero()]
    g = nonzero[0]
    for f in nonzero[1:]:
        g = gcd_t(g, f)
    stripped = None
    if g.degree > 0:
        stripped = g
        forms = [tform_exact_div(f, g) if not f.is_zero() else TForm.zero(f.degree - g.degree, field) for f in forms]
    return Parametrization(*forms), stripped
