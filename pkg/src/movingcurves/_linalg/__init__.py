"""Exact linear algebra backend selection.

The compiled GMP kernel in ``_core`` is preferred when it imported
cleanly; the pure-Python twin in ``pyref`` is the fallback and the
reference for correctness (both produce bit-identical output).  Set
``MOVINGCURVES_BACKEND=python`` to force the fallback, ``=c`` to insist
on the compiled kernel (raising if it is unavailable).
"""

import os
from math import gcd

from . import pyref

try:
    from . import _core
except ImportError:  # pragma: no cover - depends on the build
    _core = None

_forced = os.environ.get("MOVINGCURVES_BACKEND", "").strip().lower()
if _forced == "python":
    _impl = pyref
elif _forced == "c":
    if _core is None:
        raise ImportError("MOVINGCURVES_BACKEND=c but the compiled kernel is missing")
    _impl = _core
else:
    _impl = _core if _core is not None else pyref

BACKEND = "c" if _impl is _core else "python"

rref = _impl.rref
nullspace = _impl.nullspace
SpanBuilder = _impl.SpanBuilder

rref_modp = pyref.rref_modp
nullspace_modp = pyref.nullspace_modp
SpanBuilderModP = pyref.SpanBuilderModP


def backends():
    """Names of the importable backends."""
    return ("python",) if _core is None else ("c", "python")


def implementation(name):
    if name == "python":
        return pyref
    if name == "c":
        if _core is None:
            raise ValueError("compiled kernel not available")
        return _core
    raise ValueError(f"unknown backend {name!r}")


def integer_rows(rows):
    """Scale rows of Fractions/ints to primitive integer rows.

    Row scaling never changes a row span or a kernel, so every rational
    system is handled through this.
    """
    out = []
    for row in rows:
        den = 1
        for x in row:
            d = getattr(x, "denominator", 1)
            if d != 1:
                den = den * d // gcd(den, d)
        if den == 1:
            out.append([int(x) for x in row])
        else:
            out.append([int(x * den) for x in row])
    return out
