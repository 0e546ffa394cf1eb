"""Groebner kernel with a compiled fast path and a pure-Python fallback.

The compiled backend (Cython, ``formdepth.engine._core``) handles prime
fields with few enough variables to pack exponent vectors into 64-bit
keys; everything else (the rationals, many variables, or degrees beyond
the packing bounds) runs on the pure-Python reference backend.  Both
produce the identical reduced basis.  Set FORMDEPTH_PURE_PYTHON=1 to
force the fallback.
"""

from __future__ import annotations

import os

from ..fields import PrimeField
from . import driver
from .backend_py import PyBackend

try:  # pragma: no cover - depends on the build
    from . import _core
except ImportError:  # pragma: no cover
    _core = None

_FORCE_PURE = os.environ.get("FORMDEPTH_PURE_PYTHON", "") == "1"

COMPILED_AVAILABLE = _core is not None and not _FORCE_PURE


def kernel_name() -> str:
    return "compiled" if COMPILED_AVAILABLE else "pure-python"


def _backend(nvars: int, field, kind: str, ncomp: int, compiled: bool | None = None):
    use_compiled = COMPILED_AVAILABLE if compiled is None else compiled
    if (
        use_compiled
        and isinstance(field, PrimeField)
        and _core is not None
        and _core.supports(nvars, kind, ncomp)
    ):
        return _core.CBackend(nvars, field.p, kind, ncomp)
    return PyBackend(nvars, field, kind, ncomp)


def reduced_groebner(gens, nvars: int, field, kind: str, ncomp: int = 1, compiled=None):
    """Reduced Groebner basis at the kpoly boundary.

    gens: list of kpolys, each a list of ((comp, exps), coeff).
    Returns the reduced basis as kpolys with terms sorted descending.
    """
    ops = _backend(nvars, field, kind, ncomp, compiled)
    try:
        encoded = [ops.encode(g) for g in gens]
        gb = driver.buchberger(ops, encoded)
        return [ops.decode(g) for g in gb]
    except OverflowError:
        if isinstance(ops, PyBackend):
            raise
        ops = PyBackend(nvars, field, kind, ncomp)
        encoded = [ops.encode(g) for g in gens]
        gb = driver.buchberger(ops, encoded)
        return [ops.decode(g) for g in gb]


def normal_form(f, gb, nvars: int, field, kind: str, ncomp: int = 1, compiled=None):
    """Normal form of one kpoly against a reduced basis of kpolys."""
    ops = _backend(nvars, field, kind, ncomp, compiled)
    try:
        ef = ops.encode(f)
        egb = [ops.encode(g) for g in gb]
        r = driver.normal_form(ops, ef, [g for g in egb if g is not None])
        return [] if r is None else ops.decode(r)
    except OverflowError:
        if isinstance(ops, PyBackend):
            raise
        ops = PyBackend(nvars, field, kind, ncomp)
        ef = ops.encode(f)
        egb = [ops.encode(g) for g in gb]
        r = driver.normal_form(ops, ef, [g for g in egb if g is not None])
        return [] if r is None else ops.decode(r)
