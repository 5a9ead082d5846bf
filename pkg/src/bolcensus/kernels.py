"""Kernel backend selection.

The compiled extension (``bolcensus._kernels``) is used when it imports;
otherwise the pure-Python module is used.  ``BOLCENSUS_BACKEND=python``
forces the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

import numpy as np

from . import _pykernels
from .terms import Identity, Prod, Term, Var

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS: dict[str, ModuleType] = {"python": _pykernels}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled


def _default() -> str:
    wanted = os.environ.get("BOLCENSUS_BACKEND", "").strip().lower()
    if wanted:
        if wanted not in BACKENDS:
            raise ImportError(f"kernel backend {wanted!r} unavailable (have {sorted(BACKENDS)})")
        return wanted
    return "compiled" if "compiled" in BACKENDS else "python"


DEFAULT_BACKEND = _default()


def get_backend(name: str | None = None) -> ModuleType:
    return BACKENDS[name or DEFAULT_BACKEND]


def compile_identity(ident: Identity) -> tuple:
    """Flatten an identity into ``(nvars, left, right, lhs_root, rhs_root)``."""
    variables = ident.variables
    slot = {v: i for i, v in enumerate(variables)}
    left = [-1] * len(variables)
    right = [-1] * len(variables)

    def emit(t: Term) -> int:
        if isinstance(t, Var):
            return slot[t.name]
        assert isinstance(t, Prod)
        a, b = emit(t.left), emit(t.right)
        left.append(a)
        right.append(b)
        return len(left) - 1

    lroot = emit(ident.lhs)
    rroot = emit(ident.rhs)
    return (len(variables), np.asarray(left, dtype=np.intc),
            np.asarray(right, dtype=np.intc), lroot, rroot)
