"""Backend selection for the brute-force scan kernel.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python twin.  Setting ``GCF_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _kernels_py.Scanner}
if _compiled is not None:
    BACKENDS["cython"] = _compiled.Scanner

if _compiled is not None and not os.environ.get("GCF_PURE_PYTHON"):
    BACKEND = "cython"
else:
    BACKEND = "python"

Scanner = BACKENDS[BACKEND]


def make_scanner(q, tables, gs, primes, targets, backend: str | None = None):
    """Build a scanner on ``backend`` (default: the selected one)."""
    cls = BACKENDS[backend or BACKEND]
    return cls(q, tables, gs, primes, targets)
