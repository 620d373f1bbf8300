"""Hot-loop dispatch: the compiled core when built, otherwise numpy.

Set ``LUSZTIGSP_PURE=1`` before import to force the numpy path.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if not os.environ.get("LUSZTIGSP_PURE"):
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py


def backends() -> dict:
    """Available implementations keyed by name."""
    out = {"python": _kernels_py}
    try:
        from . import _kernels

        out["cython"] = _kernels
    except ImportError:
        pass
    return out


def nilpotent_codes(n: int, p: int):
    return _impl.nilpotent_codes(n, p)


def conjugation_orbits(codes, gens, n: int, p: int):
    return _impl.conjugation_orbits(codes, gens, n, p)


def character_sums(xs, ys, weights, p: int):
    return _impl.character_sums(xs, ys, weights, p)
