"""Selects the compiled kernels when importable, the numpy fallback otherwise.

Set ``EQUITC_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

if os.environ.get("EQUITC_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

NAME = "compiled" if _compiled is not None else "python"
kernels = BACKENDS[NAME]


def use(name):
    """Switch the active backend (``"compiled"`` or ``"python"``)."""
    global kernels, NAME
    kernels = BACKENDS[name]
    NAME = name
