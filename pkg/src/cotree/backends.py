"""Selection between the compiled conversion kernel and its pure-Python twin.

The compiled module is used when it was built; ``COTREE_BACKEND=py`` in the
environment forces the fallback.  Both expose the same names, so callers
hold a module reference and never branch again.
"""

import os

from . import _veb_py

try:
    from . import _veb_c
except ImportError:
    _veb_c = None

VARIANTS = _veb_py.VARIANTS
MAX_HEIGHT = _veb_py.MAX_HEIGHT


def names() -> tuple:
    """Backend names available in this installation."""
    return ("c", "py") if _veb_c is not None else ("py",)


def get(name: str = "auto"):
    """Return the kernel module for ``name`` (``auto``, ``c`` or ``py``)."""
    if name == "auto":
        forced = os.environ.get("COTREE_BACKEND", "").strip().lower()
        if forced and forced != "auto":
            return get(forced)
        return _veb_c if _veb_c is not None else _veb_py
    if name == "py":
        return _veb_py
    if name == "c":
        if _veb_c is None:
            raise ValueError("compiled backend requested but not built")
        return _veb_c
    raise ValueError(f"unknown backend {name!r} (expected auto, c or py)")


def active_name() -> str:
    return get().BACKEND_NAME
