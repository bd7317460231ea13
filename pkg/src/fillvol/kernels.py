"""Float kernel selection.

The compiled ``_ckernels`` extension is used when it has been built; otherwise
the pure-Python ``_pykernels`` with identical semantics. Set
``FILLVOL_PURE_PYTHON=1`` to force the fallback.
"""
import os

if os.environ.get("FILLVOL_PURE_PYTHON", "") not in ("", "0"):
    from ._pykernels import box_volumes, growth_profile, simplex_volumes

    BACKEND = "python"
else:
    try:
        from ._ckernels import box_volumes, growth_profile, simplex_volumes

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import box_volumes, growth_profile, simplex_volumes

        BACKEND = "python"

__all__ = ["BACKEND", "box_volumes", "growth_profile", "simplex_volumes"]
