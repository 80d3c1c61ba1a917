"""Kernel backend selection.

The polynomial term arithmetic is the hot loop of every identity check, so
it exists twice: a Cython extension (``c_kernel``) and a pure-Python
fallback (``py_kernel``) with the same API.  The compiled one is used when
available; set ``COURANT_KERNEL=py`` or ``COURANT_KERNEL=c`` to force a
backend.
"""

import os

_forced = os.environ.get("COURANT_KERNEL", "").strip().lower()

if _forced in ("py", "python"):
    from . import py_kernel as kernel
elif _forced == "c":
    from . import c_kernel as kernel  # noqa: F401  (ImportError is the point)
else:
    try:
        from . import c_kernel as kernel  # type: ignore[no-redef]
    except ImportError:
        from . import py_kernel as kernel  # type: ignore[no-redef]

BACKEND = kernel.BACKEND
add_terms = kernel.add_terms
sub_terms = kernel.sub_terms
neg_terms = kernel.neg_terms
mul_terms = kernel.mul_terms
scale_terms = kernel.scale_terms
partial_terms = kernel.partial_terms
subst_terms = kernel.subst_terms
