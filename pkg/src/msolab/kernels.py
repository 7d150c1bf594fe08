"""Kernel selection: compiled extension when available, numpy fallback otherwise.

Set MSOLAB_PURE_PYTHON=1 to force the fallback (useful for debugging and for
the kernel benchmark).
"""

import os

if os.environ.get("MSOLAB_PURE_PYTHON"):
    from . import _kernels_py as _impl
    HAVE_COMPILED = False
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
        HAVE_COMPILED = True
    except ImportError:
        from . import _kernels_py as _impl
        HAVE_COMPILED = False

convolve = _impl.convolve
inner_shifted = _impl.inner_shifted
