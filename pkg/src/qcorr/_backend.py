"""Select the numeric kernel backend once, at import time.

The compiled Cython extension ``qcorr._kernels`` is preferred when it has
been built; otherwise the pure-numpy twin ``qcorr._kernels_py`` is used.
Set QCORR_BACKEND=python or QCORR_BACKEND=compiled to force the choice
(forcing "compiled" raises if the extension is missing, instead of
silently falling back).
"""

from __future__ import annotations

import os

_requested = os.environ.get("QCORR_BACKEND", "").strip().lower()
if _requested not in ("", "auto", "python", "compiled"):
    raise ImportError(
        f"QCORR_BACKEND={_requested!r} not understood; use 'python' or 'compiled'"
    )

if _requested == "python":
    from . import _kernels_py as kernels
elif _requested == "compiled":
    from . import _kernels as kernels  # type: ignore[no-redef]
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as kernels  # type: ignore[no-redef]


def backend_name() -> str:
    """Name of the kernel backend in use: 'compiled' or 'python'."""
    return kernels.BACKEND_NAME
