"""Select compiled or pure-Python kernels at import time.

Set ``ORBIQUANT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
kernels = _kernels_py

if not os.environ.get("ORBIQUANT_PURE_PYTHON"):
    try:
        from . import _ckernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        kernels = _ckernels
        BACKEND = "cython"

sparse_echelon = kernels.sparse_echelon
back_substitute = kernels.back_substitute
conv_reduce = kernels.conv_reduce
