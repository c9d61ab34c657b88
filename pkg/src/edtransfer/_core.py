"""Kernel selection: compiled extension when available, pure Python otherwise.

Set EDTRANSFER_PURE_PYTHON=1 to force the fallback (used by the benchmark
and by tests that compare the two implementations).
"""

import os

if os.environ.get("EDTRANSFER_PURE_PYTHON"):
    from . import _kernel_py as kernel
else:
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as kernel

HAVE_COMPILED_KERNEL = kernel.IS_COMPILED
