"""Kernel backend selection.

Imports the compiled extension when available, otherwise the numpy
fallback. Set TESTLAB_NO_EXT=1 to force the fallback (used by the
benchmark and the backend-equivalence tests).
"""

import os

if os.environ.get("TESTLAB_NO_EXT"):
    from testlab import _kernels_fallback as _impl

    BACKEND = "python"
else:
    try:
        from testlab import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from testlab import _kernels_fallback as _impl

        BACKEND = "python"

split_scan = _impl.split_scan
hist_accumulate = _impl.hist_accumulate
