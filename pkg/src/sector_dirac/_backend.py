"""Selects the compiled kernels when available, else the numpy fallback.

Set ``SECTOR_DIRAC_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
log_bessel_k = _kernels_py.log_bessel_k
banded_negative_count = _kernels_py.banded_negative_count

if os.environ.get("SECTOR_DIRAC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        BACKEND = "compiled"
        log_bessel_k = _kernels.log_bessel_k
        banded_negative_count = _kernels.banded_negative_count

__all__ = ["BACKEND", "log_bessel_k", "banded_negative_count"]
