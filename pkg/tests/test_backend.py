import importlib
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from sector_dirac import _backend, _kernels_py
from sector_dirac.angular import SectorGeometry
from sector_dirac.fiber import RadialGrid
from sector_dirac.spectra import assemble_sector

compiled = pytest.importorskip("sector_dirac._kernels")


def test_compiled_is_selected_by_default():
    assert _backend.BACKEND == "compiled"


def test_environment_forces_fallback():
    code = "import sector_dirac._backend as b; print(b.BACKEND)"
    env = dict(os.environ, SECTOR_DIRAC_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


def test_bessel_kernels_agree():
    r = np.geomspace(1e-6, 300.0, 400)
    for nu in (0.0, 0.3, 2.5, 40.0):
        np.testing.assert_allclose(compiled.log_bessel_k(nu, r), _kernels_py.log_bessel_k(nu, r),
                                   rtol=1e-15, atol=1e-13)


def test_inertia_kernels_agree():
    asm = assemble_sector(SectorGeometry(math.pi / 3), 1.0, None, 3, RadialGrid(1e-6, 8.0, 80))
    ab = np.ascontiguousarray(asm.banded_lower())
    dense = np.linalg.eigvalsh(asm.matrix.toarray())
    for shift in (-2.0, -0.5, 0.7, 1.3):
        want = int(np.sum(dense < shift))
        assert compiled.banded_negative_count(ab, shift) == (want, 0)
        assert _kernels_py.banded_negative_count(ab, shift) == (want, 0)
    # an exactly cancelled pivot is reported as weak
    hollow = ab.copy()
    hollow[0] = 0.0
    assert compiled.banded_negative_count(hollow, 0.0)[1] > 0
    assert _kernels_py.banded_negative_count(hollow, 0.0)[1] > 0
    # a pivot that is small only against its neighbours is not weak
    pair = np.array([[1e-3, 1e-3], [1e8, 0.0]])
    assert compiled.banded_negative_count(pair, 0.0) == (1, 0)
    assert _kernels_py.banded_negative_count(pair, 0.0) == (1, 0)
