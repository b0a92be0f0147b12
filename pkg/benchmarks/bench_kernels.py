"""Compare the compiled kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``. Both backends are
imported directly, so the comparison does not depend on which one the
package selected at import.
"""

import argparse
import math
import time

import numpy as np

from sector_dirac import _kernels_py
from sector_dirac.angular import SectorGeometry
from sector_dirac.fiber import RadialGrid
from sector_dirac.spectra import assemble_sector

try:
    from sector_dirac import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--n-modes", type=int, default=8)
    ap.add_argument("--n-r", type=int, default=600)
    args = ap.parse_args()

    radii = np.geomspace(1e-4, 40.0, 2000)
    asm = assemble_sector(SectorGeometry(math.pi / 3), 1.0, None, args.n_modes,
                          RadialGrid(1e-6, 20.0, args.n_r))
    ab = np.ascontiguousarray(asm.banded_lower())
    cases = [
        ("log K_nu, 2000 radii", lambda m: m.log_bessel_k(0.3, radii)),
        (f"inertia count, dim {asm.dimension}, band {ab.shape[0] - 1}",
         lambda m: m.banded_negative_count(ab, 1.5)),
    ]
    print(f"{'kernel':44s} {'numpy [s]':>10s} {'compiled [s]':>13s} {'speed-up':>9s}")
    for name, call in cases:
        t_py, out_py = best_of(lambda: call(_kernels_py), args.repeat)
        if _kernels is None:
            print(f"{name:44s} {t_py:10.4f} {'n/a':>13s} {'n/a':>9s}")
            continue
        t_c, out_c = best_of(lambda: call(_kernels), args.repeat)
        agree = np.allclose(out_py, out_c, rtol=0, atol=1e-12)
        print(f"{name:44s} {t_py:10.4f} {t_c:13.4f} {t_py / t_c:8.1f}x"
              + ("" if agree else "  MISMATCH"))


if __name__ == "__main__":
    main()
