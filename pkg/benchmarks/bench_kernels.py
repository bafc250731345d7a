"""Compare the compiled and NumPy transverse-rate kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times a single 2000-point spectral scan, a scalar evaluation loop (the
golden-section path) and a full r_min solve with each backend in turn,
and reports the largest relative difference between the two scans.
"""
import argparse
import timeit

import numpy as np

from lfdecay import kernels
from lfdecay.permittivity import LorentzMedium
from lfdecay.rmin import SpectrumGrid, find_r_min

ARGS = (1.0, 0.46, 0.01, 17.5)


def _use(backend):
    mod = kernels.load_backend(backend)
    kernels.gamma_perp_lorentz = mod.gamma_perp_lorentz
    kernels.gamma_perp_lorentz_grid = mod.gamma_perp_lorentz_grid
    return mod


def run(repeat):
    omegas = SpectrumGrid().omegas()
    scalar_pts = np.linspace(0.99, 1.01, 200)
    medium = LorentzMedium(0.01)
    results = {}
    for name in kernels.available_backends():
        mod = _use(name)
        grid_t = min(timeit.repeat(lambda: mod.gamma_perp_lorentz_grid(omegas, *ARGS), number=200, repeat=repeat)) / 200
        scal_t = min(timeit.repeat(lambda: [mod.gamma_perp_lorentz(w, *ARGS) for w in scalar_pts], number=20, repeat=repeat)) / 20
        rmin_t = min(timeit.repeat(lambda: find_r_min(medium), number=1, repeat=repeat))
        results[name] = (grid_t, scal_t, rmin_t, mod.gamma_perp_lorentz_grid(omegas, *ARGS))
        print(f"{name:>7}: grid scan {grid_t * 1e6:9.1f} us | 200 scalar calls {scal_t * 1e3:7.3f} ms | find_r_min {rmin_t * 1e3:8.1f} ms")
    if len(results) == 2:
        a, b = results["cython"], results["python"]
        rel = np.max(np.abs(a[3] - b[3]) / np.maximum(np.abs(b[3]), 1e-300))
        print(f"speed-up  grid x{b[0] / a[0]:.1f}  scalar x{b[1] / a[1]:.1f}  r_min x{b[2] / a[2]:.1f}")
        print(f"max relative difference between backends: {rel:.2e}")
    _use(kernels.BACKEND)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    run(ap.parse_args().repeat)
