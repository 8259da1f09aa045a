#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the two hot kernels directly (both backends are importable side by
side) and a realistic end-to-end workload (a conservation-audit lattice)
in subprocesses pinned to one backend each via QCORR_BACKEND.

Usage:
    python benchmarks/bench_backends.py [--lattice N]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from qcorr import _kernels_py as kpy

try:
    from qcorr import _kernels as kc
except ImportError:
    kc = None

_WORKLOAD = """
import numpy as np, time
import qcorr
from qcorr import sweeps
grid = tuple(np.linspace(0.0, 1.0, {n}))
t0 = time.perf_counter()
viol, _ = sweeps.conservation_audit("PHI", "PHASE", grid, grid)
t1 = time.perf_counter()
print(f"{{qcorr.backend_name()}} {{t1 - t0:.3f}} {{viol:.3e}}")
"""


def time_it(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels():
    rng = np.random.default_rng(0)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    h16 = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    h16 = (h16 + h16.conj().T) / 2
    thetas = np.repeat(np.linspace(0, np.pi / 2, 32), 64)
    phis = np.tile(np.linspace(0, 2 * np.pi, 64, endpoint=False), 32)

    backends = [("python", kpy)] + ([("compiled", kc)] if kc else [])
    print(f"{'kernel':<28}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    rows = [
        ("jacobi_eigh 4x4", lambda k: k.jacobi_eigh(rho), 200),
        ("jacobi_eigh 16x16", lambda k: k.jacobi_eigh(h16), 20),
        ("cond_entropy grid 32x64", lambda k: k.cond_entropy_grid(rho, 0, thetas, phis), 20),
    ]
    for label, call, repeats in rows:
        times = [time_it(lambda k=k: call(k), repeats) for _, k in backends]
        line = f"{label:<28}" + "".join(f"{t * 1e6:>10.1f}us" for t in times)
        if len(times) == 2:
            line += f"{times[0] / times[1]:>9.1f}x"
        print(line)

    if kc:
        a = kpy.cond_entropy_grid(rho, 0, thetas, phis)
        b = kc.cond_entropy_grid(rho, 0, thetas, phis)
        wa, _ = kpy.jacobi_eigh(h16)
        wb, _ = kc.jacobi_eigh(h16)
        print(f"agreement: grid {np.max(np.abs(a - b)):.2e}, eigenvalues {np.max(np.abs(wa - wb)):.2e}")


def bench_workload(lattice):
    print(f"\nconservation-audit lattice {lattice}x{lattice} (wall seconds, max violation):")
    names = ["python"] + (["compiled"] if kc else [])
    for name in names:
        env = dict(os.environ, QCORR_BACKEND=name)
        out = subprocess.run(
            [sys.executable, "-c", _WORKLOAD.format(n=lattice)],
            env=env, capture_output=True, text=True, check=True,
        )
        print(" ", out.stdout.strip())


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--lattice", type=int, default=6)
    args = parser.parse_args()
    if kc is None:
        print("compiled kernels not built; benchmarking the fallback only")
    bench_kernels()
    bench_workload(args.lattice)


if __name__ == "__main__":
    main()
