"""Timing comparison of the compiled path-tracking kernel against the
pure-Python fallback on a few continuation workloads.

Usage: python benchmarks/bench_tracker.py [--repeats N]
"""

import argparse
import time

import numpy as np

from edtransfer import _kernel_py, catalog, homotopy
from edtransfer._core import HAVE_COMPILED_KERNEL
from edtransfer.edcrit import build_lagrange_system
from edtransfer.homotopy import SquareSystem, TrackOptions, solve
from edtransfer.polyalg import parse_poly


def workloads():
    names2 = ["x1", "x2"]
    yield "dense cubic pair", SquareSystem([
        parse_poly("x1^3 + 2*x2^2 - x1 - 1", names2),
        parse_poly("x1*x2^2 - 3*x2 + 2", names2),
    ])
    sl3 = catalog.sl_pm(3).spec.components[0]
    y = np.array([0.9, -0.4, 1.3])
    yield "det=1 criticality (n=3)", build_lagrange_system(sl3, y)
    fermat = catalog.fermat(2, 4).spec.components[0]
    yield "quartic sphere criticality", build_lagrange_system(
        fermat, np.array([0.7, -1.1])
    )


def time_solve(system, kernel_module, repeats):
    homotopy.kernel = kernel_module
    best = np.inf
    count = None
    for _ in range(repeats):
        started = time.perf_counter()
        sols = solve(system, TrackOptions(rng_seed=1))
        best = min(best, time.perf_counter() - started)
        count = len(sols.points)
    return best, count


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if not HAVE_COMPILED_KERNEL:
        print("compiled kernel unavailable; timing the fallback only")
    compiled = homotopy.kernel

    print(f"{'workload':<30} {'paths':>6} {'compiled':>10} {'pure':>10} {'speedup':>8}")
    for name, system in workloads():
        paths = 1
        for d in system.degrees:
            paths *= d
        t_pure, n_pure = time_solve(system, _kernel_py, args.repeats)
        if HAVE_COMPILED_KERNEL:
            t_comp, n_comp = time_solve(system, compiled, args.repeats)
            if n_comp != n_pure:
                raise SystemExit(
                    f"{name}: kernels disagree ({n_comp} vs {n_pure} points)"
                )
            print(f"{name:<30} {paths:>6} {t_comp:>9.4f}s {t_pure:>9.4f}s "
                  f"{t_pure / t_comp:>7.1f}x")
        else:
            print(f"{name:<30} {paths:>6} {'-':>10} {t_pure:>9.4f}s {'-':>8}")
    homotopy.kernel = compiled


if __name__ == "__main__":
    main()
