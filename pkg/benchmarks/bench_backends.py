"""Benchmark the two Jacobi eigensolver kernels on random Hermitian matrices.

Runs the numba kernel and the pure-numpy kernel on identical inputs and
prints best-of-N wall times plus the speedup.  The numba path is warmed up
once before timing so compilation is excluded.

Usage: python3 benchmarks/bench_backends.py [--dims 16,36,64,81,128] [--repeats 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from privnet import _kernels

OFF_TOL_FACTOR = 1e-12
MAX_SWEEPS = 100


def random_hermitian(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return np.ascontiguousarray((g + g.conj().T) / 2.0)


def time_kernel(kernel, m: np.ndarray, repeats: int) -> float:
    best = float("inf")
    off_tol = OFF_TOL_FACTOR * float(np.linalg.norm(m))
    for _ in range(repeats):
        a = m.copy()
        v = np.eye(m.shape[0], dtype=np.complex128)
        start = time.perf_counter()
        sweeps = kernel(a, v, off_tol, MAX_SWEEPS)
        elapsed = time.perf_counter() - start
        if sweeps < 0:
            raise RuntimeError(f"kernel failed to converge on dim {m.shape[0]}")
        best = min(best, elapsed)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dims", default="16,36,64,81,128",
                        help="comma-separated matrix dimensions")
    parser.add_argument("--repeats", type=int, default=5,
                        help="repeats per dimension; best time is reported")
    args = parser.parse_args()
    dims = [int(t) for t in args.dims.split(",") if t.strip()]

    if _kernels.HAVE_NUMBA:
        warm = random_hermitian(8, 0)
        time_kernel(_kernels.jacobi_sweeps_numba, warm, 1)
    else:
        print("numba is not installed; benchmarking the numpy kernel only\n")

    header = f"{'dim':>5} {'numpy [ms]':>12}"
    if _kernels.HAVE_NUMBA:
        header += f" {'numba [ms]':>12} {'speedup':>9}"
    print(header)
    for n in dims:
        m = random_hermitian(n, 1234 + n)
        t_np = time_kernel(_kernels.jacobi_sweeps_numpy, m, args.repeats)
        line = f"{n:>5} {t_np * 1e3:>12.3f}"
        if _kernels.HAVE_NUMBA:
            t_nb = time_kernel(_kernels.jacobi_sweeps_numba, m, args.repeats)
            line += f" {t_nb * 1e3:>12.3f} {t_np / t_nb:>8.2f}x"
        print(line)


if __name__ == "__main__":
    main()
