"""Cyclic Jacobi eigensolver kernels for Hermitian matrices.

Two interchangeable implementations of the same rotation sequence: a
numba-jitted scalar loop (default) and a vectorized pure-numpy fallback.
The env var PRIVNET_BACKEND picks one of "auto", "numba", "numpy".

A sweep visits every off-diagonal pair (p, q) in row order and applies a
unitary 2x2 rotation that zeroes a[p, q].  Convergence is declared when
the off-diagonal Frobenius mass drops below the caller-supplied absolute
tolerance.  Both kernels work in place on `a` (which converges to a
diagonal of eigenvalues) and accumulate rotations into `v`.
"""

from __future__ import annotations

import math
import os

import numpy as np

ENV_BACKEND = "PRIVNET_BACKEND"

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(fn):
            return fn

        return wrap


def _rotation(app: float, aqq: float, mag: float) -> tuple[float, float]:
    # Smaller-angle root of t^2 + 2*tau*t - 1 = 0; stable for large |tau|.
    tau = (aqq - app) / (2.0 * mag)
    if tau >= 0.0:
        t = 1.0 / (tau + math.hypot(1.0, tau))
    else:
        t = -1.0 / (-tau + math.hypot(1.0, tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, t * c


def jacobi_sweeps_numpy(a: np.ndarray, v: np.ndarray, off_tol: float,
                        max_sweeps: int) -> int:
    """Run cyclic Jacobi sweeps in place; return sweeps used or -1."""
    n = a.shape[0]
    sweeps = 0
    while True:
        off = a - np.diag(np.diagonal(a))
        if np.linalg.norm(off) <= off_tol:
            return sweeps
        if sweeps >= max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                c, s = _rotation(a[p, p].real, a[q, q].real, mag)
                phase = apq / mag
                sp = s * phase
                spc = s * phase.conjugate()
                colp = a[:, p].copy()
                colq = a[:, q].copy()
                a[:, p] = c * colp - spc * colq
                a[:, q] = sp * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :].copy()
                a[p, :] = c * rowp - sp * rowq
                a[q, :] = spc * rowp + c * rowq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - spc * vq
                v[:, q] = sp * vp + c * vq
        sweeps += 1


@njit(cache=True, nogil=True)
def jacobi_sweeps_numba(a, v, off_tol, max_sweeps):  # pragma: no cover - jitted
    n = a.shape[0]
    sweeps = 0
    while True:
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                x = a[i, j]
                off2 += 2.0 * (x.real * x.real + x.imag * x.imag)
        if math.sqrt(off2) <= off_tol:
            return sweeps
        if sweeps >= max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                phase = apq / mag
                sp = s * phase
                spc = s * phase.conjugate()
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - spc * akq
                    a[k, q] = sp * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - sp * aqk
                    a[q, k] = spc * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = complex(a[p, p].real, 0.0)
                a[q, q] = complex(a[q, q].real, 0.0)
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - spc * vkq
                    v[k, q] = sp * vkp + c * vkq
        sweeps += 1


def requested_backend() -> str:
    name = os.environ.get(ENV_BACKEND, "auto").strip().lower() or "auto"
    if name not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"{ENV_BACKEND} must be one of auto/numba/numpy, got {name!r}")
    return name


def active_backend() -> str:
    name = requested_backend()
    if name == "auto":
        return "numba" if HAVE_NUMBA else "numpy"
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError(
            f"{ENV_BACKEND}=numba requested but numba is not importable")
    return name


def jacobi_sweeps(a: np.ndarray, v: np.ndarray, off_tol: float,
                  max_sweeps: int) -> int:
    if active_backend() == "numba":
        return jacobi_sweeps_numba(a, v, off_tol, max_sweeps)
    return jacobi_sweeps_numpy(a, v, off_tol, max_sweeps)
