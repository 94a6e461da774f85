"""Dense linear algebra on small complex matrices.

Everything here operates on numpy complex128 arrays.  Spectra come from a
single in-house route (the Jacobi kernels in `_kernels`), so eigenvalues,
singular values, trace norms and PSD tests all share one code path that can
be cross-checked against independent oracles in the tests.

Multipartite operators use a row-major mixed-radix index convention: for
factor dims (d1, ..., dm) the basis index is i1*(d2*...*dm) + ... + im,
i.e. the first factor is the most significant digit, matching numpy's
C-order reshape.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from ._kernels import jacobi_sweeps

DEFAULT_TOL = 1e-9
MAX_DIM = 4096
SWEEP_BUDGET = 100
_OFF_TOL_FACTOR = 1e-12


class NotHermitianError(ValueError):
    """Input violates the Hermiticity precondition."""


class NoConvergenceError(RuntimeError):
    """Eigensolver exhausted its sweep budget."""


class StructureMismatchError(ValueError):
    """Matrix dimension does not match the declared tensor factors."""


@dataclass(frozen=True)
class TensorStructure:
    """Declared tensor factorization of a square operator."""

    factor_dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.factor_dims) == 0:
            raise ValueError("at least one tensor factor is required")
        for d in self.factor_dims:
            if not isinstance(d, (int, np.integer)) or d < 1:
                raise ValueError(f"factor dims must be positive ints, got {self.factor_dims}")
        object.__setattr__(self, "factor_dims", tuple(int(d) for d in self.factor_dims))

    @property
    def dim(self) -> int:
        out = 1
        for d in self.factor_dims:
            out *= d
        return out


StructureLike = Union[TensorStructure, Sequence[int]]


def _factors(structure: StructureLike) -> tuple[int, ...]:
    if isinstance(structure, TensorStructure):
        return structure.factor_dims
    return TensorStructure(tuple(structure)).factor_dims


def _as_matrix(m: np.ndarray) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2d array, got shape {a.shape}")
    return a


def _check_structure(m: np.ndarray, dims: tuple[int, ...]) -> None:
    if m.shape[0] != m.shape[1]:
        raise StructureMismatchError(f"operator must be square, got {m.shape}")
    total = 1
    for d in dims:
        total *= d
    if total != m.shape[0]:
        raise StructureMismatchError(
            f"factor dims {dims} give dim {total}, matrix has dim {m.shape[0]}")


def herm_eig(m: np.ndarray, tol: float = DEFAULT_TOL,
             max_sweeps: int = SWEEP_BUDGET) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix via cyclic Jacobi rotations.

    Returns (w, v) with eigenvalues w sorted in descending order and
    eigenvector columns v[:, k] matching w[k].  Raises NotHermitianError when
    max|M - M^dag| exceeds `tol` and NoConvergenceError when the off-diagonal
    Frobenius mass fails to drop below 1e-12 * ||M||_F within the sweep budget.
    """
    a = _as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n > MAX_DIM:
        raise ValueError(f"dimension {n} exceeds the supported maximum {MAX_DIM}")
    dev = float(np.max(np.abs(a - a.conj().T))) if n else 0.0
    if dev > tol:
        raise NotHermitianError(f"max|M - M^dag| = {dev:.3e} exceeds tol {tol:.1e}")
    work = np.ascontiguousarray((a + a.conj().T) / 2.0)
    vecs = np.eye(n, dtype=np.complex128)
    off_tol = _OFF_TOL_FACTOR * float(np.linalg.norm(work))
    sweeps = jacobi_sweeps(work, vecs, off_tol, max_sweeps)
    if sweeps < 0:
        raise NoConvergenceError(
            f"Jacobi solver did not converge within {max_sweeps} sweeps (dim {n})")
    w = np.diagonal(work).real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], np.ascontiguousarray(vecs[:, order])


def herm_eigvals(m: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    return herm_eig(m, tol=tol)[0]


def singular_values(m: np.ndarray) -> np.ndarray:
    """Singular values (descending) via the spectrum of M^dag M.

    Eigenvalues of the Gram matrix that round to tiny negatives are clamped
    to zero before the square root.
    """
    a = _as_matrix(m)
    if a.shape[0] < a.shape[1]:
        a = a.conj().T
    gram = a.conj().T @ a
    w, _ = herm_eig(gram, tol=max(DEFAULT_TOL, 1e-12 * float(np.linalg.norm(gram))))
    return np.sqrt(np.clip(w, 0.0, None))


def trace_norm(m: np.ndarray) -> float:
    """Trace norm ||M||_1 = sum of singular values.

    Hermitian inputs take the equivalent sum-of-|eigenvalue| route, which
    avoids squaring the spectrum and is much sharper for rank-deficient
    differences of states.
    """
    a = _as_matrix(m)
    if a.shape[0] == a.shape[1]:
        scale = 1.0 + float(np.max(np.abs(a))) if a.size else 1.0
        if float(np.max(np.abs(a - a.conj().T))) <= 1e-12 * scale:
            w, _ = herm_eig(a, tol=1e-12 * scale)
            return float(np.sum(np.abs(w)))
    return float(np.sum(singular_values(a)))


def is_psd(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True when the Hermitian matrix has no eigenvalue below -tol."""
    w, _ = herm_eig(m, tol=max(tol, DEFAULT_TOL))
    return bool(w[-1] >= -tol)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product in the row-major convention (first factor most significant)."""
    return np.kron(np.asarray(a, dtype=np.complex128),
                   np.asarray(b, dtype=np.complex128))


def partial_trace(m: np.ndarray, structure: StructureLike,
                  keep: Iterable[int]) -> np.ndarray:
    """Trace out all factors not listed in `keep` (0-based factor indices).

    The result keeps the surviving factors in their original order.
    """
    a = _as_matrix(m)
    dims = _factors(structure)
    _check_structure(a, dims)
    nfac = len(dims)
    kept = sorted(set(int(k) for k in keep))
    for k in kept:
        if k < 0 or k >= nfac:
            raise ValueError(f"keep index {k} outside factor range 0..{nfac - 1}")
    rows = [chr(ord("a") + i) for i in range(nfac)]
    cols = [chr(ord("A") + i) if i in kept else rows[i] for i in range(nfac)]
    out = "".join(rows[i] for i in kept) + "".join(cols[i] for i in kept)
    sub = "".join(rows) + "".join(cols) + "->" + out
    tensor = a.reshape(dims + dims)
    reduced = np.einsum(sub, tensor)
    d_out = 1
    for i in kept:
        d_out *= dims[i]
    return np.ascontiguousarray(reduced.reshape(d_out, d_out))


def partial_transpose(m: np.ndarray, structure: StructureLike,
                      transposed: Iterable[int]) -> np.ndarray:
    """Transpose the listed factors (0-based indices); pure re-indexing."""
    a = _as_matrix(m)
    dims = _factors(structure)
    _check_structure(a, dims)
    nfac = len(dims)
    marked = sorted(set(int(t) for t in transposed))
    for t in marked:
        if t < 0 or t >= nfac:
            raise ValueError(f"transpose index {t} outside factor range 0..{nfac - 1}")
    axes = list(range(2 * nfac))
    for t in marked:
        axes[t], axes[nfac + t] = axes[nfac + t], axes[t]
    tensor = a.reshape(dims + dims)
    return np.ascontiguousarray(tensor.transpose(axes).reshape(a.shape))
