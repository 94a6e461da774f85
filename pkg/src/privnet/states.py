"""Key/shield states: twisted private states, swap-pbits, attacks, samplers.

A key/shield state lives on four factors ordered (key_A, key_B, shield_A,
shield_B) with dims (d_k, d_k, d_s, d_s), indexed row-major with the first
factor most significant.  The d_s^2 x d_s^2 sub-block of rho with key bra
(i, j) and key ket (k, l) is written A_{ij,kl}; for a private state only the
blocks A_{ii,jj} = X_ij / d_k survive, where X_ij = U_i sigma U_j^dag for
twisting unitaries U_i and a shield state sigma.

Partial transposition "Gamma" always means transposing Bob's two factors
(key_B and shield_B).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .linalg import (
    TensorStructure,
    is_psd,
    kron,
    partial_transpose,
    trace_norm,
)

VALIDATION_TOL = 1e-9

RngLike = Union[int, np.random.Generator, None]


class NotUnitaryError(ValueError):
    """A declared twisting unitary fails U U^dag = I."""


class NotDensityError(ValueError):
    """A declared density matrix fails PSD or unit-trace validation."""


class ZeroBlockError(ValueError):
    """Requested conditional state has (numerically) zero weight."""


@dataclass(frozen=True)
class KeyShieldFlags:
    """Provenance flags set by trusted constructors, never inferred numerically."""

    private_by_construction: bool = False
    irreducible_by_construction: bool = False
    shields_separable_by_construction: bool = False

    def to_dict(self) -> dict:
        return {
            "private_by_construction": self.private_by_construction,
            "irreducible_by_construction": self.irreducible_by_construction,
            "shields_separable_by_construction": self.shields_separable_by_construction,
        }

    @staticmethod
    def from_dict(d: dict) -> "KeyShieldFlags":
        return KeyShieldFlags(
            private_by_construction=bool(d.get("private_by_construction", False)),
            irreducible_by_construction=bool(d.get("irreducible_by_construction", False)),
            shields_separable_by_construction=bool(
                d.get("shields_separable_by_construction", False)),
        )


@dataclass(frozen=True)
class PrivateStateSpec:
    """Twisting data (U_0..U_{d_k-1}, sigma) defining a private state."""

    d_k: int
    d_s: int
    unitaries: tuple
    shield: np.ndarray


@dataclass(frozen=True)
class KeyShieldState:
    matrix: np.ndarray
    d_k: int
    d_s: int
    flags: KeyShieldFlags = field(default_factory=KeyShieldFlags)
    witness: Optional[PrivateStateSpec] = None

    @property
    def structure(self) -> TensorStructure:
        return TensorStructure((self.d_k, self.d_k, self.d_s, self.d_s))

    @property
    def dim(self) -> int:
        return self.d_k * self.d_k * self.d_s * self.d_s


def _rng(seed: RngLike) -> np.random.Generator:
    return np.random.default_rng(seed)


def _check_unitary(u: np.ndarray, dim: int) -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (dim, dim):
        raise NotUnitaryError(f"unitary must be {dim}x{dim}, got {u.shape}")
    dev = float(np.max(np.abs(u @ u.conj().T - np.eye(dim))))
    if dev > VALIDATION_TOL:
        raise NotUnitaryError(f"max|U U^dag - I| = {dev:.3e} exceeds {VALIDATION_TOL:.1e}")
    return u


def check_density(rho: np.ndarray, tol: float = VALIDATION_TOL) -> np.ndarray:
    """Validate Hermiticity, positivity and unit trace; return complex128 copy."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise NotDensityError(f"density matrix must be square, got shape {rho.shape}")
    if float(np.max(np.abs(rho - rho.conj().T))) > tol:
        raise NotDensityError("density matrix is not Hermitian within tolerance")
    if abs(float(np.trace(rho).real) - 1.0) > tol or abs(float(np.trace(rho).imag)) > tol:
        raise NotDensityError("density matrix trace differs from 1")
    if not is_psd(rho, tol=tol):
        raise NotDensityError("density matrix has an eigenvalue below -tolerance")
    return rho


def _block_slices(d_k: int, ds2: int, i: int, j: int, k: int, l: int):
    row = (i * d_k + j) * ds2
    col = (k * d_k + l) * ds2
    return slice(row, row + ds2), slice(col, col + ds2)


def _check_key_index(state: KeyShieldState, *idx: int) -> None:
    for i in idx:
        if not 0 <= i < state.d_k:
            raise IndexError(f"key index {i} outside 0..{state.d_k - 1}")


def private_state(spec: PrivateStateSpec, *, shields_separable: bool = False,
                  irreducible: bool = False) -> KeyShieldState:
    """Assemble gamma = sum_ij (1/d_k) |ii><jj| (x) U_i sigma U_j^dag.

    `shields_separable` and `irreducible` are caller certifications recorded
    as provenance flags; they are never derived from the matrix.
    """
    d_k, d_s = int(spec.d_k), int(spec.d_s)
    if d_k < 2:
        raise ValueError("private states need a key dimension of at least 2")
    if d_s < 1:
        raise ValueError("shield dimension must be at least 1")
    ds2 = d_s * d_s
    if len(spec.unitaries) != d_k:
        raise NotUnitaryError(f"expected {d_k} twisting unitaries, got {len(spec.unitaries)}")
    us = tuple(_check_unitary(u, ds2) for u in spec.unitaries)
    sigma = check_density(spec.shield)
    if sigma.shape != (ds2, ds2):
        raise NotDensityError(f"shield must be {ds2}x{ds2}, got {sigma.shape}")

    total = d_k * d_k * ds2
    m = np.zeros((total, total), dtype=np.complex128)
    for i in range(d_k):
        xi = us[i] @ sigma
        for j in range(d_k):
            rows, cols = _block_slices(d_k, ds2, i, i, j, j)
            m[rows, cols] = xi @ us[j].conj().T / d_k
    flags = KeyShieldFlags(
        private_by_construction=True,
        irreducible_by_construction=irreducible,
        shields_separable_by_construction=shields_separable,
    )
    witness = PrivateStateSpec(d_k, d_s, us, sigma)
    return KeyShieldState(m, d_k, d_s, flags, witness)


def swap_pbit(d_s: int) -> KeyShieldState:
    """The pbit Omega_{d_s}: d_k = 2, U_0 = identity, U_1 = swap, maximally mixed shield.

    Its conditional shields are separable (sigma = I/d_s^2) and its distillable
    key equals 1 bit, so all provenance flags are set.
    """
    if d_s < 1:
        raise ValueError("shield dimension must be at least 1")
    ds2 = d_s * d_s
    swap = np.zeros((ds2, ds2), dtype=np.complex128)
    for a in range(d_s):
        for b in range(d_s):
            swap[a * d_s + b, b * d_s + a] = 1.0
    spec = PrivateStateSpec(
        d_k=2, d_s=d_s,
        unitaries=(np.eye(ds2, dtype=np.complex128), swap),
        shield=np.eye(ds2, dtype=np.complex128) / ds2,
    )
    return private_state(spec, shields_separable=True, irreducible=True)


def max_entangled(d: int) -> KeyShieldState:
    """|Phi+><Phi+| on d x d, viewed as a trivially shielded (d_s = 1) private state."""
    if d < 2:
        raise ValueError("local dimension must be at least 2")
    one = np.ones((1, 1), dtype=np.complex128)
    spec = PrivateStateSpec(d_k=d, d_s=1, unitaries=tuple(one for _ in range(d)), shield=one)
    return private_state(spec, shields_separable=True, irreducible=True)


def block(state: KeyShieldState, i: int, j: int, k: int, l: int) -> np.ndarray:
    """Copy of the d_s^2 x d_s^2 block A_{ij,kl} (key bra (i,j), key ket (k,l))."""
    _check_key_index(state, i, j, k, l)
    rows, cols = _block_slices(state.d_k, state.d_s * state.d_s, i, j, k, l)
    return state.matrix[rows, cols].copy()


def diag_key(state: KeyShieldState) -> KeyShieldState:
    """Dephase the key part: keep exactly the blocks A_{ij,ij}.

    This is the channel rho -> sum_ij (|ij><ij| (x) I) rho (|ij><ij| (x) I),
    a complete von Neumann measurement of both key registers.  Idempotent and
    trace preserving.
    """
    d_k, ds2 = state.d_k, state.d_s * state.d_s
    out = np.zeros_like(state.matrix)
    for i in range(d_k):
        for j in range(d_k):
            rows, cols = _block_slices(d_k, ds2, i, j, i, j)
            out[rows, cols] = state.matrix[rows, cols]
    return KeyShieldState(out, state.d_k, state.d_s)


def key_attack(state: KeyShieldState) -> KeyShieldState:
    """Eavesdropper's key measurement; for a private state gamma this is
    gamma_hat = sum_i (1/d_k) |ii><ii| (x) X_ii.

    On general states the same map zeroes every block with (i,j) != (k,l),
    which coincides with `diag_key`.
    """
    return diag_key(state)


def conditional_shield(state: KeyShieldState, i: int) -> np.ndarray:
    """Shield state conditioned on key outcome (i, i), normalized to trace 1."""
    _check_key_index(state, i)
    b = block(state, i, i, i, i)
    weight = float(np.trace(b).real)
    if weight <= 1e-12:
        raise ZeroBlockError(f"key outcome ({i},{i}) has zero weight")
    return b / weight


def state_pt(state: KeyShieldState) -> np.ndarray:
    """Partial transpose over Bob's side (key_B and shield_B factors)."""
    return partial_transpose(state.matrix, state.structure, (1, 3))


def shield_pt(x: np.ndarray, d_s: int) -> np.ndarray:
    """Partial transpose of a shield-sized block over its second (B') factor."""
    return partial_transpose(x, (d_s, d_s), (1,))


def privacy_squeeze_pair(state: KeyShieldState, i: int, j: int) -> np.ndarray:
    """Privacy-squeezed 2x2 key matrix for the key pair (i, j).

    Computes rho^Gamma and returns the real symmetric matrix

        [[ ||B(i,j,i,j)||_1, ||B(i,j,j,i)||_1 ],
         [ ||B(i,j,j,i)||_1, ||B(j,i,j,i)||_1 ]]

    built from trace norms of blocks of rho^Gamma.  Those blocks equal
    A_{ij,ij}^Gamma, A_{ii,jj}^Gamma and A_{ji,ji}^Gamma of the input.  For a
    PPT input the result is positive semidefinite; for NPT inputs it need not be.
    """
    _check_key_index(state, i, j)
    if i == j:
        raise ValueError("privacy squeezing needs two distinct key indices")
    pt = state_pt(state)
    ds2 = state.d_s * state.d_s
    tl = pt[_block_slices(state.d_k, ds2, i, j, i, j)]
    tr = pt[_block_slices(state.d_k, ds2, i, j, j, i)]
    br = pt[_block_slices(state.d_k, ds2, j, i, j, i)]
    a, c, b = trace_norm(tl), trace_norm(tr), trace_norm(br)
    return np.array([[a, c], [c, b]], dtype=float)


def key_pair_projector(i: int, j: Optional[int], d_k: int, d_s: int) -> np.ndarray:
    """Diagonal 0/1 projector (|ii><ii| + |jj><jj|) (x) I, or |ii><ii| (x) I when j is None."""
    if not 0 <= i < d_k:
        raise IndexError(f"key index {i} outside 0..{d_k - 1}")
    if j is not None:
        if not 0 <= j < d_k:
            raise IndexError(f"key index {j} outside 0..{d_k - 1}")
        if j == i:
            raise ValueError("key indices must differ (or pass j=None)")
    ds2 = d_s * d_s
    total = d_k * d_k * ds2
    diag = np.zeros(total)
    targets = (i,) if j is None else (i, j)
    for t in targets:
        start = (t * d_k + t) * ds2
        diag[start:start + ds2] = 1.0
    return np.diag(diag).astype(np.complex128)


def apply_fact1(state: KeyShieldState, i: int, j: Optional[int] = None) -> np.ndarray:
    """P rho P for the key-pair projector; exact, since it only masks entries.

    With j given, the result keeps the four blocks A_{ii,ii}, A_{ii,jj},
    A_{jj,ii}, A_{jj,jj}; with j=None only A_{ii,ii} survives.
    """
    _check_key_index(state, i)
    if j is not None:
        _check_key_index(state, j)
        if j == i:
            raise ValueError("key indices must differ (or pass j=None)")
    ds2 = state.d_s * state.d_s
    targets = (i,) if j is None else (i, j)
    idx = np.concatenate([
        np.arange((t * state.d_k + t) * ds2, (t * state.d_k + t + 1) * ds2)
        for t in targets
    ])
    out = np.zeros_like(state.matrix)
    out[np.ix_(idx, idx)] = state.matrix[np.ix_(idx, idx)]
    return out


def random_unitary(d: int, seed: RngLike = None) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian with phase fix."""
    rng = _rng(seed)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def random_density(d: int, seed: RngLike = None, rank: Optional[int] = None) -> np.ndarray:
    """Wishart density matrix G G^dag / tr(G G^dag)."""
    rng = _rng(seed)
    r = d if rank is None else int(rank)
    g = rng.standard_normal((d, r)) + 1j * rng.standard_normal((d, r))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_separable(d_a: int, d_b: int, terms: int = 6,
                     seed: RngLike = None) -> np.ndarray:
    """Convex mixture of product pure states with Dirichlet-uniform weights."""
    rng = _rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    rho = np.zeros((d_a * d_b, d_a * d_b), dtype=np.complex128)
    for w in weights:
        a = rng.standard_normal(d_a) + 1j * rng.standard_normal(d_a)
        b = rng.standard_normal(d_b) + 1j * rng.standard_normal(d_b)
        a /= np.linalg.norm(a)
        b /= np.linalg.norm(b)
        rho += w * kron(np.outer(a, a.conj()), np.outer(b, b.conj()))
    return (rho + rho.conj().T) / 2.0


def random_private_state(d_k: int, d_s: int, seed: RngLike = None) -> KeyShieldState:
    """Private state with Haar twisting unitaries and a Wishart shield."""
    rng = _rng(seed)
    ds2 = d_s * d_s
    spec = PrivateStateSpec(
        d_k=d_k, d_s=d_s,
        unitaries=tuple(random_unitary(ds2, rng) for _ in range(d_k)),
        shield=random_density(ds2, rng),
    )
    return private_state(spec)


def rebuild_from_witness(state: KeyShieldState) -> np.ndarray:
    """Reassemble the matrix from the stored (U_i, sigma) twisting data."""
    if state.witness is None:
        raise ValueError("state carries no twisting witness")
    return private_state(state.witness).matrix


def to_json_dict(state: KeyShieldState) -> dict:
    """Serialize to {d_k, d_s, flags, matrix} with matrix as row-major [re, im] pairs."""
    flat = state.matrix.reshape(-1)
    return {
        "d_k": state.d_k,
        "d_s": state.d_s,
        "flags": state.flags.to_dict(),
        "matrix": [[float(z.real), float(z.imag)] for z in flat],
    }


def from_json_dict(data: dict) -> KeyShieldState:
    try:
        d_k = int(data["d_k"])
        d_s = int(data["d_s"])
        raw = data["matrix"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed state record: {exc}") from exc
    if d_k < 1 or d_s < 1:
        raise ValueError("state dims must be positive")
    total = d_k * d_k * d_s * d_s
    if len(raw) != total * total:
        raise ValueError(
            f"matrix has {len(raw)} entries, expected {total * total} for dims "
            f"d_k={d_k}, d_s={d_s}")
    flat = np.array([complex(re, im) for re, im in raw], dtype=np.complex128)
    flags = KeyShieldFlags.from_dict(data.get("flags", {}))
    return KeyShieldState(flat.reshape(total, total), d_k, d_s, flags)


def save_state(state: KeyShieldState, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json_dict(state), fh)


def load_state(path) -> KeyShieldState:
    with open(path, "r", encoding="utf-8") as fh:
        return from_json_dict(json.load(fh))
