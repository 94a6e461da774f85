"""Entropic and distance measures for key/shield states.

All logarithms are base 2; entropies and rates are in bits.
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from . import states
from .linalg import StructureLike, herm_eig, partial_trace, trace_norm
from .states import KeyShieldState, check_density

EIG_FLOOR = 1e-12


class FlagMissingError(ValueError):
    """Operation requires a provenance flag the state does not carry."""


def binary_entropy(p: float) -> float:
    """h(p) = -p log2 p - (1-p) log2 (1-p) on [0, 1]."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"binary entropy needs p in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return float(-p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p))


def von_neumann_entropy(rho: np.ndarray, tol: float = states.VALIDATION_TOL) -> float:
    """S(rho) = -sum_k p_k log2 p_k over eigenvalues above the 1e-12 floor."""
    rho = check_density(rho, tol=tol)
    w, _ = herm_eig(rho, tol=tol)
    s = 0.0
    for p in w:
        if p >= EIG_FLOOR:
            s -= p * math.log2(p)
    return max(float(s), 0.0)


def coherent_information(rho: np.ndarray, structure: StructureLike,
                         a_factors: Iterable[int]) -> float:
    """I(A>B) = S(B) - S(AB) with A the listed factors, B the rest."""
    from .linalg import TensorStructure

    dims = structure.factor_dims if isinstance(structure, TensorStructure) \
        else tuple(int(d) for d in structure)
    a_set = set(int(a) for a in a_factors)
    if not a_set or not a_set < set(range(len(dims))):
        raise ValueError("a_factors must be a nonempty proper subset of the factors")
    keep = [i for i in range(len(dims)) if i not in a_set]
    rho_b = partial_trace(rho, dims, keep)
    return von_neumann_entropy(rho_b) - von_neumann_entropy(rho)


def log_negativity(state: KeyShieldState) -> float:
    """log2 || rho^Gamma ||_1 with Gamma over Bob's key and shield factors."""
    return float(math.log2(trace_norm(states.state_pt(state))))


def hashing_bound_private(state: KeyShieldState) -> float:
    """Distillable-key lower bound log2 d_k + (1/d_k) sum_i I(A'>B') of the
    conditional shields.

    Only meaningful for states constructed as private; requires the
    private_by_construction flag.
    """
    if not state.flags.private_by_construction:
        raise FlagMissingError(
            "hashing bound needs a state flagged private_by_construction")
    acc = 0.0
    for i in range(state.d_k):
        sigma_i = states.conditional_shield(state, i)
        acc += coherent_information(sigma_i, (state.d_s, state.d_s), (0,))
    return float(math.log2(state.d_k) + acc / state.d_k)


def attacked_distance(state: KeyShieldState) -> tuple[float, float]:
    """Both routes to || gamma^Gamma - gamma_hat^Gamma ||_1.

    Returns (global_norm, block_sum):
      global_norm evaluates the full partially transposed difference against
      the key-attacked state;
      block_sum evaluates sum_{i != j} (1/d_k) ||X_ij^Gamma||_1 from the
      stored twisting witness when present, else from the raw A_{ii,jj}
      blocks (the 1/d_k already absorbed).

    The two agree for private states; on generic states only global_norm
    accounts for blocks outside the A_{ii,jj} family.
    """
    attacked = states.key_attack(state)
    diff = state.matrix - attacked.matrix
    global_norm = trace_norm(
        states.state_pt(KeyShieldState(diff, state.d_k, state.d_s)))

    block_sum = 0.0
    if state.witness is not None:
        us, sigma = state.witness.unitaries, state.witness.shield
        for i in range(state.d_k):
            for j in range(state.d_k):
                if i == j:
                    continue
                x = us[i] @ sigma @ us[j].conj().T
                block_sum += trace_norm(states.shield_pt(x, state.d_s)) / state.d_k
    else:
        for i in range(state.d_k):
            for j in range(state.d_k):
                if i == j:
                    continue
                a = states.block(state, i, i, j, j)
                block_sum += trace_norm(states.shield_pt(a, state.d_s))
    return float(global_norm), float(block_sum)
