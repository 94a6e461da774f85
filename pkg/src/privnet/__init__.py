"""privnet: private-state toolkit for hybrid quantum network links.

Builds key/shield states (private states, swap-pbits, attacked states),
measures them (entropies, coherent information, hashing bound, attacked
distance), evaluates the closed-form memory-overhead and repeater-rate
bound catalog, verifies the underlying identities and inequalities
numerically, emits figure data, and plans shield sizes — all on top of a
small dense Hermitian eigensolver with a numba kernel and a pure-numpy
fallback (select with the PRIVNET_BACKEND environment variable).
"""

from ._kernels import active_backend, requested_backend
from .linalg import (
    NoConvergenceError,
    NotHermitianError,
    StructureMismatchError,
    TensorStructure,
    herm_eig,
    herm_eigvals,
    is_psd,
    kron,
    partial_trace,
    partial_transpose,
    singular_values,
    trace_norm,
)
from .states import (
    KeyShieldFlags,
    KeyShieldState,
    NotDensityError,
    NotUnitaryError,
    PrivateStateSpec,
    ZeroBlockError,
    apply_fact1,
    block,
    conditional_shield,
    diag_key,
    key_attack,
    key_pair_projector,
    load_state,
    max_entangled,
    privacy_squeeze_pair,
    private_state,
    random_density,
    random_private_state,
    random_separable,
    random_unitary,
    save_state,
    shield_pt,
    state_pt,
    swap_pbit,
)
from .measures import (
    FlagMissingError,
    attacked_distance,
    binary_entropy,
    coherent_information,
    hashing_bound_private,
    log_negativity,
    von_neumann_entropy,
)
from .bounds import BoundResult, Fig5Chain, min_ds_for_eps
from .scheme import Scheme, build_scheme_from_pbit, homomorphic_extend
from .verify import CheckReport, run_all
from .planner import InfeasibleError, plan_all, plan_family

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "CheckReport",
    "Fig5Chain",
    "FlagMissingError",
    "InfeasibleError",
    "KeyShieldFlags",
    "KeyShieldState",
    "NoConvergenceError",
    "NotDensityError",
    "NotHermitianError",
    "NotUnitaryError",
    "PrivateStateSpec",
    "Scheme",
    "StructureMismatchError",
    "TensorStructure",
    "ZeroBlockError",
    "active_backend",
    "apply_fact1",
    "attacked_distance",
    "binary_entropy",
    "block",
    "build_scheme_from_pbit",
    "coherent_information",
    "conditional_shield",
    "diag_key",
    "hashing_bound_private",
    "herm_eig",
    "herm_eigvals",
    "homomorphic_extend",
    "is_psd",
    "key_attack",
    "key_pair_projector",
    "kron",
    "load_state",
    "log_negativity",
    "max_entangled",
    "min_ds_for_eps",
    "partial_trace",
    "partial_transpose",
    "plan_all",
    "plan_family",
    "privacy_squeeze_pair",
    "private_state",
    "random_density",
    "random_private_state",
    "random_separable",
    "random_unitary",
    "requested_backend",
    "run_all",
    "save_state",
    "shield_pt",
    "singular_values",
    "state_pt",
    "swap_pbit",
    "trace_norm",
    "von_neumann_entropy",
    "__version__",
]
