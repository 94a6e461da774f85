"""Randomized numerical verification of the state-level identities and
inequalities behind the bound catalog.

Margin convention: every trial reduces to one real margin.
  * inequality lhs >= rhs  ->  margin = lhs - rhs
  * identity   x == y      ->  margin = -|x - y|
  * exact (re-indexing)    ->  margin = 0.0 when bit-equal, else -max|diff|
A trial fails when its margin drops below -PASS_TOL.  worst_margin is the
minimum margin over all trials (None for zero trials).

Each trial draws from its own generator seeded by (seed, check name, trial
index), so reports are reproducible and independent of execution order.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass, field

import numpy as np

from . import states
from .linalg import is_psd, partial_transpose, trace_norm, herm_eig
from .measures import attacked_distance, coherent_information, hashing_bound_private
from .bounds import cor2_distance_floor, lemma2_min_shield
from .states import KeyShieldState, block, state_pt, shield_pt

PASS_TOL = 1e-8
_BISECT_TOL = 1e-10
_BISECT_MAX_ITERS = 60
_MAX_DETAILS = 20


@dataclass
class CheckReport:
    check_name: str
    trials: int
    failures: int
    worst_margin: float | None
    seed: int
    details: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "seed": self.seed,
            "trials": self.trials,
            "failures": self.failures,
            "worst_margin": self.worst_margin,
            "extras": self.extras,
            "details": self.details,
        }


def trial_rng(seed: int, name: str, trial: int) -> np.random.Generator:
    return np.random.default_rng(
        [abs(int(seed)), zlib.crc32(name.encode("utf-8")), int(trial)])


class _Collector:
    def __init__(self, name: str, seed: int):
        self.name = name
        self.seed = int(seed)
        self.trials = 0
        self.failures = 0
        self.worst: float | None = None
        self.details: list = []
        self.extras: dict = {}

    def add(self, margin: float, note: str = "") -> None:
        self.trials += 1
        m = float(margin)
        if self.worst is None or m < self.worst:
            self.worst = m
        if m < -PASS_TOL:
            self.failures += 1
            if len(self.details) < _MAX_DETAILS:
                self.details.append(
                    {"trial": self.trials - 1, "margin": m, "note": note})

    def report(self) -> CheckReport:
        return CheckReport(self.name, self.trials, self.failures, self.worst,
                           self.seed, self.details, self.extras)


def ppt_boundary_mix(gamma: KeyShieldState, target: np.ndarray,
                     tol: float = _BISECT_TOL,
                     max_iters: int = _BISECT_MAX_ITERS) -> tuple[np.ndarray, float, int]:
    """Bisect the segment (1-p) gamma + p target for the smallest PPT mixture.

    `target` must be PPT and `gamma` NPT, so the endpoint verdicts disagree.
    Returns (state at the PPT side of the final bracket, p, iterations).
    """
    struct = gamma.structure
    pt_gamma = state_pt(gamma)
    pt_target = partial_transpose(target, struct, (1, 3))
    if is_psd(pt_gamma):
        raise ValueError("bisection needs an NPT state at p = 0")
    if not is_psd(pt_target):
        raise ValueError("bisection needs a PPT state at p = 1")
    lo, hi = 0.0, 1.0
    iters = 0
    while hi - lo > tol and iters < max_iters:
        mid = (lo + hi) / 2.0
        if is_psd((1.0 - mid) * pt_gamma + mid * pt_target):
            hi = mid
        else:
            lo = mid
        iters += 1
    rho = (1.0 - hi) * gamma.matrix + hi * target
    return rho, hi, iters


def _keyshield_separable(d_k: int, d_s: int, terms: int,
                         rng: np.random.Generator) -> np.ndarray:
    """Alice:Bob-separable state in key/shield factor order.

    random_separable draws product states on a contiguous (A x B) split
    (key_A, shield_A, key_B, shield_B); the key/shield convention interleaves
    the parties as (key_A, key_B, shield_A, shield_B), so permute factors.
    """
    rho = states.random_separable(d_k * d_s, d_k * d_s, terms=terms, seed=rng)
    dims = (d_k, d_s, d_k, d_s)
    perm = (0, 2, 1, 3)
    t = rho.reshape(dims + dims)
    t = t.transpose(perm + tuple(p + 4 for p in perm))
    return np.ascontiguousarray(t.reshape(rho.shape))


def _maximally_mixed_private(d_k: int, d_s: int,
                             rng: np.random.Generator) -> KeyShieldState:
    # Random twisting, maximally mixed shield: every X_ii^Gamma is PSD.
    ds2 = d_s * d_s
    spec = states.PrivateStateSpec(
        d_k=d_k, d_s=d_s,
        unitaries=tuple(states.random_unitary(ds2, rng) for _ in range(d_k)),
        shield=np.eye(ds2, dtype=np.complex128) / ds2,
    )
    return states.private_state(spec, shields_separable=True)


def check_obs1(d_k: int = 2, d_s: int = 2, trials: int = 50,
               seed: int = 42) -> CheckReport:
    """Hashing bound of a private state equals its full-state coherent
    information I(key_A shield_A > key_B shield_B)."""
    col = _Collector(f"obs1[dk={d_k},ds={d_s}]", seed)
    for t in range(trials):
        rng = trial_rng(seed, col.name, t)
        gamma = states.random_private_state(d_k, d_s, rng)
        full = coherent_information(gamma.matrix, gamma.structure, (0, 2))
        hashed = hashing_bound_private(gamma)
        col.add(-abs(full - hashed), f"full={full:.12g} hashing={hashed:.12g}")
    return col.report()


def check_obs3(d_k: int = 2, d_s: int = 2, trials: int = 50,
               seed: int = 42) -> CheckReport:
    """Global and blockwise routes to ||gamma^G - gamma_hat^G||_1 agree."""
    col = _Collector(f"obs3[dk={d_k},ds={d_s}]", seed)
    for t in range(trials):
        rng = trial_rng(seed, col.name, t)
        gamma = states.random_private_state(d_k, d_s, rng)
        g, b = attacked_distance(gamma)
        col.add(-abs(g - b), f"global={g:.12g} blocks={b:.12g}")
    return col.report()


def check_obs4(trials: int = 50, seed: int = 42) -> CheckReport:
    """States eps-close to a private state keep large key-corner blocks
    (||A_ii,jj|| >= 1/d_k - eps) and small key-off-diagonal weight
    (sum_{i!=j} ||A_ij,ij|| <= eps)."""
    col = _Collector("obs4", seed)
    d_k, d_s = 2, 2
    dim = (d_k * d_s) ** 2
    for t in range(trials):
        rng = trial_rng(seed, col.name, t)
        gamma = states.random_private_state(d_k, d_s, rng)
        p = rng.uniform(0.01, 0.35)
        if t % 2 == 0:
            rho = (1.0 - p) * gamma.matrix + p * np.eye(dim) / dim
        else:
            # adversarial: dump weight on the (0,1) key off-diagonal sector
            tau = states.random_density(d_s * d_s, rng)
            noise = np.zeros_like(gamma.matrix)
            rows = slice(1 * d_s * d_s, 2 * d_s * d_s)
            noise[rows, rows] = tau
            rho = (1.0 - p) * gamma.matrix + p * noise
        state = KeyShieldState(rho, d_k, d_s)
        eps = trace_norm(rho - gamma.matrix)
        corner = min(
            trace_norm(block(state, i, i, j, j))
            for i in range(d_k) for j in range(d_k) if i != j)
        offkey = sum(
            trace_norm(block(state, i, j, i, j))
            for i in range(d_k) for j in range(d_k) if i != j)
        m1 = corner - (1.0 / d_k - eps)
        m2 = eps - offkey
        col.add(min(m1, m2), f"corner_margin={m1:.3e} offkey_margin={m2:.3e}")
    return col.report()


def check_lemma1(trials: int = 50, seed: int = 42) -> CheckReport:
    """Shield floor d_s * eps >= d_k - 1 for private states whose X_ii^Gamma
    are PSD; tight (equality) on the swap-pbit family."""
    col = _Collector("lemma1", seed)
    dims = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)]
    omega_dev = 0.0
    omega_trials = 0
    for t in range(trials):
        rng = trial_rng(seed, col.name, t)
        if t % 4 == 3:
            d_s = 2 + (t // 4) % 4
            gamma = states.swap_pbit(d_s)
            d_k = 2
            omega_trials += 1
        else:
            d_k, d_s = dims[t % len(dims)]
            gamma = _maximally_mixed_private(d_k, d_s, rng)
        eps, _ = attacked_distance(gamma)
        margin = d_s * eps - (d_k - 1)
        if t % 4 == 3:
            omega_dev = max(omega_dev, abs(margin))
        col.add(margin, f"dk={d_k} ds={d_s} eps={eps:.12g}")
    col.extras["omega_trials"] = omega_trials
    col.extras["omega_tightness_max_dev"] = omega_dev
    return col.report()


def _ppt_sample(kind: int, rng: np.random.Generator) -> tuple[np.ndarray, int, int]:
    """A PPT state on a key/shield structure; returns (matrix, d_k, d_s)."""
    if kind == 0:
        d_k, d_s = 2, 2
        rho = _keyshield_separable(d_k, d_s, int(rng.integers(3, 9)), rng)
        return rho, d_k, d_s
    if kind == 1:
        d_k, d_s = 2, 2
        gamma = states.random_private_state(d_k, d_s, rng)
        dim = gamma.dim
        rho, _, _ = ppt_boundary_mix(gamma, np.eye(dim) / dim)
        return rho, d_k, d_s
    if kind == 2:
        d_k, d_s = 2, 2
        gamma = states.swap_pbit(d_s)
        sep = _keyshield_separable(d_k, d_s, 5, rng)
        rho, _, _ = ppt_boundary_mix(gamma, sep)
        return rho, d_k, d_s
    d_k, d_s = 2, 3
    gamma = states.random_private_state(d_k, d_s, rng)
    dim = gamma.dim
    rho, _, _ = ppt_boundary_mix(gamma, np.eye(dim) / dim)
    return rho, d_k, d_s


def check_lemma2(trials: int = 50, seed: int = 42) -> CheckReport:
    """PPT states keep trace distance eps from any private state unless
    d_s >= ((d_k-1)/eps)(1 - eps d_k)."""
    col = _Collector("lemma2", seed)
    for t in range(trials):
        rng = trial_rng(seed, col.name, t)
        rho, d_k, d_s = _ppt_sample(t % 4, rng)
        if t % 4 == 2:
            gamma = states.swap_pbit(d_s)
        else:
            gamma = states.random_private_state(d_k, d_s, rng)
        eps = trace_norm(rho - gamma.matrix)
        floor = lemma2_min_shield(d_k, eps).value
        col.add(d_s - floor, f"dk={d_k} ds={d_s} eps={eps:.12g} floor={floor:.12g}")
    return col.report()


def check_cor2_cor3(trials: int = 50, seed: int = 42) -> CheckReport:
    """Against the pbit Omega_2, PPT states satisfy both the distance floor
    eps >= 1/4 and the off-block ceiling ||A_01,10^Gamma||_1 <= eps/2."""
    col = _Collector("cor2_cor3", seed)
    gamma = states.swap_pbit(2)
    floor = cor2_distance_floor(2, 2).value
    hypothesis_holds = 0
    for t in range(trials):
        rng = trial_rng(seed, col.name, t)
        rho, d_k, d_s = _ppt_sample(t % 3, rng)
        state = KeyShieldState(rho, d_k, d_s)
        eps = trace_norm(rho - gamma.matrix)
        offblock = trace_norm(shield_pt(block(state, 0, 1, 1, 0), d_s))
        m1 = eps - floor
        m2 = eps / 2.0 - offblock
        if offblock <= eps + PASS_TOL:
            hypothesis_holds += 1
        col.add(min(m1, m2), f"eps={eps:.12g} offblock={offblock:.12g}")
    col.extras["offblock_leq_eps_count"] = hypothesis_holds
    col.extras["offblock_leq_eps_violations"] = col.trials - hypothesis_holds
    return col.report()


def check_gentle_measurement(trials: int = 50, seed: int = 42,
                             dim: int = 8) -> CheckReport:
    """||sigma - sqrt(H) sigma sqrt(H)||_1 <= 2 sqrt(tr sigma) sqrt(tr sigma (I-H))
    for subnormalized sigma >= 0 and operators 0 <= H <= I."""
    col = _Collector("gentle", seed)
    eye = np.eye(dim)
    for t in range(trials):
        rng = trial_rng(seed, col.name, t)
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        sigma = g @ g.conj().T
        sigma *= rng.uniform(0.3, 1.0) / np.trace(sigma).real
        a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        w, v = herm_eig((a + a.conj().T) / 2.0)
        span = w[0] - w[-1]
        wh = np.full_like(w, 0.5) if span < 1e-12 else (w - w[-1]) / span
        if t % 5 == 4:
            wh = np.round(wh)  # exercise the projector edge case
        sqrt_h = (v * np.sqrt(wh)) @ v.conj().T
        h = (v * wh) @ v.conj().T
        tr_sigma = np.trace(sigma).real
        miss = max(float(np.trace(sigma @ (eye - h)).real), 0.0)
        bound = 2.0 * np.sqrt(tr_sigma) * np.sqrt(miss)
        dist = trace_norm(sigma - sqrt_h @ sigma @ sqrt_h)
        col.add(bound - dist, f"bound={bound:.12g} dist={dist:.12g}")
    return col.report()


def check_fact1(trials: int = 50, seed: int = 42) -> CheckReport:
    """Key-pair projection P rho P equals the explicit four-block (or, for a
    single index, one-block) reassembly, bit for bit."""
    col = _Collector("fact1", seed)
    dims = [(2, 2), (3, 2), (2, 3)]
    for t in range(trials):
        rng = trial_rng(seed, col.name, t)
        d_k, d_s = dims[t % len(dims)]
        ds2 = d_s * d_s
        rho = states.random_density(d_k * d_k * ds2, rng)
        state = KeyShieldState(rho, d_k, d_s)
        pick = rng.permutation(d_k)[:2]
        i, j = int(pick[0]), int(pick[1])
        rhs = np.zeros_like(rho)
        if t % 2 == 0:
            lhs = states.apply_fact1(state, i, j)
            for a in (i, j):
                for b in (i, j):
                    rows, cols = states._block_slices(d_k, ds2, a, a, b, b)
                    rhs[rows, cols] = block(state, a, a, b, b)
        else:
            lhs = states.apply_fact1(state, i)
            rows, cols = states._block_slices(d_k, ds2, i, i, i, i)
            rhs[rows, cols] = block(state, i, i, i, i)
        margin = 0.0 if np.array_equal(lhs, rhs) else -float(np.max(np.abs(lhs - rhs)))
        col.add(margin, f"dk={d_k} ds={d_s} pair=({i},{j})")
    return col.report()


def check_squeeze_psd(trials: int = 50, seed: int = 42) -> CheckReport:
    """For PPT inputs the privacy-squeezed 2x2 matrix is PSD, hence its
    off-diagonal is at most the average of its diagonal."""
    col = _Collector("squeeze_psd", seed)
    for t in range(trials):
        rng = trial_rng(seed, col.name, t)
        rho, d_k, d_s = _ppt_sample(t % 4, rng)
        state = KeyShieldState(rho, d_k, d_s)
        worst = np.inf
        for i in range(d_k):
            for j in range(i + 1, d_k):
                m = states.privacy_squeeze_pair(state, i, j)
                a, b, c = m[0, 0], m[1, 1], m[0, 1]
                lam_min = (a + b) / 2.0 - np.hypot((a - b) / 2.0, c)
                worst = min(worst, lam_min, (a + b) / 2.0 - c)
        col.add(worst, f"dk={d_k} ds={d_s}")
    return col.report()


def check_pt_block_formula(trials: int = 50, seed: int = 42) -> CheckReport:
    """gamma^Gamma reassembled blockwise as sum_ij |ij><ji| (x) X_ij^Gamma
    matches the directly transposed matrix bit for bit."""
    col = _Collector("pt_block", seed)
    dims = [(2, 2), (2, 3), (3, 2)]
    for t in range(trials):
        rng = trial_rng(seed, col.name, t)
        if t % 4 == 3:
            gamma = states.swap_pbit(2 + (t // 4) % 3)
        else:
            d_k, d_s = dims[t % len(dims)]
            gamma = states.random_private_state(d_k, d_s, rng)
        lhs = state_pt(gamma)
        d_k, d_s = gamma.d_k, gamma.d_s
        ds2 = d_s * d_s
        rhs = np.zeros_like(gamma.matrix)
        for i in range(d_k):
            for j in range(d_k):
                rows, cols = states._block_slices(d_k, ds2, i, j, j, i)
                rhs[rows, cols] = shield_pt(block(gamma, i, i, j, j), d_s)
        margin = 0.0 if np.array_equal(lhs, rhs) else -float(np.max(np.abs(lhs - rhs)))
        col.add(margin, f"dk={d_k} ds={d_s}")
    return col.report()


CHECK_NAMES = ("obs1", "obs3", "obs4", "lemma1", "lemma2", "cor2_cor3",
               "gentle", "fact1", "squeeze_psd", "pt_block")


def run_all(seed: int = 42, trials_per_check: int = 50,
            checks=None) -> list[CheckReport]:
    """Run the whole roster (or the named subset) and return the reports."""
    if checks is not None:
        unknown = set(checks) - set(CHECK_NAMES)
        if unknown:
            raise ValueError(
                f"unknown checks: {sorted(unknown)}; valid: {list(CHECK_NAMES)}")
    wanted = set(CHECK_NAMES if checks is None else checks)
    n = trials_per_check
    roster = [
        ("obs1", lambda: [check_obs1(2, 2, n, seed), check_obs1(2, 3, n, seed)]),
        ("obs3", lambda: [check_obs3(2, 2, n, seed), check_obs3(3, 2, n, seed)]),
        ("obs4", lambda: [check_obs4(n, seed)]),
        ("lemma1", lambda: [check_lemma1(n, seed)]),
        ("lemma2", lambda: [check_lemma2(n, seed)]),
        ("cor2_cor3", lambda: [check_cor2_cor3(n, seed)]),
        ("gentle", lambda: [check_gentle_measurement(n, seed)]),
        ("fact1", lambda: [check_fact1(n, seed)]),
        ("squeeze_psd", lambda: [check_squeeze_psd(n, seed)]),
        ("pt_block", lambda: [check_pt_block_formula(n, seed)]),
    ]
    reports: list[CheckReport] = []
    for name, runner in roster:
        if name in wanted:
            reports.extend(runner())
    return reports


def reports_to_json(reports: list[CheckReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def summary_table(reports: list[CheckReport]) -> str:
    lines = [f"{'check':<18} {'trials':>6} {'fail':>5} {'worst margin':>14}  status"]
    for r in reports:
        worst = "-" if r.worst_margin is None else f"{r.worst_margin: .3e}"
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.check_name:<18} {r.trials:>6} {r.failures:>5} {worst:>14}  {status}")
    total_fail = sum(r.failures for r in reports)
    lines.append(f"{'total':<18} {sum(r.trials for r in reports):>6} {total_fail:>5}")
    return "\n".join(lines)
