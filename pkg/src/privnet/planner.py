"""Shield-size planning: smallest d_s certifying gap >= target for a family.

Three bound families are supported; each couples a key floor eta with a
repeater ceiling theta as functions of the shield dimension:

  * pbit-omega   — the swap-pbit construction (d_k = 2): eta = 1 and the
                   linearized ceiling theta = (2/ln 2)/d_s.
  * lemma1+obs2  — exact private states (eta = log2 d_k) with the smallest
                   shield allowed by the attacked-distance floor
                   d_s >= (d_k - 1)/eps and the exact ceiling 2 log2(1+eps).
  * lemma2+prop2 — approximate (PPT-attainable) states: eta = thm5_eta and
                   theta = prop2 evaluated at the smallest admissible
                   eps = (d_k - 1)/(d_s + d_k(d_k - 1)).

All three gaps increase with d_s, so the planner searches monotonically and
checks minimality of the returned dimension explicitly.  Results always carry
the reference shield budget of 8 qubits for comparison; it is never asserted.
"""

from __future__ import annotations

import math

from . import bounds

FAMILIES = ("pbit-omega", "lemma1+obs2", "lemma2+prop2")
REFERENCE_SHIELD_QUBITS = 8
_DS_CAP = bounds.SHIELD_DIM_CAP


class InfeasibleError(RuntimeError):
    """No shield dimension up to the cap certifies the requested gap."""


def _shield_qubits(d_s: int) -> int:
    return 0 if d_s <= 1 else int(math.ceil(math.log2(d_s) - 1e-12))


def _overhead_fraction(d_k: int, d_s: int, eta: float) -> float:
    per_link = math.log2(d_k) + math.log2(d_s)
    return (per_link - eta) / per_link


def _check_target(target_gap: float, d_k: int) -> None:
    if not (isinstance(d_k, int) and not isinstance(d_k, bool) and d_k >= 2):
        raise ValueError(f"d_k must be an integer >= 2, got {d_k!r}")
    if not (math.isfinite(target_gap) and target_gap > 0.0):
        raise ValueError(f"target gap must be positive and finite, got {target_gap!r}")
    if target_gap >= math.log2(d_k):
        raise InfeasibleError(
            f"gap {target_gap:g} is out of reach: every family's key floor "
            f"is capped by log2(d_k) = {math.log2(d_k):g}")


def _result(family: str, d_k: int, d_s: int, eps: float, theta: float,
            eta: float) -> dict:
    return {
        "family": family,
        "d_k": d_k,
        "d_s": d_s,
        "shield_qubits": _shield_qubits(d_s),
        "eps": eps,
        "theta": theta,
        "eta": eta,
        "gap": eta - theta,
        "overhead_fraction": _overhead_fraction(d_k, d_s, eta),
    }


def _min_ds_monotone(gap_at, target_gap: float, family: str) -> int:
    """Smallest d_s with gap_at(d_s) >= target, assuming gap_at is nondecreasing."""
    hi = 1
    while gap_at(hi) < target_gap:
        hi *= 2
        if hi > _DS_CAP:
            raise InfeasibleError(
                f"{family}: no shield dimension up to {_DS_CAP} reaches "
                f"gap {target_gap:g}")
    lo = hi // 2  # gap_at(lo) < target (or lo = 0)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if gap_at(mid) >= target_gap:
            hi = mid
        else:
            lo = mid
    if hi > 1 and gap_at(hi - 1) >= target_gap:
        raise AssertionError("shield search lost monotonicity")
    return hi


def plan_pbit_omega(target_gap: float, d_k: int = 2) -> dict:
    """Integer sweep of the swap-pbit gap 1 - (2/ln 2)/d_s."""
    if d_k != 2:
        raise ValueError("the pbit-omega family has a two-dimensional key part; "
                         "use lemma1+obs2 or lemma2+prop2 for d_k > 2")
    _check_target(target_gap, d_k)

    def gap_at(d_s: int) -> float:
        return 1.0 - bounds.obs2_repeater_bound_linearized(1.0 / d_s).value

    d_s = _min_ds_monotone(gap_at, target_gap, "pbit-omega")
    eps = 1.0 / d_s
    theta = bounds.obs2_repeater_bound_linearized(eps).value
    return _result("pbit-omega", 2, d_s, eps, theta, 1.0)


def plan_lemma1_obs2(target_gap: float, d_k: int) -> dict:
    """Exact private states: invert theta = 2 log2(1 + eps) for the eps budget,
    then take the attacked-distance shield floor d_s >= (d_k - 1)/eps."""
    _check_target(target_gap, d_k)
    eta = math.log2(d_k)
    theta_budget = eta - target_gap  # > 0 after _check_target
    eps_star = 2.0 ** (theta_budget / 2.0) - 1.0
    floor = bounds.lemma1_min_shield(d_k, eps_star).value
    d_s = max(1, int(math.ceil(floor - 1e-9)))
    if d_s > _DS_CAP:
        raise InfeasibleError(
            f"lemma1+obs2: shield floor {d_s} exceeds the cap {_DS_CAP}")
    eps = (d_k - 1) / d_s
    theta = bounds.obs2_repeater_bound(eps).value
    if eta - theta < target_gap - 1e-12:
        raise AssertionError("eps inversion missed the gap target")
    return _result("lemma1+obs2", d_k, d_s, eps, theta, eta)


def plan_lemma2_prop2(target_gap: float, d_k: int) -> dict:
    """Approximate states at the PPT distance floor: for each d_s evaluate
    eps = (d_k-1)/(d_s + d_k(d_k-1)), eta = thm5_eta, theta = prop2, and search
    the smallest d_s whose gap clears the target."""
    _check_target(target_gap, d_k)

    def at(d_s: int) -> tuple:
        eps = bounds.cor2_distance_floor(d_k, d_s).value
        eta = bounds.thm5_eta(d_k, eps).value
        theta = bounds.prop2_repeater_bound(eps, d_k, d_s).value
        return eps, eta, theta

    def gap_at(d_s: int) -> float:
        eps, eta, theta = at(d_s)
        return eta - theta

    d_s = _min_ds_monotone(gap_at, target_gap, "lemma2+prop2")
    eps, eta, theta = at(d_s)
    return _result("lemma2+prop2", d_k, d_s, eps, theta, eta)


_PLANNERS = {
    "pbit-omega": plan_pbit_omega,
    "lemma1+obs2": plan_lemma1_obs2,
    "lemma2+prop2": plan_lemma2_prop2,
}


def plan_family(family: str, target_gap: float, d_k: int) -> dict:
    if family not in _PLANNERS:
        raise ValueError(f"unknown family {family!r}; valid: {list(FAMILIES)}")
    return _PLANNERS[family](target_gap, d_k)


def plan_all(target_gap: float, d_k: int) -> dict:
    """Side-by-side results for every family, plus the unasserted reference."""
    per_family = {}
    for family in FAMILIES:
        try:
            per_family[family] = {"feasible": True, **plan_family(family, target_gap, d_k)}
        except InfeasibleError as exc:
            per_family[family] = {"feasible": False, "reason": str(exc)}
        except ValueError as exc:
            per_family[family] = {"feasible": False, "reason": str(exc)}
    return {
        "target_gap": target_gap,
        "d_k": d_k,
        "families": per_family,
        "reference": {
            "reference_shield_qubits": REFERENCE_SHIELD_QUBITS,
            "asserted": False,
            "note": "shield budget quoted for comparison only; the planner "
                    "derives its own minimal dimensions",
        },
    }
