"""Closed-form bound catalog: memory-overhead fractions, repeater-rate
ceilings, shield-size floors and key-rate floors.

Each operation returns a BoundResult.  Evaluating a formula outside its
validity domain never raises: the value is still computed when finite
(NaN otherwise) and domain_ok is set False with a short note.  Only
structurally meaningless arguments (non-positive dims, eps <= 0 where a
square root or logarithm needs it) raise ValueError.

Catalog identifiers (thm/lemma/cor/prop/obs/eq/fig numbers) are this
package's stable names for the formula family; the CLI and the planner use
the same vocabulary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .measures import binary_entropy

LOG2E = 1.0 / math.log(2.0)
SHIELD_DIM_CAP = 2 ** 30


@dataclass(frozen=True)
class BoundResult:
    name: str
    value: float
    domain_ok: bool
    domain_note: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "value": self.value,
            "domain_ok": self.domain_ok,
            "domain_note": self.domain_note,
        }


@dataclass(frozen=True)
class Fig5Chain:
    """The three squashed-entanglement-style ceilings of the repeater chain
    and the two crossing abscissas between consecutive ceilings."""

    eq20: BoundResult
    eq21: BoundResult
    eq22: BoundResult
    crossing_sa: float
    crossing_ec: float


def _check_dk(d_k: int) -> int:
    if not isinstance(d_k, (int,)) or d_k < 2:
        raise ValueError(f"key dimension must be an int >= 2, got {d_k!r}")
    return d_k


def _check_ds(d_s: int) -> int:
    if not isinstance(d_s, (int,)) or d_s < 1:
        raise ValueError(f"shield dimension must be an int >= 1, got {d_s!r}")
    return d_s


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if eps <= 0.0 or not math.isfinite(eps):
        raise ValueError(f"eps must be a finite positive real, got {eps}")
    return eps


def cor1_hashing_floor(d_k: int, d_s: int) -> BoundResult:
    """Key floor log2(d_k) - log2(d_s) for maximally mixed shields."""
    _check_dk(d_k)
    _check_ds(d_s)
    return BoundResult("cor1_hashing_floor", math.log2(d_k) - math.log2(d_s), True)


def thm1_overhead_fraction(d_k: int, theta: float) -> BoundResult:
    """V/M floor 1 - 1/(2 - theta/log2(d_k)) for irreducible private links."""
    _check_dk(d_k)
    theta = float(theta)
    cap = 2.0 * math.log2(d_k)
    ok = 0.0 <= theta < cap
    note = "" if ok else f"needs 0 <= theta < 2*log2(d_k) = {cap:g}"
    den = 2.0 - theta / math.log2(d_k)
    value = math.nan if den == 0.0 else 1.0 - 1.0 / den
    return BoundResult("thm1_overhead_fraction", value, ok, note)


def thm2_overhead_fraction(theta: float, log_dim_h: float) -> BoundResult:
    """V/M floor 1/2 - theta/log2(dim_H) for general private links."""
    theta = float(theta)
    log_dim_h = float(log_dim_h)
    if log_dim_h <= 0.0:
        raise ValueError("log_dim_h must be positive")
    ok = theta >= 0.0
    return BoundResult("thm2_overhead_fraction", 0.5 - theta / log_dim_h, ok,
                       "" if ok else "needs theta >= 0")


def fig5_chain(s_a: float, e_d: float, e_c: float) -> Fig5Chain:
    """Ceilings K <= S_A/2 + E_D/2, K <= 2 E_D, K <= E_D/2 + E_c/2, plus the
    crossings E_D = S_A/3 (first pair) and E_D = E_c/3 (second pair)."""
    s_a, e_d, e_c = float(s_a), float(e_d), float(e_c)
    if s_a < 0 or e_c < 0:
        raise ValueError("entropy and cost inputs must be nonnegative")
    ok = 0.0 <= e_d <= s_a
    note = "" if ok else "needs 0 <= E_D <= S_A"
    return Fig5Chain(
        eq20=BoundResult("fig5_eq20", s_a / 2.0 + e_d / 2.0, ok, note),
        eq21=BoundResult("fig5_eq21", 2.0 * e_d, ok, note),
        eq22=BoundResult("fig5_eq22", e_d / 2.0 + e_c / 2.0, ok, note),
        crossing_sa=s_a / 3.0,
        crossing_ec=e_c / 3.0,
    )


def obs2_repeater_bound(eps: float) -> BoundResult:
    """Repeated-key ceiling 2 log2(1 + eps) for a pbit at dephasing distance eps."""
    eps = _check_eps(eps)
    return BoundResult("obs2_repeater_bound", 2.0 * math.log2(1.0 + eps), True)


def obs2_repeater_bound_linearized(eps: float) -> BoundResult:
    """First-order form (2/ln 2) eps; always >= the exact ceiling."""
    eps = _check_eps(eps)
    return BoundResult("obs2_repeater_bound_linearized", 2.0 * eps * LOG2E, True)


def lemma1_min_shield(d_k: int, eps: float) -> BoundResult:
    """Shield floor d_s >= (d_k - 1)/eps for PSD-shield private states."""
    _check_dk(d_k)
    eps = _check_eps(eps)
    ok = eps <= float(d_k - 1)
    return BoundResult("lemma1_min_shield", (d_k - 1) / eps, ok,
                       "" if ok else "attack distance cannot exceed d_k - 1")


def thm3_overhead_fraction(d_k: int, eps: float) -> BoundResult:
    """V/M floor 1 - log2(d_k)/(log2(d_k) + log2((d_k-1)/eps))."""
    _check_dk(d_k)
    eps = _check_eps(eps)
    ok = eps < float(d_k - 1)
    note = "" if ok else "needs eps < d_k - 1"
    lk = math.log2(d_k)
    value = 1.0 - lk / (lk + math.log2((d_k - 1) / eps))
    return BoundResult("thm3_overhead_fraction", value, ok, note)


def thm3_gap(d_k: int, eps: float) -> BoundResult:
    """eta - theta = log2(d_k) - 2 log2(1 + eps) for the tight pbit family."""
    _check_dk(d_k)
    eps = _check_eps(eps)
    return BoundResult("thm3_gap", math.log2(d_k) - 2.0 * math.log2(1.0 + eps), True)


def eq29_distance_floor(d_s: int) -> BoundResult:
    """PPT distance floor 1/(2 (d_s + 1)) for key-attacked pbits."""
    _check_ds(d_s)
    return BoundResult("eq29_distance_floor", 1.0 / (2.0 * (d_s + 1)), True)


def eq29_min_shield(eps: float) -> BoundResult:
    """Inversion of the floor: d_s >= (1 - 2 eps)/(2 eps)."""
    eps = _check_eps(eps)
    ok = eps < 0.5
    return BoundResult("eq29_min_shield", (1.0 - 2.0 * eps) / (2.0 * eps), ok,
                       "" if ok else "floor is vacuous for eps >= 1/2")


def prop1_repeater_bound(eps: float, d_s: int) -> BoundResult:
    """Two-way repeater ceiling for pbits eps-close (trace norm) to PPT:

        2 (sqrt(eps) + 3/2 eps)(1 + log2 d_s)
          + (1 + 2 sqrt(eps) + 3 eps) h((2 sqrt(eps) + 3 eps)/(1 + 2 sqrt(eps) + 3 eps))

    valid for eps >= 1/(2 (d_s + 1)) (no pbit sits closer to PPT than that).
    """
    eps = _check_eps(eps)
    _check_ds(d_s)
    floor = 1.0 / (2.0 * (d_s + 1))
    ok = eps >= floor
    note = "" if ok else f"needs eps >= 1/(2(d_s+1)) = {floor:g}"
    xi = 2.0 * (math.sqrt(eps) + 1.5 * eps)
    value = xi * (1.0 + math.log2(d_s)) + (1.0 + xi) * binary_entropy(xi / (1.0 + xi))
    return BoundResult("prop1_repeater_bound", value, ok, note)


def thm4_eta(eps: float) -> BoundResult:
    """Key floor eta = 1 - 8 eps - 4 h(eps) surviving an eps-sized PPT gap."""
    eps = _check_eps(eps)
    ok = eps < 0.5
    note = "" if ok else "needs eps < 1/2"
    value = math.nan if eps > 1.0 else 1.0 - 8.0 * eps - 4.0 * binary_entropy(eps)
    return BoundResult("thm4_eta", value, ok, note)


def thm4_overhead_fraction(eps: float) -> BoundResult:
    """V/M floor 1 - [1 + (1 + eps/2) h((eps/2)/(1 + eps/2))]
                   / [1 + log2((1 - 2 eps)/(2 eps))] - eps/2.

    The denominator is a shield-size lower bound and must stay positive,
    which confines the formula to eps < 1/3.
    """
    eps = _check_eps(eps)
    if eps >= 0.5:
        return BoundResult("thm4_overhead_fraction", math.nan, False,
                           "needs eps < 1/2")
    den = 1.0 + math.log2((1.0 - 2.0 * eps) / (2.0 * eps))
    ok = den > 0.0
    note = "" if ok else "shield floor log2((1-2eps)/(2eps)) + 1 must be positive (eps < 1/3)"
    half = eps / 2.0
    num = 1.0 + (1.0 + half) * binary_entropy(half / (1.0 + half))
    value = math.nan if den == 0.0 else 1.0 - num / den - half
    return BoundResult("thm4_overhead_fraction", value, ok, note)


def thm4_gap(eps: float, d_s: int) -> BoundResult:
    """thm4_eta(eps) - prop1_repeater_bound(eps, d_s)."""
    eta = thm4_eta(eps)
    theta = prop1_repeater_bound(eps, d_s)
    ok = eta.domain_ok and theta.domain_ok
    note = theta.domain_note or eta.domain_note
    return BoundResult("thm4_gap", eta.value - theta.value, ok, note)


def lemma2_min_shield(d_k: int, eps: float) -> BoundResult:
    """Shield floor d_s >= ((d_k - 1)/eps)(1 - eps d_k) against PPT attackers."""
    _check_dk(d_k)
    eps = _check_eps(eps)
    ok = eps < 1.0 / d_k
    return BoundResult("lemma2_min_shield", ((d_k - 1) / eps) * (1.0 - eps * d_k), ok,
                       "" if ok else "floor is vacuous for eps >= 1/d_k")


def cor2_distance_floor(d_k: int, d_s: int) -> BoundResult:
    """PPT distance floor (d_k - 1)/(d_s + d_k (d_k - 1)) for private states."""
    _check_dk(d_k)
    _check_ds(d_s)
    return BoundResult("cor2_distance_floor",
                       (d_k - 1) / (d_s + d_k * (d_k - 1)), True)


def cor3_offblock_ceiling(eps: float) -> BoundResult:
    """||A_{01,10}^Gamma||_1 <= eps/2 for PPT states eps-close to a pbit."""
    eps = _check_eps(eps)
    return BoundResult("cor3_offblock_ceiling", eps / 2.0, True)


def prop2_repeater_bound(eps: float, d_k: int, d_s: int) -> BoundResult:
    """Two-way repeater ceiling for general private states eps-close to PPT:

        2 (sqrt(eps) + eps) log2(d_k d_s)
          + (1 + 2 sqrt(eps) + 2 eps) h((sqrt(eps) + eps)/(1/2 + sqrt(eps) + eps))

    valid for eps >= (d_k - 1)/(d_s + d_k (d_k - 1)).
    """
    eps = _check_eps(eps)
    _check_dk(d_k)
    _check_ds(d_s)
    floor = (d_k - 1) / (d_s + d_k * (d_k - 1))
    ok = eps >= floor
    note = "" if ok else f"needs eps >= (d_k-1)/(d_s+d_k(d_k-1)) = {floor:g}"
    root = math.sqrt(eps) + eps
    value = (2.0 * root * math.log2(d_k * d_s)
             + (1.0 + 2.0 * root) * binary_entropy(root / (0.5 + root)))
    return BoundResult("prop2_repeater_bound", value, ok, note)


def thm5_eta(d_k: int, eps: float) -> BoundResult:
    """Key floor eta = log2(d_k)(1 - 8 eps) - 4 h(eps); reduces to thm4_eta at d_k = 2."""
    _check_dk(d_k)
    eps = _check_eps(eps)
    ok = eps < 1.0 / d_k
    note = "" if ok else "needs eps < 1/d_k"
    value = math.nan if eps > 1.0 else \
        math.log2(d_k) * (1.0 - 8.0 * eps) - 4.0 * binary_entropy(eps)
    return BoundResult("thm5_eta", value, ok, note)


def thm5_overhead_fraction(d_k: int, eps: float) -> BoundResult:
    """V/M floor 1 - eps/2 - [log2(d_k) + (1 + eps/2) h((eps/2)/(1 + eps/2))]
                            / [log2(d_k) + log2((d_k-1)/eps) + log2(1 - eps d_k)].

    Needs eps < 1/d_k for the last logarithm and a positive denominator
    (the denominator lower-bounds log2 of the total dimension).
    """
    _check_dk(d_k)
    eps = _check_eps(eps)
    if eps >= 1.0 / d_k:
        return BoundResult("thm5_overhead_fraction", math.nan, False,
                           "needs eps < 1/d_k")
    lk = math.log2(d_k)
    den = lk + math.log2((d_k - 1) / eps) + math.log2(1.0 - eps * d_k)
    ok = den > 0.0
    note = "" if ok else "shield floor log2(d_k d_s_min) must be positive"
    half = eps / 2.0
    num = lk + (1.0 + half) * binary_entropy(half / (1.0 + half))
    value = math.nan if den == 0.0 else 1.0 - half - num / den
    return BoundResult("thm5_overhead_fraction", value, ok, note)


def thm5_gap(d_k: int, d_s: int, eps: float) -> BoundResult:
    """thm5_eta(d_k, eps) - prop2_repeater_bound(eps, d_k, d_s)."""
    eta = thm5_eta(d_k, eps)
    theta = prop2_repeater_bound(eps, d_k, d_s)
    ok = eta.domain_ok and theta.domain_ok
    note = theta.domain_note or eta.domain_note
    return BoundResult("thm5_gap", eta.value - theta.value, ok, note)


def min_ds_for_eps(d_k: int, eps: float) -> int:
    """Smallest integer shield dimension satisfying the lemma2 floor:
    ceil((d_k - 1 - eps d_k (d_k - 1))/eps), clamped to >= 1.

    The ceiling is guarded against float noise so that exactly attainable
    quotients are not bumped to the next integer.
    """
    _check_dk(d_k)
    eps = _check_eps(eps)
    q = (d_k - 1 - eps * d_k * (d_k - 1)) / eps
    return max(1, int(math.ceil(q - 1e-9)))
