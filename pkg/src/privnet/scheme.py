"""Quantum-memory schemes: a link state held for Delta rounds, with a
certified key-rate floor eta and a repeater-rate ceiling theta.

For a scheme S on a Hilbert space of log2-dimension L = log_dim_h:
    memory        M(S) = Delta * L
    overhead      V(S) = Delta * (L - eta)
    key density   D(S) = eta / L
    gap           G(S) = eta - theta
S is "good" when eta > theta: the network can certify more key across the
link than any unauthorized repeater protocol can push through it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import obs2_repeater_bound_linearized

_MODES = ("one-way", "two-way")


@dataclass(frozen=True)
class Scheme:
    state: str
    log_dim_h: float
    delta: int
    eta: float
    eta_provenance: str
    theta: float
    theta_provenance: str
    mode: str = "one-way"

    def __post_init__(self):
        if not isinstance(self.delta, int) or self.delta < 1:
            raise ValueError(f"delta must be an int >= 1, got {self.delta!r}")
        if not math.isfinite(self.log_dim_h) or self.log_dim_h <= 0.0:
            raise ValueError(f"log_dim_h must be positive, got {self.log_dim_h}")
        if not 0.0 <= self.eta <= self.log_dim_h + 1e-9:
            raise ValueError(
                f"eta must satisfy 0 <= eta <= log_dim_h, got eta={self.eta}, "
                f"log_dim_h={self.log_dim_h}")
        if self.theta < 0.0:
            raise ValueError(f"theta must be nonnegative, got {self.theta}")
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")


def memory(s: Scheme) -> float:
    return s.delta * s.log_dim_h


def overhead(s: Scheme) -> float:
    return s.delta * (s.log_dim_h - s.eta)


def density(s: Scheme) -> float:
    if s.log_dim_h < 1.0:
        raise ValueError("key density is defined for log_dim_h >= 1")
    return s.eta / s.log_dim_h


def gap(s: Scheme) -> float:
    return s.eta - s.theta


def is_good(s: Scheme) -> bool:
    return s.eta > s.theta


def clamp_eta(value: float, log_dim_h: float, provenance: str) -> tuple[float, str]:
    """Clamp a certified key floor into [0, log_dim_h] (both ends are always
    valid floors); note the clamp in the provenance."""
    if value < 0.0:
        return 0.0, provenance + " (clamped to 0: formula went negative)"
    if value > log_dim_h:
        return log_dim_h, provenance + " (clamped to log_dim_h)"
    return value, provenance


def build_scheme_from_pbit(d_s: int, delta: int = 1, mode: str = "one-way") -> Scheme:
    """Scheme holding the swap-pbit Omega_{d_s}: eta = 1 (irreducible pbit)
    and theta = (2/ln 2)/d_s (linearized repeater ceiling at eps = 1/d_s)."""
    if not isinstance(d_s, int) or d_s < 1:
        raise ValueError(f"shield dimension must be an int >= 1, got {d_s!r}")
    theta = obs2_repeater_bound_linearized(1.0 / d_s).value
    return Scheme(
        state=f"pbit-omega:{d_s}",
        log_dim_h=1.0 + math.log2(d_s),
        delta=int(delta),
        eta=1.0,
        eta_provenance="irreducible pbit: distillable key equals 1 bit",
        theta=theta,
        theta_provenance=f"linearized dephasing-distance repeater ceiling at eps = 1/{d_s}",
        mode=mode,
    )


def homomorphic_extend(s: Scheme, a: int) -> tuple[Scheme, dict]:
    """Extend to circuits of multiplicative depth a: the held space grows to
    a * log_dim_h while the certified key floor stays put.

    Returns the extended scheme and a report.  The overhead increase equals
    delta * (a - 1) * log_dim_h by definition; when delta > 1 the report
    flags that the per-round form (a - 1) * log_dim_h omits the delta factor.
    """
    if not isinstance(a, int) or a < 1:
        raise ValueError(f"extension factor must be an int >= 1, got {a!r}")
    extended = Scheme(
        state=s.state + f"|hom:{a}",
        log_dim_h=a * s.log_dim_h,
        delta=s.delta,
        eta=s.eta,
        eta_provenance=s.eta_provenance,
        theta=s.theta,
        theta_provenance=s.theta_provenance,
        mode=s.mode,
    )
    increase = overhead(extended) - overhead(s)
    report = {
        "memory": memory(extended),
        "overhead": overhead(extended),
        "density": density(extended) if extended.log_dim_h >= 1.0 else None,
        "overhead_increase": increase,
        "per_round_increase": (a - 1) * s.log_dim_h,
        "delta_factor_flag": s.delta > 1,
        "note": ("overhead increase scales with delta: "
                 "delta*(a-1)*log_dim_h, not (a-1)*log_dim_h")
                if s.delta > 1 else "",
    }
    return extended, report


def evaluate(s: Scheme) -> dict:
    return {
        "memory": memory(s),
        "overhead": overhead(s),
        "density": density(s),
        "gap": gap(s),
        "is_good": is_good(s),
    }


def scheme_to_dict(s: Scheme) -> dict:
    return {
        "state": s.state,
        "log_dim_H": s.log_dim_h,
        "delta": s.delta,
        "eta": s.eta,
        "eta_provenance": s.eta_provenance,
        "theta": s.theta,
        "theta_provenance": s.theta_provenance,
        "mode": s.mode,
    }


def scheme_from_dict(d: dict) -> Scheme:
    try:
        return Scheme(
            state=str(d["state"]),
            log_dim_h=float(d["log_dim_H"]),
            delta=int(d["delta"]),
            eta=float(d["eta"]),
            eta_provenance=str(d.get("eta_provenance", "")),
            theta=float(d["theta"]),
            theta_provenance=str(d.get("theta_provenance", "")),
            mode=str(d.get("mode", "one-way")),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed scheme record: {exc}") from exc
