"""Deterministic data series behind the figure CSVs (ids 4..13).

Every figure is a pure formula sweep over a configurable grid; no RNG is
involved, so regenerating a CSV is byte-identical.  Rows carry
(x, curve label, y, domain_ok) and are sorted by (label, x); values are
rendered with %.12g, booleans as true/false, and NaN as nan.
"""

from __future__ import annotations

import copy
import json
import math
import os

import numpy as np

from . import bounds

FIGURE_IDS = tuple(range(4, 14))

CSV_HEADER = "x,label,y,domain_ok"

DEFAULT_CONFIG = {
    "eps_grid": {"start": 1e-4, "stop": 0.45, "points": 200, "spacing": "log"},
    "fig4": {"dk": [2, 4, 8, 16], "theta_points": 200},
    "fig5": {"s_a": 1.0, "e_c": 1.0, "points": 201},
    "fig6": {"dk": [2, 4, 8, 16]},
    "fig7": {"dk": [2, 4, 8, 16]},
    "fig8": {"ds": [2, 4, 8, 16, 32]},
    "fig10": {"ds": [2, 4, 8, 16, 32, 64, 128, 256, 512, 1024]},
    "fig11": {"dk": [2, 3, 4]},
    "fig12": {"dk": [2, 4, 8, 16]},
    "fig13": {"dk": [2, 3, 4]},
}

FIG10_REFERENCE_DS = 64  # reported for comparison in the summary, never asserted


class UnknownFigure(ValueError):
    pass


class BadGrid(ValueError):
    pass


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise BadGrid(msg)


def _check_dim_list(values, smallest: int, key: str) -> list:
    _require(isinstance(values, (list, tuple)) and len(values) > 0,
             f"{key} must be a non-empty list of integers")
    out = []
    for v in values:
        _require(isinstance(v, int) and not isinstance(v, bool) and v >= smallest,
                 f"{key} entries must be integers >= {smallest}, got {v!r}")
        out.append(v)
    _require(len(set(out)) == len(out), f"{key} entries must be distinct")
    return out


def load_config(user: dict | None = None) -> dict:
    """Defaults overlaid with a user dict (one nesting level), then validated."""
    cfg = copy.deepcopy(DEFAULT_CONFIG)
    if user is not None:
        _require(isinstance(user, dict), "config must be a JSON object")
        for key, val in user.items():
            _require(key in cfg, f"unknown config key {key!r}")
            _require(isinstance(val, dict), f"config key {key!r} must map to an object")
            for sub, subval in val.items():
                _require(sub in cfg[key], f"unknown config key {key}.{sub}")
                cfg[key][sub] = subval
    g = cfg["eps_grid"]
    _require(isinstance(g["points"], int) and g["points"] >= 2,
             "eps_grid.points must be an integer >= 2")
    _require(isinstance(g["start"], (int, float)) and isinstance(g["stop"], (int, float)),
             "eps_grid.start/stop must be numbers")
    _require(0.0 < g["start"] < g["stop"], "eps_grid needs 0 < start < stop")
    _require(g["spacing"] in ("log", "linear"), "eps_grid.spacing must be log or linear")
    f4 = cfg["fig4"]
    f4["dk"] = _check_dim_list(f4["dk"], 2, "fig4.dk")
    _require(isinstance(f4["theta_points"], int) and f4["theta_points"] >= 2,
             "fig4.theta_points must be an integer >= 2")
    f5 = cfg["fig5"]
    _require(isinstance(f5["points"], int) and f5["points"] >= 2,
             "fig5.points must be an integer >= 2")
    for field in ("s_a", "e_c"):
        _require(isinstance(f5[field], (int, float)) and f5[field] > 0,
                 f"fig5.{field} must be a positive number")
    for key, smallest in (("fig6", 2), ("fig7", 2), ("fig11", 2), ("fig12", 2),
                          ("fig13", 2)):
        cfg[key]["dk"] = _check_dim_list(cfg[key]["dk"], smallest, f"{key}.dk")
    for key in ("fig8", "fig10"):
        cfg[key]["ds"] = _check_dim_list(cfg[key]["ds"], 1, f"{key}.ds")
    return cfg


def load_config_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            user = json.load(fh)
        except json.JSONDecodeError as exc:
            raise BadGrid(f"config file is not valid JSON: {exc}") from exc
    return load_config(user)


def _eps_grid(cfg: dict) -> np.ndarray:
    g = cfg["eps_grid"]
    if g["spacing"] == "log":
        return np.geomspace(g["start"], g["stop"], g["points"])
    return np.linspace(g["start"], g["stop"], g["points"])


def _rows_fig4(cfg: dict) -> list:
    rows = []
    for d_k in cfg["fig4"]["dk"]:
        top = 2.0 * math.log2(d_k)
        thetas = np.linspace(0.0, top, cfg["fig4"]["theta_points"] + 1)[:-1]
        for theta in thetas:
            r = bounds.thm1_overhead_fraction(d_k, float(theta))
            rows.append((float(theta), f"dk={d_k}", r.value, r.domain_ok))
    return rows


def _rows_fig5(cfg: dict) -> list:
    s_a = float(cfg["fig5"]["s_a"])
    e_c = float(cfg["fig5"]["e_c"])
    rows = []
    for e_d in np.linspace(0.0, s_a, cfg["fig5"]["points"]):
        chain = bounds.fig5_chain(s_a, float(e_d), e_c)
        for label, r in (("eq20", chain.eq20), ("eq21", chain.eq21),
                         ("eq22", chain.eq22)):
            rows.append((float(e_d), label, r.value, r.domain_ok))
    return rows


def _rows_by_dk(cfg: dict, key: str, fn) -> list:
    rows = []
    for d_k in cfg[key]["dk"]:
        for eps in _eps_grid(cfg):
            r = fn(d_k, float(eps))
            rows.append((float(eps), f"dk={d_k}", r.value, r.domain_ok))
    return rows


def _rows_fig8(cfg: dict) -> list:
    rows = []
    for d_s in cfg["fig8"]["ds"]:
        for eps in _eps_grid(cfg):
            r = bounds.prop1_repeater_bound(float(eps), d_s)
            rows.append((float(eps), f"ds={d_s}", r.value, r.domain_ok))
    return rows


def _rows_fig9(cfg: dict) -> list:
    rows = []
    for eps in _eps_grid(cfg):
        r = bounds.thm4_overhead_fraction(float(eps))
        rows.append((float(eps), "dk=2", r.value, r.domain_ok))
    return rows


def _rows_fig10(cfg: dict) -> list:
    rows = []
    for d_s in cfg["fig10"]["ds"]:
        for eps in _eps_grid(cfg):
            r = bounds.thm4_gap(float(eps), d_s)
            rows.append((float(eps), f"ds={d_s}", r.value, r.domain_ok))
    return rows


def _rows_fig11(cfg: dict) -> list:
    rows = []
    for d_k in cfg["fig11"]["dk"]:
        for eps in _eps_grid(cfg):
            d_s = bounds.min_ds_for_eps(d_k, float(eps))
            r = bounds.prop2_repeater_bound(float(eps), d_k, d_s)
            rows.append((float(eps), f"dk={d_k}", r.value, r.domain_ok))
    return rows


def _rows_fig13(cfg: dict) -> list:
    rows = []
    for d_k in cfg["fig13"]["dk"]:
        for eps in _eps_grid(cfg):
            d_s = bounds.min_ds_for_eps(d_k, float(eps))
            r = bounds.thm5_gap(d_k, d_s, float(eps))
            rows.append((float(eps), f"dk={d_k}", r.value, r.domain_ok))
    return rows


def figure_rows(fig_id: int, config: dict | None = None) -> list:
    """Rows (x, label, y, domain_ok) for one figure, sorted by (label, x)."""
    if fig_id not in FIGURE_IDS:
        raise UnknownFigure(f"figure id must be one of {list(FIGURE_IDS)}, got {fig_id}")
    cfg = config if config is not None else load_config()
    builders = {
        4: _rows_fig4,
        5: _rows_fig5,
        6: lambda c: _rows_by_dk(c, "fig6", bounds.thm3_overhead_fraction),
        7: lambda c: _rows_by_dk(c, "fig7", bounds.thm3_gap),
        8: _rows_fig8,
        9: _rows_fig9,
        10: _rows_fig10,
        11: _rows_fig11,
        12: lambda c: _rows_by_dk(c, "fig12", bounds.thm5_overhead_fraction),
        13: _rows_fig13,
    }
    rows = builders[fig_id](cfg)
    rows.sort(key=lambda r: (r[1], r[0]))
    return rows


def render_csv(rows: list) -> str:
    lines = [CSV_HEADER]
    for x, label, y, ok in rows:
        flag = "true" if ok else "false"
        lines.append(f"{x:.12g},{label},{y:.12g},{flag}")
    return "\n".join(lines) + "\n"


def fig10_sign_summary(config: dict | None = None) -> str:
    """Per shield dimension: does any in-domain grid point give a positive gap?

    The lowest such dimension is computed from the grid; the reference value
    64 is printed alongside for comparison but never asserted.
    """
    cfg = config if config is not None else load_config()
    lines = ["thm4 gap sign over the in-domain eps grid:"]
    first_positive = None
    for d_s in sorted(cfg["fig10"]["ds"]):
        best = None
        best_eps = None
        for eps in _eps_grid(cfg):
            r = bounds.thm4_gap(float(eps), d_s)
            if r.domain_ok and not math.isnan(r.value):
                if best is None or r.value > best:
                    best, best_eps = r.value, float(eps)
        if best is None:
            lines.append(f"  ds={d_s}: no in-domain grid point")
            continue
        verdict = "positive" if best > 0 else "non-positive"
        lines.append(f"  ds={d_s}: max gap {best:.6g} at eps={best_eps:.6g} ({verdict})")
        if best > 0 and first_positive is None:
            first_positive = d_s
    computed = "none in grid" if first_positive is None else str(first_positive)
    lines.append(f"lowest grid ds with positive in-domain gap: {computed}")
    lines.append(f"reference value for comparison (not asserted): ds={FIG10_REFERENCE_DS}")
    return "\n".join(lines)


def emit_figures(ids, out_dir: str, config: dict | None = None) -> dict:
    """Write fig<N>.csv for each id; returns {fig_id: path}."""
    cfg = config if config is not None else load_config()
    ids = list(ids)
    for fig_id in ids:
        if fig_id not in FIGURE_IDS:
            raise UnknownFigure(
                f"figure id must be one of {list(FIGURE_IDS)}, got {fig_id}")
    os.makedirs(out_dir, exist_ok=True)
    written = {}
    for fig_id in ids:
        text = render_csv(figure_rows(fig_id, cfg))
        path = os.path.join(out_dir, f"fig{fig_id}.csv")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        written[fig_id] = path
    return written
