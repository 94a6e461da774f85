"""Command-line front end: figure CSV emission, verification runs, scheme
evaluation, and shield-size planning.

Exit codes: 0 success; 1 verification failures or an infeasible plan;
2 usage errors (bad arguments, specs, figure ids, or grid configs).
All output is deterministic for fixed inputs: no timestamps, no locale
dependence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import bounds, figures, measures, planner, scheme, states, verify


class BadSpec(ValueError):
    """A --state specification that cannot be parsed or realized."""


def _parse_ids(text: str) -> list:
    if text.strip().lower() == "all":
        return list(figures.FIGURE_IDS)
    ids = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            fid = int(token)
        except ValueError:
            raise figures.UnknownFigure(f"figure id {token!r} is not an integer")
        if fid not in figures.FIGURE_IDS:
            raise figures.UnknownFigure(
                f"figure id must be one of {list(figures.FIGURE_IDS)}, got {fid}")
        if fid not in ids:
            ids.append(fid)
    if not ids:
        raise figures.UnknownFigure("no figure ids given")
    return ids


def _scheme_from_spec(spec_text: str, delta: int, mode: str | None) -> scheme.Scheme:
    kind, sep, rest = spec_text.partition(":")
    if not sep:
        raise BadSpec(
            f"state spec must look like pbit-omega:<ds>, private:<file> or "
            f"params:<dk>,<ds>,<eps>; got {spec_text!r}")
    if kind == "pbit-omega":
        try:
            d_s = int(rest)
        except ValueError:
            raise BadSpec(f"pbit-omega needs an integer shield dimension, got {rest!r}")
        if d_s < 1:
            raise BadSpec(f"shield dimension must be >= 1, got {d_s}")
        return scheme.build_scheme_from_pbit(d_s, delta, mode or "one-way")
    if kind == "private":
        try:
            state = states.load_state(rest)
        except (OSError, ValueError, KeyError) as exc:
            raise BadSpec(f"cannot load state file {rest!r}: {exc}") from exc
        log_dim = math.log2(state.d_k * state.d_s)
        eps, _ = measures.attacked_distance(state)
        if state.flags.irreducible_by_construction:
            eta = math.log2(state.d_k)
            eta_prov = "irreducible private state: distillable key equals log2(d_k)"
        elif state.flags.private_by_construction:
            eta, eta_prov = scheme.clamp_eta(
                measures.hashing_bound_private(state), log_dim,
                "hashing bound of the stored private state")
        else:
            raise BadSpec(
                "state file carries no private-by-construction flag, so no key "
                "floor can be certified; rebuild it from twisting data")
        theta = bounds.obs2_repeater_bound(eps).value
        return scheme.Scheme(
            state=f"private:{rest}",
            log_dim_h=log_dim,
            delta=delta,
            eta=eta,
            eta_provenance=eta_prov,
            theta=theta,
            theta_provenance=("repeater ceiling 2 log2(1+eps) at the measured "
                              f"attacked distance eps = {eps:.6g}"),
            mode=mode or "one-way",
        )
    if kind == "params":
        parts = [t.strip() for t in rest.split(",")]
        if len(parts) != 3:
            raise BadSpec(f"params needs <dk>,<ds>,<eps>, got {rest!r}")
        try:
            d_k, d_s, eps = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise BadSpec(f"params needs two integers and a float, got {rest!r}")
        if d_k < 2 or d_s < 1 or not 0.0 < eps < 1.0:
            raise BadSpec(
                f"params needs dk >= 2, ds >= 1 and 0 < eps < 1, got {rest!r}")
        log_dim = math.log2(d_k * d_s)
        eta_res = bounds.thm5_eta(d_k, eps)
        eta, eta_prov = scheme.clamp_eta(
            eta_res.value, log_dim,
            "two-way key floor log2(d_k)(1 - 8 eps) - 4 h(eps)")
        if not eta_res.domain_ok:
            eta_prov += f" [outside guaranteed domain: {eta_res.domain_note}]"
        theta_res = bounds.prop2_repeater_bound(eps, d_k, d_s)
        theta_prov = "two-way repeater ceiling for eps-approximate private states"
        if not theta_res.domain_ok:
            theta_prov += f" [outside guaranteed domain: {theta_res.domain_note}]"
        return scheme.Scheme(
            state=f"params:{d_k},{d_s},{eps:g}",
            log_dim_h=log_dim,
            delta=delta,
            eta=eta,
            eta_provenance=eta_prov,
            theta=theta_res.value,
            theta_provenance=theta_prov,
            mode=mode or "two-way",
        )
    raise BadSpec(f"unknown state spec kind {kind!r}; "
                  f"expected pbit-omega, private or params")


def cmd_figures(args: argparse.Namespace) -> int:
    ids = _parse_ids(args.ids)
    cfg = figures.load_config_file(args.config) if args.config else figures.load_config()
    written = figures.emit_figures(ids, args.out, cfg)
    for fid in ids:
        print(f"fig{fid}: {written[fid]}")
    if 10 in ids:
        print(figures.fig10_sign_summary(cfg))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.trials < 0:
        raise ValueError(f"--trials must be >= 0, got {args.trials}")
    checks = None
    if args.checks:
        checks = [t.strip() for t in args.checks.split(",") if t.strip()]
    reports = verify.run_all(seed=args.seed, trials_per_check=args.trials,
                             checks=checks)
    print(verify.summary_table(reports))
    if args.json:
        payload = verify.reports_to_json(reports)
        if args.json == "-":
            print(payload)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(payload + "\n")
            print(f"wrote {args.json}")
    return 0 if all(r.failures == 0 for r in reports) else 1


def cmd_scheme(args: argparse.Namespace) -> int:
    built = _scheme_from_spec(args.state, args.delta, args.mode)
    payload = {**scheme.scheme_to_dict(built), **scheme.evaluate(built)}
    print(json.dumps(payload, indent=2))
    return 0


def cmd_plan(args: argparse.Namespace) -> int:
    if not math.isfinite(args.gap) or args.gap <= 0.0:
        raise ValueError(f"--gap must be positive and finite, got {args.gap}")
    if args.dk < 2:
        raise ValueError(f"--dk must be >= 2, got {args.dk}")
    if args.family == "pbit-omega" and args.dk != 2:
        raise ValueError("the pbit-omega family has a two-dimensional key part; "
                         "pick lemma1+obs2 or lemma2+prop2 for larger keys")
    everything = planner.plan_all(args.gap, args.dk)
    selected = everything["families"][args.family]
    payload = {
        "requested_family": args.family,
        "selected": selected,
        "all_families": everything["families"],
        "reference": everything["reference"],
    }
    print(json.dumps(payload, indent=2))
    return 0 if selected.get("feasible") else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="privnet",
        description="Private-state network toolkit: figure data, numerical "
                    "verification, scheme evaluation, shield planning.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fig = sub.add_parser("figures", help="emit figure CSV data (ids 4..13)")
    p_fig.add_argument("--ids", required=True,
                       help="comma-separated figure ids, or 'all'")
    p_fig.add_argument("--out", required=True, help="output directory")
    p_fig.add_argument("--config", default=None,
                       help="JSON file overriding the default grids")
    p_fig.set_defaults(func=cmd_figures)

    p_ver = sub.add_parser("verify", help="run the numerical check suites")
    p_ver.add_argument("--seed", type=int, default=42)
    p_ver.add_argument("--trials", type=int, default=50,
                       help="trials per check (default 50)")
    p_ver.add_argument("--checks", default=None,
                       help=f"comma-separated subset of {list(verify.CHECK_NAMES)}")
    p_ver.add_argument("--json", default=None,
                       help="write the JSON report to PATH ('-' for stdout)")
    p_ver.set_defaults(func=cmd_verify)

    p_sch = sub.add_parser("scheme", help="evaluate a memory scheme")
    p_sch.add_argument("--state", required=True,
                       help="pbit-omega:<ds> | private:<file> | params:<dk>,<ds>,<eps>")
    p_sch.add_argument("--delta", type=int, default=1,
                       help="number of rounds the link state is held")
    p_sch.add_argument("--mode", choices=("one-way", "two-way"), default=None)
    p_sch.set_defaults(func=cmd_scheme)

    p_plan = sub.add_parser("plan", help="smallest shield certifying a target gap")
    p_plan.add_argument("--gap", type=float, required=True)
    p_plan.add_argument("--dk", type=int, default=2)
    p_plan.add_argument("--family", choices=planner.FAMILIES, default="pbit-omega")
    p_plan.set_defaults(func=cmd_plan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    try:
        return args.func(args)
    except planner.InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
