"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 domain precondition failed,
4 target not implementable.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import DomainError, Infeasible, InvalidScheme, InvalidWeights, MechforgeError
from .game import (
    Game,
    Weights,
    best_equilibrium_value,
    control_optimum,
    epsilon_equilibria,
    payoff_range,
    worst_equilibrium_value,
)
from .info import FULL, PARTIAL, implementable, info_gap_report
from .io import (
    InputError,
    curve_to_csv,
    curve_to_json_obj,
    load_box,
    load_game,
    profile_key,
    transfer_to_json_obj,
    write_atomic,
)
from .mechanism import (
    KappaScheme,
    ThetaScheme,
    efficiency_curve,
    perturb,
    perturb_tax,
    scheme_member,
    synthesize_witness,
    threshold,
)
from .planner import ProportionalFamily, optimize_theta, planner_curve
from .rationals import fmt, is_chaos, to_rational

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_INFEASIBLE = 0, 2, 3, 4


def _weights(arg: str | None, g: Game) -> Weights:
    if not arg:
        return Weights.equal(g.num_players)
    parts = [p for p in arg.split(",") if p.strip()]
    try:
        w = Weights(tuple(to_rational(p) for p in parts))
    except (InvalidWeights, ValueError) as exc:
        raise InputError(f"--weights: {exc}") from None
    if len(w) != g.num_players:
        raise InputError(f"--weights: {len(w)} weights for {g.num_players} players")
    return w


def _rational_arg(value: str, flag: str):
    try:
        return to_rational(value)
    except ValueError as exc:
        raise InputError(f"{flag}: {exc}") from None


def _box(arg: str, g: Game):
    box = load_box(arg)
    try:
        box.validate(g)
    except InvalidScheme as exc:
        raise InputError(f"box {arg!r}: {exc}") from None
    return box


def _value_obj(g: Game, ev) -> dict:
    return {"value": fmt(ev.value), "witnesses": [profile_key(g, a) for a in ev.witnesses]}


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, ensure_ascii=False) + "\n")


def cmd_analyze(args) -> int:
    g = load_game(args.game)
    w = _weights(args.weights, g)
    eps = _rational_arg(args.epsilon, "--epsilon")
    if eps < 0:
        raise InputError("--epsilon must be nonnegative")
    best = best_equilibrium_value(g, w, eps)
    worst = worst_equilibrium_value(g, w, eps)
    opt = control_optimum(g, w)
    if opt.value > 0:
        eff = fmt(best.value if is_chaos(best.value) else best.value / opt.value)
    else:
        eff = None
    _emit({
        "players": list(g.players),
        "weights": [fmt(x) for x in w],
        "epsilon": fmt(eps),
        "equilibria": [profile_key(g, a) for a in epsilon_equilibria(g, eps)],
        "best_value": _value_obj(g, best),
        "worst_value": _value_obj(g, worst),
        "control_optimum": _value_obj(g, opt),
        "efficiency": eff,
        "payoff_range": [
            {"value": [fmt(x) for x in grp.value],
             "members": [profile_key(g, a) for a in grp.members]}
            for grp in payoff_range(g)
        ],
    })
    return EXIT_OK


def cmd_curve(args) -> int:
    g = load_game(args.game)
    w = _weights(args.weights, g)
    c = efficiency_curve(g, args.scheme, w)
    if args.format == "json":
        text = json.dumps(curve_to_json_obj(g, c), indent=2) + "\n"
    else:
        text = curve_to_csv(g, c)
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_implement(args) -> int:
    g = load_game(args.game)
    try:
        target = g.profile_of(args.target.split(","))
    except ValueError as exc:
        raise InputError(f"--target: {exc}") from None
    mode = args.info
    report = {"target": profile_key(g, target), "info": mode, "scheme": args.scheme}

    if args.scheme in ("kappa", "theta"):
        if args.budget is None:
            raise InputError("--budget is required for kappa and theta schemes")
        budget = _rational_arg(args.budget, "--budget")
        try:
            s = KappaScheme(budget) if args.scheme == "kappa" else ThetaScheme(budget)
        except DomainError as exc:
            raise InputError(f"--budget: {exc}") from None
        report["budget"] = fmt(budget)
        report["threshold"] = fmt(threshold(g, target, args.scheme))
        try:
            t = synthesize_witness(g, target, s, mode)
        except Infeasible:
            report["feasible"] = False
            _emit(report)
            return EXIT_INFEASIBLE
        if args.scheme == "kappa":
            perturbed = perturb(g, t)
        else:
            perturbed = perturb_tax(g, s.theta, t)
        member = scheme_member(t, s, g)
    else:
        box = _box(args.scheme, g)
        res = implementable(g, target, box, mode)
        if not res.feasible:
            report["feasible"] = False
            _emit(report)
            return EXIT_INFEASIBLE
        t = res.transfer
        perturbed = perturb(g, t)
        member = True

    eq = epsilon_equilibria(perturbed)
    report.update({
        "feasible": True,
        "transfer": transfer_to_json_obj(g, t),
        "verification": {
            "perturbed_equilibria": [profile_key(g, a) for a in eq],
            "target_is_equilibrium": target in eq,
            "scheme_member": member,
        },
    })
    _emit(report)
    return EXIT_OK


def cmd_compare_info(args) -> int:
    g = load_game(args.game)
    w = _weights(args.weights, g)
    box = _box(args.box, g)
    rep = info_gap_report(g, box, w)
    _emit({
        "box": box.name,
        "v_full": fmt(rep.v_full),
        "v_partial": fmt(rep.v_partial),
        "equal": rep.equal,
        "full_witnesses": [profile_key(g, a) for a in rep.full.witnesses],
        "partial_witnesses": [profile_key(g, a) for a in rep.partial.witnesses],
    })
    return EXIT_OK


def cmd_plan_theta(args) -> int:
    g = load_game(args.game)
    w = _weights(args.weights, g)
    parts = args.scale.split(",")
    if len(parts) != 2:
        raise InputError("--scale expects c0,c1")
    c0, c1 = (_rational_arg(p, "--scale") for p in parts)
    fam = ProportionalFamily(g, c0, c1)
    curve = planner_curve(fam, w)
    best = optimize_theta(fam, w)
    _emit({
        "scale": [fmt(c0), fmt(c1)],
        "curve": curve_to_json_obj(g, curve)["steps"],
        "theta_star": fmt(best.theta),
        "value": fmt(best.value),
        "witnesses": [profile_key(g, a) for a in best.witnesses],
        "efficiency": None if best.efficiency is None else fmt(best.efficiency),
    })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mechforge",
                                 description="Exact equilibrium efficiency and mechanism design for finite games")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="equilibria, values, efficiency, payoff groups")
    p.add_argument("game")
    p.add_argument("--weights")
    p.add_argument("--epsilon", default="0")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("curve", help="exact value-vs-budget step curve")
    p.add_argument("game")
    p.add_argument("--scheme", choices=["kappa", "theta"], default="kappa")
    p.add_argument("--weights")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("implement", help="witness transfer making a target an equilibrium")
    p.add_argument("game")
    p.add_argument("--target", required=True, help="comma-joined action labels")
    p.add_argument("--scheme", required=True, help="kappa, theta, a box file, or a box shorthand")
    p.add_argument("--budget")
    p.add_argument("--info", choices=[FULL, PARTIAL], default=FULL)
    p.set_defaults(func=cmd_implement)

    p = sub.add_parser("compare-info", help="full vs partial information scheme values")
    p.add_argument("game")
    p.add_argument("--box", required=True)
    p.add_argument("--weights")
    p.set_defaults(func=cmd_compare_info)

    p = sub.add_parser("plan-theta", help="optimal tax rate for a proportional payoff family")
    p.add_argument("game")
    p.add_argument("--scale", default="1,0", help="c0,c1 for the scale c0 + c1*theta")
    p.add_argument("--weights")
    p.set_defaults(func=cmd_plan_theta)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"mechforge: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DomainError as exc:
        print(f"mechforge: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except MechforgeError as exc:
        print(f"mechforge: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
