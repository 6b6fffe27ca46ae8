"""Game files, curve files and box files.

Rationals cross the file boundary as strings (``"1/103"``, ``"-0.5"``);
output always uses the canonical ``p/q`` form, so a canonical game file
round-trips byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path

from .errors import GameError, InvalidScheme, MechforgeError
from .game import Game, Profile, build_game
from .info import BoxScheme, box_from_constraints, punish_budget, reward_budget, theta_box, zero_box
from .lp import Constraint
from .mechanism import EfficiencyCurve, FullTransfer, Step, Transfer
from .rationals import fmt, parse_value, to_rational


class InputError(MechforgeError, ValueError):
    """Unreadable or malformed input file."""


def profile_key(g: Game, a: Profile) -> str:
    return ",".join(g.labels(a))


def vector_key(y) -> str:
    return ",".join(fmt(x) for x in y)


# -- games --------------------------------------------------------------------

def game_to_dict(g: Game) -> dict:
    return {
        "players": list(g.players),
        "actions": [list(a) for a in g.actions],
        "payoffs": {profile_key(g, a): [fmt(x) for x in g[a]] for a in g.profiles()},
    }


def dumps_game(g: Game) -> str:
    return json.dumps(game_to_dict(g), indent=2, ensure_ascii=False) + "\n"


def loads_game(text: str, source: str = "<string>") -> Game:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise InputError(f"{source}: top level must be an object")
    for key in ("players", "payoffs"):
        if key not in data:
            raise InputError(f"{source}: missing field {key!r}")
    if not isinstance(data["payoffs"], dict):
        raise InputError(f"{source}: field 'payoffs' must map profile keys to lists")
    try:
        return build_game(data)
    except GameError as exc:
        raise InputError(f"{source}: {type(exc).__name__}: {exc}") from None


def load_game(path) -> Game:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return loads_game(text, str(path))


# -- curves -------------------------------------------------------------------

def _witness_str(g: Game, witnesses) -> str:
    return ";".join(profile_key(g, a) for a in witnesses)


def curve_to_csv(g: Game, c: EfficiencyCurve) -> str:
    with_slope = any(s.slope for s in c.steps)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["breakpoint", "value", "witnesses"] + (["slope"] if with_slope else [])
    w.writerow(header)
    for s in c.steps:
        row = [fmt(s.breakpoint), fmt(s.value), _witness_str(g, s.witnesses)]
        if with_slope:
            row.append(fmt(s.slope))
        w.writerow(row)
    return buf.getvalue()


def curve_to_json_obj(g: Game, c: EfficiencyCurve) -> dict:
    steps = []
    for s in c.steps:
        item = {"breakpoint": fmt(s.breakpoint), "value": fmt(s.value),
                "witnesses": [profile_key(g, a) for a in s.witnesses]}
        if s.slope:
            item["slope"] = fmt(s.slope)
        steps.append(item)
    return {"kind": c.kind, "steps": steps}


def curve_from_csv(g: Game, text: str, kind: str = "kappa") -> EfficiencyCurve:
    rows = list(csv.DictReader(io.StringIO(text)))
    steps = []
    for r in rows:
        wit = tuple(g.profile_of(k.split(",")) for k in r["witnesses"].split(";") if k)
        slope = to_rational(r["slope"]) if r.get("slope") else to_rational(0)
        steps.append(Step(to_rational(r["breakpoint"]), parse_value(r["value"]), wit, slope))
    return EfficiencyCurve(kind, tuple(steps), to_rational(1) if kind == "theta" else None)


# -- transfers ----------------------------------------------------------------

def transfer_to_json_obj(g: Game, t: Transfer) -> dict:
    if isinstance(t, FullTransfer):
        items = sorted(t.payments.items())
        return {"mode": "full",
                "payments": {profile_key(g, a): [fmt(x) for x in v] for a, v in items}}
    items = sorted(t.payments.items())
    return {"mode": "partial",
            "payments": {vector_key(y): [fmt(x) for x in v] for y, v in items}}


# -- box files ----------------------------------------------------------------

SHORTHANDS = ("reward-budget:<k>", "punish-budget:<c>", "theta:<t>", "zero")


def parse_box_shorthand(text: str) -> BoxScheme:
    s = text.strip()
    if s in ("zero", "{0}", "0"):
        return zero_box()
    name, sep, arg = s.partition(":")
    if not sep:
        raise InputError(f"unknown box shorthand {text!r}; expected one of {', '.join(SHORTHANDS)}")
    try:
        value = to_rational(arg)
        if name == "reward-budget":
            return reward_budget(value)
        if name == "punish-budget":
            return punish_budget(value)
        if name == "theta":
            return theta_box(value)
    except (ValueError, InvalidScheme) as exc:
        raise InputError(f"bad box shorthand {text!r}: {exc}") from None
    raise InputError(f"unknown box shorthand {text!r}; expected one of {', '.join(SHORTHANDS)}")


def _rows(raw, where: str) -> list[Constraint]:
    if not isinstance(raw, list):
        raise InputError(f"{where}: expected a list of constraints")
    out = []
    for k, item in enumerate(raw):
        try:
            out.append(Constraint(tuple(item["coeffs"]), item["rel"], item["rhs"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"{where}[{k}]: needs 'coeffs', 'rel', 'rhs' ({exc})") from None
        except ValueError as exc:
            raise InputError(f"{where}[{k}]: {exc}") from None
    return out


def box_from_obj(data) -> BoxScheme:
    """Box from parsed JSON: ``{"shorthand": ...}`` or ``{"default": [...], "overrides": {...}}``.

    Each constraint is ``{"coeffs": [...], "rel": "<=", "rhs": "..."}`` over the
    transfer vector; override keys are comma-joined payoff vectors.
    """
    if isinstance(data, str):
        return parse_box_shorthand(data)
    if not isinstance(data, dict):
        raise InputError("box file must hold an object or a shorthand string")
    if "shorthand" in data:
        return parse_box_shorthand(str(data["shorthand"]))
    if "default" not in data:
        raise InputError("box file needs 'shorthand' or 'default'")
    default = _rows(data["default"], "default")
    overrides = {}
    for key, raw in (data.get("overrides") or {}).items():
        try:
            y = tuple(to_rational(x) for x in key.split(","))
        except ValueError as exc:
            raise InputError(f"overrides key {key!r}: {exc}") from None
        overrides[y] = _rows(raw, f"overrides[{key!r}]")
    return box_from_constraints(default, overrides, data.get("name", "box"))


def load_box(arg: str) -> BoxScheme:
    """A box from a file path, or directly from a shorthand string."""
    path = Path(arg)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            return parse_box_shorthand(text)
        return box_from_obj(data)
    return parse_box_shorthand(arg)


# -- output -------------------------------------------------------------------

def write_atomic(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
