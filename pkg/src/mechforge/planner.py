"""Choosing the tax rate when the base payoffs themselves depend on it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import NonPositiveScale
from .game import Game, Profile, as_weights, control_optimum
from .mechanism import EfficiencyCurve, FullTransfer, Step, efficiency_curve, value_at
from .rationals import NEG_INF, is_chaos, to_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class ProportionalFamily:
    """Payoffs ``(c0 + c1 * theta) * J(a)`` for a fixed base game ``J``."""

    base: Game
    c0: Fraction = _ONE
    c1: Fraction = _ZERO

    def __post_init__(self):
        c0, c1 = to_rational(self.c0), to_rational(self.c1)
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c1", c1)
        # Affine, so positivity on [0, 1] is decided at the endpoints.
        if c0 <= 0 or c0 + c1 <= 0:
            raise NonPositiveScale(f"scale {c0} + {c1}*theta is not positive on [0, 1]")

    def scale(self, theta) -> Fraction:
        return self.c0 + self.c1 * to_rational(theta)

    def game_at(self, theta) -> Game:
        c = self.scale(theta)
        return self.base.map_payoffs(lambda a, v: (c * x for x in v))


@dataclass(frozen=True)
class TabulatedFamily:
    """Payoff games sampled at increasing rates in [0, 1]."""

    samples: tuple[tuple[Fraction, Game], ...]

    def __post_init__(self):
        samples = tuple((to_rational(t), g) for t, g in self.samples)
        if not samples:
            raise ValueError("a tabulated family needs at least one sample")
        thetas = [t for t, _ in samples]
        if any(not 0 <= t <= 1 for t in thetas):
            raise ValueError("sample rates must lie in [0, 1]")
        if any(a >= b for a, b in zip(thetas, thetas[1:])):
            raise ValueError("sample rates must be strictly increasing")
        first = samples[0][1]
        for _, g in samples[1:]:
            if g.players != first.players or g.actions != first.actions:
                raise ValueError("all samples must share players and actions")
        object.__setattr__(self, "samples", samples)


def planner_curve(f: ProportionalFamily, w=None) -> EfficiencyCurve:
    """Piecewise-affine map from rate to best implementable value.

    Thresholds are invariant under positive rescaling, so the pieces are those
    of the base game's theta curve, each multiplied by the scale.
    """
    base = efficiency_curve(f.base, "theta", w)
    steps = []
    for s in base.steps:
        if is_chaos(s.value):
            steps.append(s)
            continue
        steps.append(Step(s.breakpoint, f.scale(s.breakpoint) * s.value, s.witnesses,
                          f.c1 * s.value))
    return EfficiencyCurve("theta", tuple(steps), _ONE)


@dataclass(frozen=True)
class PlannerOptimum:
    theta: Fraction
    value: Fraction
    witnesses: tuple[Profile, ...]
    efficiency: Fraction | None = None  # value over the unrestricted optimum at theta


def optimize_theta(f: Union[ProportionalFamily, TabulatedFamily], w=None) -> PlannerOptimum:
    """Rate maximising the best implementable value; ties go to the smaller rate.

    On a proportional family each piece is affine, and whenever a piece
    rises towards its right end the next piece starts strictly higher, so
    the optimum sits at a breakpoint or at ``theta = 1``.  Tabulated families
    are searched over their sample rates only.
    """
    if isinstance(f, ProportionalFamily):
        curve = planner_curve(f, w)
        cands = list(curve.breakpoints)
        if cands[-1] != 1:
            cands.append(_ONE)
        evaluated = [(t, curve.step_at(t), value_at(curve, t)) for t in cands]
    else:
        evaluated = []
        for t, g in f.samples:
            curve = efficiency_curve(g, "theta", w)
            evaluated.append((t, curve.step_at(t), value_at(curve, t)))

    best = None
    for t, step, v in evaluated:
        if is_chaos(v):
            continue
        if best is None or v > best[2]:
            best = (t, step, v)
    if best is None:
        return PlannerOptimum(_ONE, NEG_INF, ())
    t, step, v = best
    g = f.game_at(t) if isinstance(f, ProportionalFamily) else dict(f.samples)[t]
    opt = control_optimum(g, as_weights(w, g.num_players)).value
    eff = v / opt if opt > 0 else None
    return PlannerOptimum(t, v, step.witnesses, eff)


@dataclass(frozen=True)
class TaxSplit:
    players: tuple[Fraction, ...]
    government: Fraction
    produced: Fraction

    def balanced(self, injected_budget=0) -> bool:
        """Nets of everyone equal production plus the outside money injected."""
        total = sum(self.players, _ZERO) + self.government
        return total == self.produced + to_rational(injected_budget)


def post_tax_split(g: Game, t: FullTransfer, tax_rate, realized: Profile,
                   injected_budget=0) -> TaxSplit:
    """Who ends up with what when income is taxed after a (tax-free) transfer.

    The government pays the transfer out of its tax take plus any outside
    budget it was given, so with no injection its net is
    ``rate * sum(J) - sum(pi)``.
    """
    rate = to_rational(tax_rate)
    if not 0 <= rate <= 1:
        raise ValueError(f"tax rate {rate} outside [0, 1]")
    realized = tuple(realized)
    j = g[realized]
    pay = t.at(g, realized)
    nets = tuple(p + (1 - rate) * x for p, x in zip(pay, j))
    gov = rate * sum(j, _ZERO) - sum(pay, _ZERO) + to_rational(injected_budget)
    return TaxSplit(nets, gov, sum(j, _ZERO))
