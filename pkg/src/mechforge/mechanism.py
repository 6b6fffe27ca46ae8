"""Reward (kappa) and tax-redistribution (theta) mechanisms.

A mediator pays transfers on top of the base payoffs.  Under the kappa
scheme transfers are nonnegative and sum to at most ``kappa`` at every
profile; under the theta scheme every payoff is taxed at rate ``theta`` and
the proceeds at a profile are handed back as a nonnegative redistribution
``psi``.  Implementability of a single target profile has a closed form in
its deviation gaps, which gives the whole value-vs-budget step curve.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Union

from .errors import (
    BudgetViolation,
    DimensionMismatch,
    Infeasible,
    InvalidScheme,
    NegativeBasePayoff,
    NegativeRedistribution,
    OutOfDomain,
    UnknownPayoffVector,
    UnknownProfile,
)
from .game import (
    Game,
    PayoffVector,
    Profile,
    aggregate,
    as_weights,
    deviation_gaps,
)
from .rationals import NEG_INF, is_chaos, to_rational

_ZERO = Fraction(0)

Kind = Literal["kappa", "theta"]


# -- transfers ----------------------------------------------------------------

@dataclass(frozen=True)
class FullTransfer:
    """Profile-contingent payments; profiles not listed receive zero."""

    payments: Mapping[Profile, PayoffVector] = field(default_factory=dict)

    def at(self, g: Game, a: Profile) -> PayoffVector:
        return self.payments.get(tuple(a)) or (_ZERO,) * g.num_players

    def check(self, g: Game) -> None:
        grid = set(g.profiles())
        for a, v in self.payments.items():
            if tuple(a) not in grid:
                raise UnknownProfile(f"transfer keyed on unknown profile {a}")
            if len(v) != g.num_players:
                raise DimensionMismatch(f"transfer at {a} has {len(v)} entries")


@dataclass(frozen=True)
class PartialTransfer:
    """Payments that see only the payoff vector ``J(a)``, never the profile."""

    payments: Mapping[PayoffVector, PayoffVector] = field(default_factory=dict)

    def at(self, g: Game, a: Profile) -> PayoffVector:
        return self.payments.get(g[a]) or (_ZERO,) * g.num_players

    def check(self, g: Game) -> None:
        rng = set(g.payoffs.values())
        for y, v in self.payments.items():
            if tuple(y) not in rng:
                raise UnknownPayoffVector(f"transfer keyed on {y}, which no profile produces")
            if len(v) != g.num_players:
                raise DimensionMismatch(f"transfer at {y} has {len(v)} entries")


Transfer = Union[FullTransfer, PartialTransfer]


def full_transfer(payments: Mapping) -> FullTransfer:
    return FullTransfer({tuple(a): tuple(to_rational(x) for x in v) for a, v in payments.items()})


def partial_transfer(payments: Mapping) -> PartialTransfer:
    return PartialTransfer({tuple(to_rational(x) for x in y): tuple(to_rational(x) for x in v)
                            for y, v in payments.items()})


def _add(t: Transfer, g: Game) -> Game:
    t.check(g)
    return g.map_payoffs(lambda a, v: (x + p for x, p in zip(v, t.at(g, a))))


def perturb_full(g: Game, t: FullTransfer) -> Game:
    return _add(t, g)


def perturb_partial(g: Game, t: PartialTransfer) -> Game:
    return _add(t, g)


def perturb(g: Game, t: Transfer) -> Game:
    return _add(t, g)


def _require_nonnegative(g: Game) -> None:
    low = g.min_payoff()
    if low < 0:
        raise NegativeBasePayoff(f"tax schemes need nonnegative payoffs; found {low}")


def perturb_tax(g: Game, theta, psi: Transfer) -> Game:
    """Payoffs ``(1 - theta) J + psi`` after checking ``psi`` fits the tax take."""
    theta = to_rational(theta)
    if not 0 <= theta <= 1:
        raise InvalidScheme(f"tax rate {theta} outside [0, 1]")
    _require_nonnegative(g)
    psi.check(g)
    for a in g.profiles():
        p = psi.at(g, a)
        if any(x < 0 for x in p):
            raise NegativeRedistribution(f"negative redistribution {p} at {a}")
        if sum(p) > theta * sum(g[a]):
            raise BudgetViolation(
                f"redistribution {sum(p)} at {a} exceeds tax take {theta * sum(g[a])}")
    keep = 1 - theta
    return g.map_payoffs(lambda a, v: (keep * x + p for x, p in zip(v, psi.at(g, a))))


# -- schemes ------------------------------------------------------------------

@dataclass(frozen=True)
class KappaScheme:
    kappa: Fraction

    def __post_init__(self):
        k = to_rational(self.kappa)
        if k < 0:
            raise InvalidScheme(f"kappa must be nonnegative, got {k}")
        object.__setattr__(self, "kappa", k)

    kind = "kappa"

    @property
    def budget(self) -> Fraction:
        return self.kappa


@dataclass(frozen=True)
class ThetaScheme:
    theta: Fraction

    def __post_init__(self):
        t = to_rational(self.theta)
        if not 0 <= t <= 1:
            raise InvalidScheme(f"theta must lie in [0, 1], got {t}")
        object.__setattr__(self, "theta", t)

    kind = "theta"

    @property
    def budget(self) -> Fraction:
        return self.theta


Scheme = Union[KappaScheme, ThetaScheme]


def scheme_member(t: Transfer, s: Scheme, g: Game) -> bool:
    """Whether every pointwise constraint of ``s`` holds for ``t``.

    For a theta scheme ``t`` is read as the redistribution ``psi``.
    """
    try:
        t.check(g)
    except (UnknownProfile, UnknownPayoffVector, DimensionMismatch):
        return False
    if isinstance(s, ThetaScheme) and g.min_payoff() < 0:
        return False
    for a in g.profiles():
        p = t.at(g, a)
        if any(x < 0 for x in p):
            return False
        cap = s.kappa if isinstance(s, KappaScheme) else s.theta * sum(g[a])
        if sum(p) > cap:
            return False
    return True


# -- thresholds ---------------------------------------------------------------

def kappa_threshold(g: Game, a: Profile) -> Fraction:
    """Smallest per-profile reward budget that makes ``a`` an equilibrium."""
    return sum(deviation_gaps(g, a), _ZERO)


def theta_threshold(g: Game, a: Profile) -> Fraction:
    """Smallest tax rate whose redistribution can make ``a`` an equilibrium.

    Paying ``psi(a) = (1 - theta) d(a)`` and nothing elsewhere is optimal, so
    the condition is ``(1 - theta) sum(d) <= theta sum(J(a))``.
    """
    _require_nonnegative(g)
    gap = sum(deviation_gaps(g, a), _ZERO)
    if gap == 0:
        return _ZERO
    return gap / (gap + sum(g[tuple(a)]))


def threshold(g: Game, a: Profile, kind: Kind) -> Fraction:
    if kind == "kappa":
        return kappa_threshold(g, a)
    if kind == "theta":
        return theta_threshold(g, a)
    raise ValueError(f"unknown scheme kind {kind!r}")


def _scheme(s) -> Scheme:
    if isinstance(s, (KappaScheme, ThetaScheme)):
        return s
    raise TypeError(f"expected KappaScheme or ThetaScheme, got {type(s).__name__}")


def synthesize_witness(g: Game, a: Profile, s: Scheme, mode: str = "full") -> Transfer:
    """Canonical transfer making ``a`` an equilibrium inside scheme ``s``.

    Pays the deviation gaps at the target (scaled by ``1 - theta`` for the
    tax scheme) and nothing anywhere else.  In partial mode the payment is
    attached to the payoff vector ``J(a)``; for reward-only schemes any
    other profile sharing that vector gains nothing from deviating to it.
    Raises :class:`Infeasible` when the budget is below the threshold.
    """
    s = _scheme(s)
    a = tuple(a)
    kind = s.kind
    need = threshold(g, a, kind)
    if need > s.budget:
        raise Infeasible(f"{kind} budget {s.budget} below threshold {need} for {a}", need)
    gaps = deviation_gaps(g, a)
    if kind == "theta":
        gaps = tuple((1 - s.theta) * d for d in gaps)
    if not any(gaps):
        return FullTransfer({}) if mode == "full" else PartialTransfer({})
    if mode == "full":
        return FullTransfer({a: gaps})
    if mode == "partial":
        return PartialTransfer({g[a]: gaps})
    raise ValueError(f"unknown information mode {mode!r}")


# -- efficiency curves ----------------------------------------------------------

@dataclass(frozen=True)
class Step:
    """One piece of a left-closed step curve.

    On ``[breakpoint, next breakpoint)`` the value is
    ``value + slope * (x - breakpoint)``; slope is zero except for planner
    curves whose payoffs scale with the rate.
    """

    breakpoint: Fraction
    value: Fraction | float
    witnesses: tuple[Profile, ...] = ()
    slope: Fraction = _ZERO

    def at(self, x):
        if is_chaos(self.value) or not self.slope:
            return self.value
        return self.value + self.slope * (x - self.breakpoint)


@dataclass(frozen=True)
class EfficiencyCurve:
    kind: str
    steps: tuple[Step, ...]
    upper: Fraction | None = None  # closed right end of the domain, if any

    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        return tuple(s.breakpoint for s in self.steps)

    @property
    def values(self) -> tuple:
        return tuple(s.value for s in self.steps)

    def pairs(self) -> list[tuple]:
        return [(s.breakpoint, s.value) for s in self.steps]

    def step_at(self, x) -> Step:
        x = to_rational(x)
        if x < 0 or (self.upper is not None and x > self.upper):
            raise OutOfDomain(f"{x} outside the {self.kind} domain")
        found = self.steps[0]
        for s in self.steps:
            if s.breakpoint <= x:
                found = s
            else:
                break
        return found


def value_at(c: EfficiencyCurve, x):
    """Curve value at ``x``; each step holds on its left-closed interval."""
    return c.step_at(x).at(to_rational(x))


def efficiency_curve(g: Game, kind: Kind, w=None) -> EfficiencyCurve:
    """Exact optimal best-equilibrium value as a function of the budget.

    At budget ``x`` the reachable targets are the profiles whose threshold is
    at most ``x``; the value is their best original aggregate (transfers are
    never counted).  Breakpoints are the thresholds where that maximum rises.
    """
    w = as_weights(w, g.num_players)
    by_threshold: dict[Fraction, list[Profile]] = {}
    for a in g.profiles():
        by_threshold.setdefault(threshold(g, a, kind), []).append(a)

    vals = {a: aggregate(g, a, w) for a in g.profiles()}
    steps: list[Step] = []
    best = NEG_INF
    pool: list[Profile] = []
    cuts = sorted(by_threshold)
    if cuts[0] != 0:
        steps.append(Step(_ZERO, NEG_INF, ()))
    for t in cuts:
        pool.extend(by_threshold[t])
        top = max(vals[a] for a in pool)
        if top > best or not steps:
            best = top
            wit = tuple(sorted(a for a in pool if vals[a] == top))
            steps.append(Step(t, best, wit))
    upper = Fraction(1) if kind == "theta" else None
    return EfficiencyCurve(kind, tuple(steps), upper)
