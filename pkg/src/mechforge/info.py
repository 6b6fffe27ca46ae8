"""Full- versus partial-information mechanisms over polyhedral transfer boxes.

A box scheme gives, for each payoff vector ``y`` in the game's range, a
polyhedron ``D(y)`` of admissible transfer vectors.  A full-information
transfer may depend on the profile ``a`` (subject to ``pi(a) in D(J(a))``);
a partial-information transfer only on ``J(a)``.  Implementability of a
target profile is an exact LP feasibility question in either case.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ._parallel import pmap
from .errors import InvalidScheme
from .game import (
    EquilibriumValue,
    Game,
    PayoffVector,
    Profile,
    aggregate,
    as_weights,
    is_epsilon_equilibrium,
)
from .lp import EQ, GE, LE, Constraint, FeasibilityResult, LinearSystem, solve_feasibility
from .mechanism import FullTransfer, PartialTransfer, Transfer, perturb
from .rationals import NEG_INF, to_rational

_ZERO = Fraction(0)
FULL, PARTIAL = "full", "partial"


@dataclass(frozen=True)
class BoxScheme:
    """``region(y)`` returns the linear constraints on the transfer vector at ``y``."""

    region: Callable[[PayoffVector], Sequence[Constraint]]
    name: str = "box"

    def constraints(self, y: PayoffVector) -> list[Constraint]:
        return list(_rows_at(self, tuple(y)))

    def contains(self, y: PayoffVector, x: Sequence[Fraction]) -> bool:
        return all(c.holds(x) for c in self.constraints(y))

    def validate(self, g: Game) -> None:
        """Reject boxes that are malformed or exclude the zero transfer somewhere."""
        for y in set(g.payoffs.values()):
            self.check_at(y)

    def check_at(self, y: PayoffVector) -> None:
        n = len(y)
        cons = self.constraints(y)
        for c in cons:
            if len(c.coeffs) != n:
                raise InvalidScheme(f"{self.name}: constraint over {len(c.coeffs)} "
                                    f"components in a {n}-player game")
        zero = (_ZERO,) * n
        if not all(c.holds(zero) for c in cons):
            raise InvalidScheme(f"{self.name}: zero transfer not admissible at y={y}")

    def reward_only(self, g: Game) -> bool:
        """Whether ``D(y)`` lies in the nonnegative orthant for every ``y`` in range."""
        self.validate(g)
        return all(_orthant_at(self, y) for y in set(g.payoffs.values()))

    def punishment_allowed(self, g: Game) -> bool:
        return not self.reward_only(g)


@lru_cache(maxsize=4096)
def _rows_at(d: BoxScheme, y: PayoffVector) -> tuple[Constraint, ...]:
    return tuple(d.region(y))


@lru_cache(maxsize=4096)
def _orthant_at(d: BoxScheme, y: PayoffVector) -> bool:
    # 0 lies in D(y), so D(y) has a point with a negative component iff the
    # cone of feasible directions at 0 (rows tight at zero) has a direction
    # with that component <= -1.
    cons = d.constraints(y)
    n = len(y)
    tight = [Constraint(c.coeffs, c.relation, 0) for c in cons if c.rhs == 0]
    for i in range(n):
        sys = LinearSystem(n, list(tight))
        e = [_ZERO] * n
        e[i] = Fraction(1)
        sys.add(e, LE, -1)
        if solve_feasibility(sys):
            return False
    return True


def _unit_rows(n: int, relation: str, rhs) -> list[Constraint]:
    rows = []
    for i in range(n):
        e = [_ZERO] * n
        e[i] = Fraction(1)
        rows.append(Constraint(tuple(e), relation, rhs))
    return rows


def _sum_row(n: int, relation: str, rhs) -> Constraint:
    return Constraint((Fraction(1),) * n, relation, rhs)


def reward_budget(kappa) -> BoxScheme:
    """Nonnegative transfers summing to at most ``kappa`` (the kappa scheme)."""
    kappa = to_rational(kappa)
    if kappa < 0:
        raise InvalidScheme("reward budget must be nonnegative")
    return BoxScheme(lambda y: _unit_rows(len(y), GE, 0) + [_sum_row(len(y), LE, kappa)],
                     f"reward-budget:{kappa}")


def punish_budget(total) -> BoxScheme:
    """Nonpositive transfers whose total fine is at most ``total``."""
    total = to_rational(total)
    if total < 0:
        raise InvalidScheme("punishment budget must be nonnegative")
    return BoxScheme(lambda y: _unit_rows(len(y), LE, 0) + [_sum_row(len(y), GE, -total)],
                     f"punish-budget:{total}")


def zero_box() -> BoxScheme:
    return BoxScheme(lambda y: _unit_rows(len(y), EQ, 0), "zero")


def theta_box(theta) -> BoxScheme:
    """Tax scheme at rate ``theta`` rewritten as a reward-only box.

    ``(1 - theta) J + psi`` has the same equilibria as ``J + psi / (1 - theta)``,
    so the box bounds the rescaled redistribution by ``theta / (1 - theta)``
    times the total payoff.  At ``theta = 1`` the budget is unbounded.
    """
    theta = to_rational(theta)
    if not 0 <= theta <= 1:
        raise InvalidScheme("theta must lie in [0, 1]")
    if theta == 1:
        return BoxScheme(lambda y: _unit_rows(len(y), GE, 0), "theta:1")

    def region(y):
        total = sum(y, _ZERO)
        if total < 0:
            raise InvalidScheme("tax boxes need nonnegative payoffs")
        return _unit_rows(len(y), GE, 0) + [_sum_row(len(y), LE, theta / (1 - theta) * total)]
    return BoxScheme(region, f"theta:{theta}")


def box_from_constraints(default: Sequence[Constraint],
                         overrides: Mapping[PayoffVector, Sequence[Constraint]] | None = None,
                         name: str = "box") -> BoxScheme:
    """Box given by explicit rows, optionally replaced for particular ``y``."""
    default = list(default)
    table = {tuple(to_rational(v) for v in y): list(rows) for y, rows in (overrides or {}).items()}
    return BoxScheme(lambda y: table.get(tuple(y), default), name)


# -- implementability ---------------------------------------------------------

@dataclass(frozen=True)
class Implementation:
    target: Profile
    mode: str
    feasible: bool
    transfer: Transfer | None = None
    lp: FeasibilityResult | None = field(default=None, repr=False)

    def __bool__(self):
        return self.feasible


def _support(g: Game, target: Profile, mode: str) -> list:
    """Profiles (full) or payoff vectors (partial) that carry LP variables.

    Only the target and its unilateral deviations enter the equilibrium
    inequalities; everything else is left at the zero transfer, which every
    admissible box contains.
    """
    touched = [target] + [b for i in range(g.num_players) for b in g.deviations(target, i)]
    if mode == FULL:
        return touched
    keys = []
    for a in touched:
        if g[a] not in keys:
            keys.append(g[a])
    return keys


def implementable(g: Game, target: Profile, d: BoxScheme, mode: str = FULL) -> Implementation:
    """Decide whether some admissible transfer makes ``target`` an equilibrium."""
    if mode not in (FULL, PARTIAL):
        raise ValueError(f"unknown information mode {mode!r}")
    target = tuple(target)
    keys = _support(g, target, mode)
    for k in keys:
        d.check_at(k if mode == PARTIAL else g[k])
    if is_epsilon_equilibrium(g, target):
        # 0 is in every admissible box, so no LP is needed.
        zero = FullTransfer({}) if mode == FULL else PartialTransfer({})
        return Implementation(target, mode, True, zero, None)
    n = g.num_players
    slot = {k: j for j, k in enumerate(keys)}
    key_of = (lambda a: a) if mode == FULL else (lambda a: g[a])
    sys = LinearSystem(n * len(keys))

    for k in keys:
        base = slot[k] * n
        y = k if mode == PARTIAL else g[k]
        for c in d.constraints(y):
            sys.add_sparse({base + i: c.coeffs[i] for i in range(n)}, c.relation, c.rhs)

    t_slot = slot[key_of(target)] * n
    jt = g[target]
    for i in range(n):
        for b in g.deviations(target, i):
            terms = {t_slot + i: Fraction(1)}
            b_var = slot[key_of(b)] * n + i
            terms[b_var] = terms.get(b_var, _ZERO) - 1
            sys.add_sparse(terms, GE, g[b][i] - jt[i])

    res = solve_feasibility(sys)
    if not res.feasible:
        return Implementation(target, mode, False, None, res)

    x = res.witness
    pay = {}
    for k in keys:
        vec = tuple(x[slot[k] * n + i] for i in range(n))
        if any(vec):
            pay[k] = vec
    if pay and all(_orthant_at(d, k if mode == PARTIAL else g[k]) for k in keys):
        # Reward-only: payments off the target only help deviators; drop them.
        keep = key_of(target)
        pay = {keep: pay[keep]} if keep in pay else {}
    t = FullTransfer(pay) if mode == FULL else PartialTransfer(pay)
    if not (is_epsilon_equilibrium(perturb(g, t), target) and box_member(t, d, g)):
        raise RuntimeError(f"LP witness for {target} failed re-verification")
    return Implementation(target, mode, True, t, res)


def box_member(t: Transfer, d: BoxScheme, g: Game) -> bool:
    """Pointwise ``pi(a) in D(J(a))``; partial transfers must also be keyed on the range."""
    try:
        t.check(g)
    except ValueError:
        return False
    return all(d.contains(g[a], t.at(g, a)) for a in g.profiles())


def scheme_value(g: Game, d: BoxScheme, mode: str = FULL, w=None) -> EquilibriumValue:
    """Best original aggregate over all targets some admissible transfer implements.

    Targets are tried in decreasing aggregate order; the first value level
    with a feasible target wins, and every feasible target at that level is
    reported.
    """
    w = as_weights(w, g.num_players)
    d.validate(g)
    levels: dict[Fraction, list[Profile]] = {}
    for a in g.profiles():
        levels.setdefault(aggregate(g, a, w), []).append(a)
    for v in sorted(levels, reverse=True):
        results = pmap(lambda a: implementable(g, a, d, mode), levels[v])
        ok = tuple(r.target for r in results if r.feasible)
        if ok:
            return EquilibriumValue(v, ok)
    return EquilibriumValue(NEG_INF, ())


@dataclass(frozen=True)
class InfoGap:
    full: EquilibriumValue
    partial: EquilibriumValue

    @property
    def v_full(self):
        return self.full.value

    @property
    def v_partial(self):
        return self.partial.value

    @property
    def equal(self) -> bool:
        return self.v_full == self.v_partial


def info_gap_report(g: Game, d: BoxScheme, w=None) -> InfoGap:
    full = scheme_value(g, d, FULL, w)
    partial = scheme_value(g, d, PARTIAL, w)
    # Partial mechanisms are a subset of full ones.
    if partial.value > full.value:
        raise RuntimeError(f"partial value {partial.value} exceeds full value {full.value}")
    return InfoGap(full, partial)
