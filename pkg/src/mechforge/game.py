"""Finite N-player games in pure strategies with exact rational payoffs.

A profile is a tuple of action indices, one per player.  Payoff vectors are
tuples of ``Fraction``.  Everything here is immutable and side-effect free.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import (
    DimensionMismatch,
    GameError,
    InvalidWeights,
    MissingProfile,
    NonPositiveOptimum,
    UnknownProfile,
)
from .rationals import NEG_INF, is_chaos, to_rational

Profile = tuple[int, ...]
PayoffVector = tuple[Fraction, ...]


@dataclass(frozen=True)
class Game:
    players: tuple[str, ...]
    actions: tuple[tuple[str, ...], ...]
    payoffs: Mapping[Profile, PayoffVector] = field(repr=False)

    def __post_init__(self):
        n = len(self.players)
        if n < 1:
            raise GameError("a game needs at least one player")
        if len(self.actions) != n:
            raise DimensionMismatch(f"{len(self.actions)} action lists for {n} players")
        for i, acts in enumerate(self.actions):
            if len(acts) < 1:
                raise GameError(f"player {self.players[i]!r} has no actions")
            if len(set(acts)) != len(acts):
                raise GameError(f"duplicate action labels for player {self.players[i]!r}")
        expected = set(itertools.product(*(range(len(a)) for a in self.actions)))
        for prof, vec in self.payoffs.items():
            if prof not in expected:
                raise UnknownProfile(f"profile {prof} is not in the action grid")
            if len(vec) != n:
                raise DimensionMismatch(f"payoff at {prof} has {len(vec)} entries, expected {n}")
        missing = expected - set(self.payoffs)
        if missing:
            raise MissingProfile(f"no payoff for profile {min(missing)}")

    @property
    def num_players(self) -> int:
        return len(self.players)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.actions)

    def profiles(self) -> Iterator[Profile]:
        """All profiles in lexicographic order."""
        return itertools.product(*(range(k) for k in self.shape))

    def __getitem__(self, profile: Profile) -> PayoffVector:
        return self.payoffs[tuple(profile)]

    def deviations(self, a: Profile, i: int) -> Iterator[Profile]:
        """Profiles reachable from ``a`` by player ``i`` switching action (``a`` excluded)."""
        for b in range(self.shape[i]):
            if b != a[i]:
                yield a[:i] + (b,) + a[i + 1:]

    def labels(self, a: Profile) -> tuple[str, ...]:
        return tuple(self.actions[i][k] for i, k in enumerate(a))

    def profile_of(self, labels: Sequence[str]) -> Profile:
        return _resolve(self.players, self.actions, labels)

    def map_payoffs(self, fn) -> "Game":
        """New game with payoffs ``fn(profile, vector)``; same players and actions."""
        new = {a: tuple(fn(a, v)) for a, v in self.payoffs.items()}
        return Game(self.players, self.actions, new)

    def min_payoff(self) -> Fraction:
        return min(x for v in self.payoffs.values() for x in v)

    def max_abs_payoff(self) -> Fraction:
        return max(abs(x) for v in self.payoffs.values() for x in v)


def build_game(data: Mapping) -> Game:
    """Validate a raw description and return a :class:`Game`.

    ``data`` carries ``players`` (names), ``actions`` (label lists) and
    ``payoffs`` mapping either a comma-joined label string or a label tuple
    to a payoff vector.  If ``actions`` is omitted every player gets the
    labels ``"0".."k-1"`` inferred from the payoff keys.
    """
    try:
        players = tuple(str(p) for p in data["players"])
        raw = data["payoffs"]
    except KeyError as exc:
        raise GameError(f"missing field {exc.args[0]!r}") from None
    n = len(players)
    if "actions" in data:
        actions = tuple(tuple(str(x) for x in acts) for acts in data["actions"])
    else:
        keys = [_split_key(k) for k in raw]
        actions = tuple(
            tuple(sorted({k[i] for k in keys if len(k) == n}, key=_label_order))
            for i in range(n))
    payoffs: dict[Profile, PayoffVector] = {}
    for key, vec in raw.items():
        prof = _resolve(players, actions, _split_key(key))
        if prof in payoffs:
            raise GameError(f"duplicate payoff entry for {key!r}")
        if isinstance(vec, (str, bytes)) or not isinstance(vec, Sequence):
            raise DimensionMismatch(f"payoff at {key!r} must be a list")
        payoffs[prof] = tuple(to_rational(x) for x in vec)
    return Game(players, actions, payoffs)


def _resolve(players, actions, labels) -> Profile:
    if len(labels) != len(players):
        raise DimensionMismatch(f"profile {list(labels)} has {len(labels)} entries")
    out = []
    for i, lab in enumerate(labels):
        try:
            out.append(actions[i].index(str(lab).strip()))
        except ValueError:
            raise UnknownProfile(f"player {players[i]!r} has no action {lab!r}") from None
    return tuple(out)


def _split_key(key) -> tuple[str, ...]:
    if isinstance(key, str):
        return tuple(s.strip() for s in key.split(","))
    return tuple(str(s) for s in key)


def _label_order(label: str):
    return (0, int(label), "") if label.lstrip("-").isdigit() else (1, 0, label)


def from_nested(table, players: Sequence[str] | None = None) -> Game:
    """Build a game from a nested list indexed ``table[a_1][a_2]...[a_N]``.

    Leaves are payoff vectors; action labels are the indices as strings.
    Handy for the 2-player tables that fill the literature.
    """
    shape: list[int] = []
    node = table
    while not _is_leaf(node):
        shape.append(len(node))
        node = node[0]
    n = len(shape)
    if players is None:
        players = [f"P{i + 1}" for i in range(n)]
    payoffs = {}
    for prof in itertools.product(*(range(k) for k in shape)):
        node = table
        for k in prof:
            node = node[k]
        payoffs[prof] = tuple(to_rational(x) for x in node)
    actions = tuple(tuple(str(k) for k in range(m)) for m in shape)
    return Game(tuple(players), actions, payoffs)


def _is_leaf(node) -> bool:
    return not node or not isinstance(node[0], (list, tuple))


# -- weights -----------------------------------------------------------------

@dataclass(frozen=True)
class Weights:
    """Strictly positive weights summing to one."""

    lam: tuple[Fraction, ...]

    def __post_init__(self):
        lam = tuple(to_rational(x) for x in self.lam)
        object.__setattr__(self, "lam", lam)
        if not lam:
            raise InvalidWeights("empty weight vector")
        if any(x <= 0 for x in lam):
            raise InvalidWeights(f"weights must be positive: {[str(x) for x in lam]}")
        if sum(lam) != 1:
            raise InvalidWeights(f"weights sum to {sum(lam)}, not 1")

    @classmethod
    def equal(cls, n: int) -> "Weights":
        return cls(tuple(Fraction(1, n) for _ in range(n)))

    def __len__(self):
        return len(self.lam)

    def __iter__(self):
        return iter(self.lam)


def as_weights(w, n: int) -> Weights:
    if w is None:
        return Weights.equal(n)
    if not isinstance(w, Weights):
        w = Weights(tuple(w))
    if len(w) != n:
        raise InvalidWeights(f"{len(w)} weights for {n} players")
    return w


# -- equilibria and values ----------------------------------------------------

@dataclass(frozen=True)
class EquilibriumValue:
    """An optimal value together with every profile attaining it."""

    value: Fraction | float
    witnesses: tuple[Profile, ...] = ()

    @property
    def witness(self) -> Profile | None:
        return self.witnesses[0] if self.witnesses else None

    @property
    def is_chaos(self) -> bool:
        return is_chaos(self.value)


def deviation_gaps(g: Game, a: Profile) -> tuple[Fraction, ...]:
    """Per-player shortfall against the best unilateral deviation, floored at 0."""
    a = tuple(a)
    base = g[a]
    gaps = []
    for i in range(g.num_players):
        best = max((g[b][i] for b in g.deviations(a, i)), default=base[i])
        gaps.append(max(Fraction(0), best - base[i]))
    return tuple(gaps)


def is_epsilon_equilibrium(g: Game, a: Profile, eps=0) -> bool:
    eps = to_rational(eps)
    return all(d <= eps for d in deviation_gaps(g, a))


def epsilon_equilibria(g: Game, eps=0) -> tuple[Profile, ...]:
    """Profiles at which no unilateral deviation gains more than ``eps``.

    ``eps = 0`` gives the pure Nash equilibria.  Output is in lexicographic order.
    """
    eps = to_rational(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return tuple(a for a in g.profiles() if is_epsilon_equilibrium(g, a, eps))


def aggregate(g: Game, a: Profile, w=None) -> Fraction:
    """Weighted sum of payoffs at ``a``; equal weights when ``w`` is None.

    Raw sequences are used as given, so degenerate weights such as
    ``(1, 0)`` are allowed here even though :class:`Weights` rejects them.
    """
    vec = g[tuple(a)]
    lam = Weights.equal(g.num_players).lam if w is None else tuple(to_rational(x) for x in w)
    if len(lam) != len(vec):
        raise InvalidWeights(f"{len(lam)} weights for {len(vec)} players")
    return sum((l * x for l, x in zip(lam, vec)), Fraction(0))


def _extreme(g: Game, profiles, w, pick) -> EquilibriumValue:
    profiles = list(profiles)
    if not profiles:
        return EquilibriumValue(NEG_INF, ())
    vals = {a: aggregate(g, a, w) for a in profiles}
    best = pick(vals.values())
    return EquilibriumValue(best, tuple(a for a in profiles if vals[a] == best))


def best_equilibrium_value(g: Game, w=None, eps=0) -> EquilibriumValue:
    w = as_weights(w, g.num_players)
    return _extreme(g, epsilon_equilibria(g, eps), w, max)


def worst_equilibrium_value(g: Game, w=None, eps=0) -> EquilibriumValue:
    """Smallest aggregate over the eps-equilibria.

    An empty equilibrium set still reports NEG_INF, matching the best-value
    convention rather than returning +inf.
    """
    w = as_weights(w, g.num_players)
    return _extreme(g, epsilon_equilibria(g, eps), w, min)


def control_optimum(g: Game, w=None) -> EquilibriumValue:
    w = as_weights(w, g.num_players)
    return _extreme(g, g.profiles(), w, max)


def efficiency(g: Game, w=None):
    """Best-equilibrium value over the unrestricted optimum (price of stability)."""
    opt = control_optimum(g, w).value
    if opt <= 0:
        raise NonPositiveOptimum(f"efficiency needs a positive optimum, got {opt}")
    v = best_equilibrium_value(g, w).value
    if is_chaos(v):
        return NEG_INF
    return v / opt


@dataclass(frozen=True)
class PayoffGroup:
    value: PayoffVector
    members: tuple[Profile, ...]


def payoff_range(g: Game) -> list[PayoffGroup]:
    """Partition profiles by identical payoff vectors, ordered by the vector."""
    groups: dict[PayoffVector, list[Profile]] = {}
    for a in g.profiles():
        groups.setdefault(g[a], []).append(a)
    return [PayoffGroup(y, tuple(groups[y])) for y in sorted(groups)]
