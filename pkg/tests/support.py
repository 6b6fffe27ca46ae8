"""Shared fixtures data and independent oracles for the test suite.

The oracles here deliberately avoid the code paths they check: equilibria
are found by raw payoff comparisons, LP feasibility by Fourier-Motzkin
elimination, and kappa implementability by an LP over every profile.
"""

import itertools
import random
from fractions import Fraction
from pathlib import Path

from mechforge.game import Game, from_nested
from mechforge.lp import EQ, GE, LE, LinearSystem, solve_feasibility

GAMES_DIR = Path(__file__).resolve().parent.parent / "games"

ILLUSTRATIVE = [
    [(100, 100), (0, 102), (0, 102)],
    [(102, 0), (1, 2), (0, 0)],
    [(102, 0), (0, 0), (3, 1)],
]
PUNISHMENT_GAP = [
    [(100, 100), (101, 101), (1, 1)],
    [(101, 101), (1, 1), (2, 103)],
    [(1, 1), (103, 2), (1, 1)],
]
SHARED_PAYOFFS = [
    [(1, 1), (1, 1)],
    [(0, 0), (2, 2)],
]
PENNIES = [
    [(1, -1), (-1, 1)],
    [(-1, 1), (1, -1)],
]


def illustrative():
    return from_nested(ILLUSTRATIVE)


def punishment_gap():
    return from_nested(PUNISHMENT_GAP)


def shared_payoffs():
    return from_nested(SHARED_PAYOFFS)


def pennies():
    return from_nested(PENNIES)


def random_game(rng: random.Random, max_players=3, max_actions=3, low=-5, high=10,
                min_players=1) -> Game:
    n = rng.randint(min_players, max_players)
    shape = [rng.randint(1, max_actions) for _ in range(n)]
    pay = {a: tuple(Fraction(rng.randint(low, high)) for _ in range(n))
           for a in itertools.product(*(range(k) for k in shape))}
    return Game(tuple(f"P{i + 1}" for i in range(n)),
                tuple(tuple(str(k) for k in range(m)) for m in shape), pay)


def random_2p(rng: random.Random, sizes=(2, 3), low=0, high=10) -> Game:
    k = rng.choice(sizes)
    pay = {a: (Fraction(rng.randint(low, high)), Fraction(rng.randint(low, high)))
           for a in itertools.product(range(k), range(k))}
    labels = tuple(str(i) for i in range(k))
    return Game(("P1", "P2"), (labels, labels), pay)


def random_weights(rng: random.Random, n: int):
    raw = [rng.randint(1, 20) for _ in range(n)]
    s = sum(raw)
    return tuple(Fraction(r, s) for r in raw)


# -- oracles -------------------------------------------------------------------

def brute_equilibria(g: Game, eps=0):
    """Every profile checked against every alternative action of every player."""
    eps = Fraction(eps)
    shape = [len(a) for a in g.actions]
    out = []
    for a in itertools.product(*(range(k) for k in shape)):
        ok = True
        for i in range(len(shape)):
            for b in range(shape[i]):
                dev = list(a)
                dev[i] = b
                if g.payoffs[tuple(dev)][i] - g.payoffs[a][i] > eps:
                    ok = False
        if ok:
            out.append(a)
    return out


def fm_feasible(system: LinearSystem) -> bool:
    """Fourier-Motzkin elimination; exponential, for small systems only."""
    rows = []
    for c in system.rows():
        g, h = list(c.coeffs), c.rhs
        if c.relation == GE:
            g, h = [-x for x in g], -h
        rows.append((g, h))
        if c.relation == EQ:
            rows.append(([-x for x in g], -h))
    for j in range(system.num_vars):
        pos = [(g, h) for g, h in rows if g[j] > 0]
        neg = [(g, h) for g, h in rows if g[j] < 0]
        rest = [(g, h) for g, h in rows if g[j] == 0]
        for gp, hp in pos:
            for gn, hn in neg:
                sp, sn = gp[j], -gn[j]
                rest.append(([sn * x + sp * y for x, y in zip(gp, gn)], sn * hp + sp * hn))
        rows = rest
    return all(h >= 0 for _, h in rows)


def kappa_lp_implementable(g: Game, target, kappa) -> bool:
    """LP with a transfer variable for every player at every profile."""
    n = g.num_players
    profiles = list(itertools.product(*(range(len(a)) for a in g.actions)))
    idx = {a: k for k, a in enumerate(profiles)}
    sys = LinearSystem(n * len(profiles))
    for a in profiles:
        base = idx[a] * n
        for i in range(n):
            sys.add_sparse({base + i: 1}, GE, 0)
        sys.add_sparse({base + i: 1 for i in range(n)}, LE, kappa)
    target = tuple(target)
    for i in range(n):
        for b in range(len(g.actions[i])):
            if b == target[i]:
                continue
            dev = target[:i] + (b,) + target[i + 1:]
            sys.add_sparse({idx[target] * n + i: 1, idx[dev] * n + i: -1}, GE,
                           g.payoffs[dev][i] - g.payoffs[target][i])
    return solve_feasibility(sys).feasible


def kappa_value_by_lp(g: Game, kappa, w=None):
    """Best aggregate over targets the all-profile LP can implement; -inf if none."""
    n = g.num_players
    lam = w or tuple(Fraction(1, n) for _ in range(n))
    best = None
    for a in itertools.product(*(range(len(x)) for x in g.actions)):
        if kappa_lp_implementable(g, a, kappa):
            v = sum(l * x for l, x in zip(lam, g.payoffs[a]))
            best = v if best is None or v > best else best
    return float("-inf") if best is None else best


# -- hypothesis strategies -----------------------------------------------------

from hypothesis import strategies as st  # noqa: E402


@st.composite
def games(draw, max_players=3, max_actions=3, low=-5, high=10):
    n = draw(st.integers(1, max_players))
    shape = draw(st.lists(st.integers(1, max_actions), min_size=n, max_size=n))
    profiles = list(itertools.product(*(range(k) for k in shape)))
    vals = draw(st.lists(st.lists(st.integers(low, high), min_size=n, max_size=n),
                         min_size=len(profiles), max_size=len(profiles)))
    pay = {a: tuple(Fraction(x) for x in v) for a, v in zip(profiles, vals)}
    return Game(tuple(f"P{i + 1}" for i in range(n)),
                tuple(tuple(str(k) for k in range(m)) for m in shape), pay)


@st.composite
def weight_vectors(draw, n):
    raw = draw(st.lists(st.integers(1, 50), min_size=n, max_size=n))
    s = sum(raw)
    return tuple(Fraction(r, s) for r in raw)
