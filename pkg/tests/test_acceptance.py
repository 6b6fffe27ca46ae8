"""One test per acceptance criterion; the terminal summary prints PASS/FAIL per line.

All comparisons are exact rational equality.
"""

import random
from fractions import Fraction as F

import pytest

import support
from mechforge.game import (
    best_equilibrium_value,
    control_optimum,
    efficiency,
    epsilon_equilibria,
)
from mechforge.info import (
    FULL,
    PARTIAL,
    box_member,
    implementable,
    info_gap_report,
    punish_budget,
    reward_budget,
)
from mechforge.lp import LinearSystem, verify_certificate, verify_witness
from mechforge.mechanism import (
    FullTransfer,
    KappaScheme,
    efficiency_curve,
    kappa_threshold,
    perturb,
    perturb_full,
    synthesize_witness,
    theta_threshold,
    value_at,
)
from mechforge.planner import ProportionalFamily, optimize_theta, planner_curve, post_tax_split

criterion = pytest.mark.criterion


@criterion(1, "illustrative baseline: E={(1,1),(2,2)}, V=2, V^=100, E=1/50")
def test_c01_baseline(illus):
    assert epsilon_equilibria(illus) == ((1, 1), (2, 2))
    assert best_equilibrium_value(illus).value == 2
    assert control_optimum(illus).value == 100
    assert efficiency(illus) == F(1, 50)


@criterion(2, "kappa curve [(0,2),(1,51),(4,100)] and left-closed lookups")
def test_c02_kappa_curve(illus):
    c = efficiency_curve(illus, "kappa")
    assert c.pairs() == [(0, 2), (1, 51), (4, 100)]
    # scaled by the optimum: 2%, 51%, 100%
    assert [v / 100 for v in c.values] == [F(1, 50), F(51, 100), 1]
    assert value_at(c, F(99, 100)) == 2
    assert value_at(c, 1) == 51
    assert value_at(c, 4) == 100


@criterion(3, "theta curve [(0,2),(1/103,51),(1/51,100)] with witnesses (0,1),(2,0)")
def test_c03_theta_curve(illus):
    c = efficiency_curve(illus, "theta")
    assert c.pairs() == [(0, 2), (F(1, 103), 51), (F(1, 51), 100)]
    assert {(0, 1), (2, 0)} <= set(c.steps[1].witnesses)


@criterion(4, "witness regeneration: pi(0,0)=(2,2) at kappa=4 makes (0,0) an equilibrium")
def test_c04_witness(illus):
    t = synthesize_witness(illus, (0, 0), KappaScheme(4))
    assert t == FullTransfer({(0, 0): (F(2), F(2))})
    assert (0, 0) in epsilon_equilibria(perturb_full(illus, t))


@criterion(5, "information equivalence for reward boxes: v_partial = v_full = closed form")
def test_c05_information_equivalence(illus):
    for kappa in (0, 1, 4):
        rep = info_gap_report(illus, reward_budget(kappa))
        closed = value_at(efficiency_curve(illus, "kappa"), kappa)
        assert rep.v_full == rep.v_partial == closed
        assert closed == support.kappa_value_by_lp(illus, kappa)
    rng = random.Random(4242)
    for _ in range(100):
        g = support.random_2p(rng, sizes=(2, 3), low=0, high=10)
        kappa = rng.choice((0, 1, 2, 3))
        rep = info_gap_report(g, reward_budget(kappa))
        closed = value_at(efficiency_curve(g, "kappa"), kappa)
        assert rep.v_full == rep.v_partial == closed == support.kappa_value_by_lp(g, kappa)


@criterion(6, "information gap on the punishment example: v_full >= 100, v_partial = 105/2")
def test_c06_information_gap(gap):
    box = punish_budget(1)
    full = implementable(gap, (0, 0), box, FULL)
    assert full.feasible
    assert (0, 0) in epsilon_equilibria(perturb(gap, full.transfer))
    assert box_member(full.transfer, box, gap)
    rep = info_gap_report(gap, box)
    assert rep.v_full >= 100
    assert rep.v_partial == F(105, 2)
    assert rep.v_partial < rep.v_full
    for target in ((0, 0), (0, 1), (1, 0)):
        res = implementable(gap, target, box, PARTIAL)
        assert not res.feasible
        s = LinearSystem(len(res.lp.rows[0].coeffs), list(res.lp.rows))
        assert verify_certificate(s, res.lp.certificate)


def e_lambda_closed_form(l1):
    if l1 < F(1, 51):
        return (2 - l1) / (102 * (1 - l1))
    if l1 < F(1, 3):
        return (2 - l1) / 100
    if l1 < F(50, 51):
        return (1 + 2 * l1) / 100
    return (1 + 2 * l1) / (102 * l1)


@criterion(7, "weighted values match the closed forms for V, V^ and the four-branch efficiency")
def test_c07_weighted(illus):
    for l1 in (F(1, 100), F(1, 51), F("0.2"), F(1, 3), F(1, 2), F(50, 51), F("0.99")):
        w = (l1, 1 - l1)
        assert best_equilibrium_value(illus, w).value == max(2 - l1, 1 + 2 * l1)
        assert control_optimum(illus, w).value == max(100, 102 * l1, 102 * (1 - l1))
        assert efficiency(illus, w) == e_lambda_closed_form(l1)


@criterion(8, "planner optimum theta*=1/51, value 10100/51; pieces (2-theta)*{2,51,100}")
def test_c08_planner(illus):
    fam = ProportionalFamily(illus, 2, -1)
    best = optimize_theta(fam)
    assert (best.theta, best.value) == (F(1, 51), F(10100, 51))
    c = planner_curve(fam)
    assert c.breakpoints == (0, F(1, 103), F(1, 51))
    pieces = ((0, F(1, 103), 2), (F(1, 103), F(1, 51), 51), (F(1, 51), F(1), 100))
    for lo, hi, level in pieces:
        for x in (lo, (lo + hi) / 2, hi - F(1, 10**6)):
            assert value_at(c, x) == level * (2 - x)
    assert value_at(c, 1) == 100


@criterion(9, "tax split: (2.85, 0.95, 0.2) and (97, 97, 6)")
def test_c09_tax_split(illus):
    s = post_tax_split(illus, FullTransfer(), F(5, 100), (2, 2))
    assert (*s.players, s.government) == (F("2.85"), F("0.95"), F("0.2"))
    pi = FullTransfer({(0, 0): (F(2), F(2))})
    s = post_tax_split(illus, pi, F(5, 100), (0, 0))
    assert (*s.players, s.government) == (97, 97, 6)
    assert s.balanced()


def _properties(g, rng):
    """All criterion-10 checks on one game; returns a list of violation labels."""
    bad = []
    n = g.num_players
    sets = [set(epsilon_equilibria(g, e)) for e in (0, 1, 2, 5)]
    if not all(a <= b for a, b in zip(sets, sets[1:])):
        bad.append("nesting")
    if sets[0] != set(support.brute_equilibria(g, 0)):
        bad.append("oracle")

    shifted = g.map_payoffs(lambda a, v: (x + 5 for x in v))
    for kind, game in (("kappa", g), ("theta", shifted)):
        c = efficiency_curve(game, kind)
        probes = set(c.breakpoints) | {F(k, 7) for k in range(8)}
        if kind == "kappa":
            probes |= {F(k) for k in range(1, 30)}
        probes = sorted(probes)
        vals = [value_at(c, x) for x in probes]
        if any(a > b for a, b in zip(vals, vals[1:])):
            bad.append(f"monotone-{kind}")

    eq = sets[0]
    for a in g.profiles():
        if (kappa_threshold(g, a) == 0) != (a in eq):
            bad.append("zero-threshold-kappa")
        if (theta_threshold(shifted, a) == 0) != (a in eq):
            bad.append("zero-threshold-theta")

    shift = [rng.randint(-7, 7) for _ in range(n)]
    moved = g.map_payoffs(lambda a, v: (x + c for x, c in zip(v, shift)))
    if set(epsilon_equilibria(moved)) != eq or set(epsilon_equilibria(moved, 1)) != sets[1]:
        bad.append("shift")

    w1, w2 = support.random_weights(rng, n), support.random_weights(rng, n)
    b1, b2 = best_equilibrium_value(g, w1).value, best_equilibrium_value(g, w2).value
    if eq and abs(b1 - b2) > g.max_abs_payoff() * sum(abs(x - y) for x, y in zip(w1, w2)):
        bad.append("lipschitz")

    box = punish_budget(rng.randint(0, 2)) if rng.random() < 0.5 else reward_budget(rng.randint(0, 3))
    rep = info_gap_report(g, box)
    if rep.v_partial > rep.v_full:
        bad.append("dominance")
    profiles = list(g.profiles())
    for mode in (FULL, PARTIAL):
        for a in rng.sample(profiles, min(6, len(profiles))):
            res = implementable(g, a, box, mode)
            if res.lp is None:
                continue
            s = LinearSystem(len(res.lp.rows[0].coeffs), list(res.lp.rows))
            ok = (verify_witness(s, res.lp.witness) if res.feasible
                  else verify_certificate(s, res.lp.certificate))
            if not ok:
                bad.append("lp-round-trip")
            if res.feasible and a not in epsilon_equilibria(perturb(g, res.transfer)):
                bad.append("witness")
    return bad


@criterion(10, "property suites on 1000 random games: zero violations")
def test_c10_properties():
    rng = random.Random(2026)
    violations = []
    for k in range(1000):
        g = support.random_game(rng, max_players=3, max_actions=3, low=-5, high=10)
        for label in _properties(g, rng):
            violations.append((k, label))
    assert violations == []


@criterion(11, "continuous-time content: out of scope")
def test_c11_continuous_time():
    pytest.skip("continuous-time games are not reproducible at desk scale; "
                "the static curve of criterion 2 is the only covered consequence")
