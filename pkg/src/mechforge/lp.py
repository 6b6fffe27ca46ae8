"""Exact rational linear feasibility.

Decides whether a system of linear (in)equalities over free variables has a
solution.  Phase-one simplex with Bland's rule over ``Fraction``; on success
returns a solution, on failure a Farkas certificate: nonnegative multipliers
for the ``<=`` rows (free sign on ``=`` rows) whose combination reads
``0 <= negative``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .rationals import to_rational

LE, EQ, GE = "<=", "==", ">="
_RELATIONS = {"<=": LE, "≤": LE, "=": EQ, "==": EQ, ">=": GE, "≥": GE}

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        rel = _RELATIONS.get(self.relation)
        if rel is None:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "relation", rel)
        object.__setattr__(self, "coeffs", tuple(to_rational(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", to_rational(self.rhs))

    def lhs(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.coeffs, x) if c), _ZERO)

    def holds(self, x: Sequence[Fraction]) -> bool:
        v = self.lhs(x)
        if self.relation == LE:
            return v <= self.rhs
        if self.relation == GE:
            return v >= self.rhs
        return v == self.rhs

    def as_le(self) -> tuple[tuple[Fraction, ...], Fraction]:
        """``(g, h)`` with the constraint equivalent to ``g.x <= h`` (or ``=`` if EQ)."""
        if self.relation == GE:
            return tuple(-c for c in self.coeffs), -self.rhs
        return self.coeffs, self.rhs


@dataclass
class LinearSystem:
    """Constraints over ``num_vars`` free rational variables.

    ``lower`` and ``upper`` give optional per-variable bounds (``None`` means
    unbounded); they are turned into ordinary rows before solving.
    """

    num_vars: int
    constraints: list[Constraint] = field(default_factory=list)
    lower: list[Fraction | None] | None = None
    upper: list[Fraction | None] | None = None

    def add(self, coeffs, relation, rhs) -> None:
        c = Constraint(tuple(coeffs), relation, rhs)
        if len(c.coeffs) != self.num_vars:
            raise ValueError(f"constraint has {len(c.coeffs)} coefficients, expected {self.num_vars}")
        self.constraints.append(c)

    def add_sparse(self, terms: dict[int, Fraction], relation, rhs) -> None:
        coeffs = [_ZERO] * self.num_vars
        for j, c in terms.items():
            coeffs[j] += to_rational(c)
        self.add(coeffs, relation, rhs)

    def rows(self) -> list[Constraint]:
        """Explicit constraints followed by bound rows."""
        out = list(self.constraints)
        for bounds, rel in ((self.lower, GE), (self.upper, LE)):
            if bounds is None:
                continue
            for j, b in enumerate(bounds):
                if b is not None:
                    e = [_ZERO] * self.num_vars
                    e[j] = _ONE
                    out.append(Constraint(tuple(e), rel, b))
        return out


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: tuple[Fraction, ...] | None = None
    certificate: tuple[Fraction, ...] | None = None
    rows: tuple[Constraint, ...] = ()

    def __bool__(self):
        return self.feasible


def solve_feasibility(system: LinearSystem) -> FeasibilityResult:
    rows = system.rows()
    n = system.num_vars
    m = len(rows)
    if m == 0:
        return FeasibilityResult(True, tuple([_ZERO] * n), None, ())
    for r in rows:
        if len(r.coeffs) != n:
            raise ValueError("coefficient length does not match num_vars")

    # Columns: x+ (n), x- (n), one slack per inequality row, then artificials.
    # A row g.x <= h with h >= 0 starts with its slack basic; equalities and
    # rows with h < 0 (negated to get a nonnegative right side) need an
    # artificial.
    ineq = [k for k, r in enumerate(rows) if r.relation != EQ]
    slack_col = {k: 2 * n + s for s, k in enumerate(ineq)}
    prepared = []
    for k, r in enumerate(rows):
        g, h = r.as_le()
        sign = -1 if h < 0 else 1
        prepared.append((g, h, sign, r.relation == EQ or h < 0))
    art0 = 2 * n + len(ineq)
    art_col = {}
    for k, (_, _, _, needs) in enumerate(prepared):
        if needs:
            art_col[k] = art0 + len(art_col)
    ncols = art0 + len(art_col)

    tab: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    for k, (g, h, sign, _) in enumerate(prepared):
        row = [_ZERO] * ncols
        for j, c in enumerate(g):
            if c:
                row[j] = sign * c
                row[n + j] = -sign * c
        if k in slack_col:
            row[slack_col[k]] = Fraction(sign)
        if k in art_col:
            row[art_col[k]] = _ONE
            basis.append(art_col[k])
        else:
            basis.append(slack_col[k])
        tab.append(row)
        rhs.append(sign * h)

    # Reduced costs of the phase-one objective (minimise the artificial sum).
    red = [_ZERO] * ncols
    for j in range(art0, ncols):
        red[j] = _ONE
    for k in art_col:
        for j, v in enumerate(tab[k]):
            if v:
                red[j] -= v

    while True:
        enter = next((j for j in range(ncols) if red[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for k in range(m):
            a = tab[k][enter]
            if a > 0:
                ratio = rhs[k] / a
                if best is None or ratio < best or (ratio == best and basis[k] < basis[leave]):
                    best, leave = ratio, k
        if leave is None:
            # Cannot happen: the phase-one objective is bounded below by zero.
            raise RuntimeError("phase-one problem reported unbounded")
        _pivot(tab, rhs, red, leave, enter)
        basis[leave] = enter

    obj = sum((rhs[k] for k in range(m) if basis[k] >= art0), _ZERO)
    if obj == 0:
        values = [_ZERO] * ncols
        for k, j in enumerate(basis):
            values[j] = rhs[k]
        x = tuple(values[j] - values[n + j] for j in range(n))
        return FeasibilityResult(True, x, None, tuple(rows))

    # Phase-one duals: y_k = 1 - (reduced cost of artificial k), or, for a row
    # that started on its slack, y_k = -(reduced cost of that slack).
    cert = []
    for k, (_, _, sign, _) in enumerate(prepared):
        if k in art_col:
            y = _ONE - red[art_col[k]]
        else:
            y = -red[slack_col[k]]
        cert.append(-sign * y)
    return FeasibilityResult(False, None, tuple(cert), tuple(rows))


def _pivot(tab, rhs, red, r, c):
    prow = tab[r]
    p = prow[c]
    if p != 1:
        inv = 1 / p
        prow[:] = [v * inv if v else v for v in prow]
        rhs[r] *= inv
    nz = [j for j, v in enumerate(prow) if v]
    for k, row in enumerate(tab):
        if k == r:
            continue
        f = row[c]
        if f:
            for j in nz:
                row[j] -= f * prow[j]
            rhs[k] -= f * rhs[r]
    f = red[c]
    if f:
        for j in nz:
            red[j] -= f * prow[j]


def verify_witness(system: LinearSystem, x: Sequence[Fraction]) -> bool:
    return all(r.holds(x) for r in system.rows())


def verify_certificate(system: LinearSystem, cert: Sequence[Fraction]) -> bool:
    """Check that ``cert`` combines the rows into ``0 <= negative``."""
    rows = system.rows()
    if len(cert) != len(rows):
        return False
    total = [_ZERO] * system.num_vars
    bound = _ZERO
    for mu, r in zip(cert, rows):
        if r.relation != EQ and mu < 0:
            return False
        if not mu:
            continue
        g, h = r.as_le()
        for j, c in enumerate(g):
            if c:
                total[j] += mu * c
        bound += mu * h
    return all(v == 0 for v in total) and bound < 0
