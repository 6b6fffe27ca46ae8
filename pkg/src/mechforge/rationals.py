"""Exact rational parsing and formatting."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import NonRationalNumber

NEG_INF = -math.inf
"""Value of a best/worst-equilibrium problem whose equilibrium set is empty."""


def to_rational(x) -> Fraction:
    """Convert ``x`` to a ``Fraction`` without losing precision.

    Accepts ints, Fractions, decimal or ``p/q`` strings and finite floats.
    Floats go through their shortest repr, so ``0.2`` becomes ``1/5``
    rather than the binary expansion.
    """
    if type(x) is Fraction:
        return x
    if isinstance(x, bool):
        raise NonRationalNumber(f"boolean is not a payoff: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise NonRationalNumber(f"non-finite number: {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        s = x.strip()
        try:
            value = Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise NonRationalNumber(f"cannot parse {x!r} as a rational") from None
        return value
    raise NonRationalNumber(f"unsupported number type {type(x).__name__}: {x!r}")


def fmt(x) -> str:
    """Canonical string form: ``"p/q"``, ``"p"`` for integers, ``"-inf"`` for the sentinel."""
    if isinstance(x, float):
        if x == NEG_INF:
            return "-inf"
        raise ValueError(f"refusing to format inexact value {x!r}")
    return str(Fraction(x))


def parse_value(s: str):
    """Inverse of :func:`fmt`; ``"-inf"`` maps back to :data:`NEG_INF`."""
    if s.strip() == "-inf":
        return NEG_INF
    return to_rational(s)


def is_chaos(value) -> bool:
    return isinstance(value, float) and value == NEG_INF
