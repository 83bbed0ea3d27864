"""Small helpers around fractions.Fraction: parsing, formatting, JSON shape.

Rationals travel through JSON as "p/q" strings (or "p" when q == 1).
"""

from __future__ import annotations

from fractions import Fraction


def rat(x) -> Fraction:
    """Coerce ints, strings like "3/2", and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("refusing implicit float -> Fraction conversion")
    return Fraction(x)


def rat_str(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def lcm_denominator(values) -> int:
    """lcm of the denominators of an iterable of rationals (1 if empty)."""
    from math import lcm

    out = 1
    for v in values:
        out = lcm(out, Fraction(v).denominator)
    return out


def recognize_rational(x: float, max_den: int = 1024, tol: float = 1e-9) -> Fraction | None:
    """Nearest small-denominator rational if within tol, else None.

    Used for display and fixtures only, never inside computations.
    """
    cand = Fraction(x).limit_denominator(max_den)
    if abs(float(cand) - x) <= tol:
        return cand
    return None
