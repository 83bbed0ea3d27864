from fractions import Fraction

import pytest

from flagtrop.errors import DivisionByZeroSeries, ZeroSeries
from flagtrop.puiseux import PuiseuxSeries, series_val

t = PuiseuxSeries.t_power


def test_val_single_leading_term():
    s = t(Fraction(1, 2)) + t(1)
    assert series_val(s) == Fraction(1, 2)


def test_val_sl2_critical_point():
    # z = t^{lambda/2} with lambda = 4
    assert series_val(t(2)) == 2


def test_val_cancellation():
    s = (t(1) + t(2)) - t(1)
    assert series_val(s) == 2
    assert s.is_exact


def test_zero_series_raises():
    with pytest.raises(ZeroSeries):
        series_val(t(1) - t(1))


def test_mul_exponents_add():
    s = t(Fraction(1, 2)) * t(Fraction(1, 2))
    assert series_val(s) == 1
    assert s.coefficient(1) == 1.0


def test_geometric_series_inverse():
    one_plus_t = PuiseuxSeries.constant(1) + t(1)
    inv = one_plus_t.inv(slots=4)
    for k, expect in enumerate([1.0, -1.0, 1.0, -1.0]):
        assert inv.coefficient(k) == pytest.approx(expect)


def test_leading_ratio():
    a = t(Fraction(5, 6)) + 0.5 * t(Fraction(7, 6))
    b = t(Fraction(5, 6)) - 0.5 * t(Fraction(7, 6))
    q = a / b
    assert series_val(q) == 0
    assert q.leading_coefficient() == pytest.approx(1.0)
    assert q.coefficient(Fraction(1, 3)) == pytest.approx(1.0)


def test_division_by_zero():
    with pytest.raises(DivisionByZeroSeries):
        t(1) / PuiseuxSeries.zero()


def test_associativity_window():
    a = PuiseuxSeries.constant(1) + t(1)
    b = (PuiseuxSeries.constant(2) + t(Fraction(1, 2))).inv(slots=12)
    c = t(Fraction(1, 3)) - 3 * t(2)
    lhs = (a * b) * c
    rhs = a * (b * c)
    assert lhs.close_to(rhs, tol=1e-12)


def test_positivity_flag():
    assert t(1).is_positive()
    assert not (-1 * t(1)).is_positive()


def test_truncation_tracking():
    s = (PuiseuxSeries.constant(1) + t(1)).inv(slots=5)
    assert not s.is_exact
    # adding an exact series keeps the finite window
    r = s + t(10)
    assert not r.is_exact
    assert r.upper == s.upper
