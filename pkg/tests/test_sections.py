from fractions import Fraction

import pytest

from flagtrop.conjecture import conjecture_check, sweep
from flagtrop.errors import NotIntegral
from flagtrop.laurent import LaurentPoly, RatFunc
from flagtrop.sections import (
    borel_weil_valuations,
    chart_torus_weights,
    f_P_polynomial,
    monomial_weight,
    nu,
    omega_inv,
    pi_P_chart,
    section_space,
    y_chart_matrix,
)
from flagtrop.superpot import nu_vee, string_polytope
from flagtrop.tropsolve import is_integral
from flagtrop.weights import (
    DominantWeight,
    ParabolicType,
    parse_weight,
    reduced_words,
    rho,
    weyl_dim,
)

F = Fraction

# [PAPER] the valuation image of the section space at lambda = rho, n = 3
RHO3_POINTS = {
    (0, 0, 0),
    (0, 1, 0),
    (0, 2, 1),
    (0, 1, 1),
    (1, 1, 0),
    (1, 0, 0),
    (1, 2, 1),
    (2, 1, 0),
}


def poly(expr_terms, variables=("x1", "x2", "x3")):
    return LaurentPoly(variables, expr_terms)


def test_y_chart_matrix_212():
    # [TRIVIAL] direct product of the three elementary factors
    Y = y_chart_matrix(3, (2, 1, 2))
    v = Y.rows[0][0].variables
    x1 = RatFunc.var("x1", v)
    x2 = RatFunc.var("x2", v)
    x3 = RatFunc.var("x3", v)
    one = RatFunc.constant(1, v)
    assert Y.rows[0] == [one, one * 0, one * 0]
    assert Y.rows[1] == [x2, one, one * 0]
    assert Y.rows[2] == [x1 * x2, x1 + x3, one]


def test_monomial_weight():
    # [TRIVIAL] x_t carries eps_{i_t+1} - eps_{i_t}
    assert monomial_weight(3, (2, 1, 2), (1, 0, 0)) == (0, -1, 1)
    assert monomial_weight(3, (2, 1, 2), (1, 2, 1)) == (-2, 0, 2)


def test_chart_torus_weights_fixtures():
    # [PAPER] solved torus scalings of the chart coordinates
    pB = ParabolicType(3, set())
    p1 = ParabolicType(3, {1})
    assert chart_torus_weights(3, (2, 1, 2), pB) == [
        (0, -1, 1),
        (-1, 1, 0),
        (0, -1, 1),
    ]
    assert chart_torus_weights(3, (2, 1, 2), p1) == [(0, -1, 1), (-1, 0, 1)]
    assert chart_torus_weights(2, (1,), ParabolicType(2, set())) == [(-1, 1)]


def test_pi_P_fixtures():
    # [PAPER] projection to G/P in chart coordinates
    v = ("x1", "x2", "x3")
    x1, x2, x3 = (RatFunc.var(s, v) for s in v)
    assert pi_P_chart(3, (2, 1, 2), ParabolicType(3, set())) == [x1, x2, x3]
    assert pi_P_chart(3, (2, 1, 2), ParabolicType(3, {1})) == [
        x1 + x3,
        -(x2 * x3),
    ]


def test_f_P_fixtures():
    # [PAPER] f_B = x1 x2^2 x3 and f_P = -x2 x3^2 - x1 x2 x3 for i=(212)
    fB = f_P_polynomial(3, (2, 1, 2), ParabolicType(3, set()))
    assert fB == poly({(1, 2, 1): F(1)})
    f1 = f_P_polynomial(3, (2, 1, 2), ParabolicType(3, {1}))
    assert f1 == poly({(0, 1, 2): F(-1), (1, 1, 1): F(-1)})
    # [TRIVIAL] SL2: the anticanonical factor is x1 itself
    f2 = f_P_polynomial(2, (1,), ParabolicType(2, set()))
    assert f2 == LaurentPoly(("x1",), {(1,): F(1)})


def test_omega_inv_and_nu_fixture():
    # [PAPER] lambda = 2w1 + 5w2, i = (212)
    lam = parse_weight("2w1+5w2", n=3)
    w = omega_inv(lam, (2, 1, 2))
    assert w == poly({(1, 3, 3): F(-1), (2, 3, 2): F(-1)})
    assert nu(lam, (2, 1, 2)) == (2, 3, 2)
    assert tuple(nu_vee(lam, (2, 1, 2))) == (2, 3, 2)


def test_omega_inv_zero_weight():
    lam = DominantWeight((0, 0, 0))
    assert nu(lam, (2, 1, 2)) == (0, 0, 0)


def test_omega_inv_requires_integrality():
    # [PAPER] (6, 3, -2) has a non-integral critical point
    lam = DominantWeight((6, 3, -2))
    with pytest.raises(NotIntegral):
        omega_inv(lam, (2, 1, 2))


def test_borel_weil_rho():
    # [PAPER] the 8 valuation points of the weight-rho section space
    assert set(borel_weil_valuations(rho(3), (2, 1, 2))) == RHO3_POINTS


def test_borel_weil_sl2():
    # [PAPER] P^1 with O(lambda): image is {0..lambda}
    assert borel_weil_valuations(DominantWeight((4, 0)), (1,)) == [
        (k,) for k in range(5)
    ]


def test_borel_weil_zero_weight():
    assert borel_weil_valuations(DominantWeight((0, 0, 0)), (2, 1, 2)) == [
        (0, 0, 0)
    ]


def test_section_space_dimension_oracle():
    # [DERIVED] pivot count must equal the Weyl dimension formula
    for spec in ["2w1", "1w1+1w2", "2w1+2w2", "3w2"]:
        lam = parse_weight(spec, n=3)
        for word in reduced_words(3):
            assert section_space(lam, word).dimension == weyl_dim(lam)


def test_borel_weil_matches_string_polytope():
    # [DERIVED] the valuation image equals the string polytope lattice
    for spec in ["1w1+1w2", "2w1+1w2", "3w1", "2w1+2w2"]:
        lam = parse_weight(spec, n=3)
        for word in reduced_words(3):
            bw = set(borel_weil_valuations(lam, word))
            sp = set(string_polytope(lam, word).lattice_points())
            assert bw == sp


def test_nu_matches_nu_vee_n3():
    # [DERIVED] the conjecture at desk scale, both n=3 words
    for spec in ["2w1+5w2", "2w1+2w2", "4w1+4w2", "3w1"]:
        lam = parse_weight(spec, n=3)
        if not is_integral(lam):
            continue
        for word in reduced_words(3):
            assert tuple(nu(lam, word)) == tuple(nu_vee(lam, word))


def test_nu_matches_nu_vee_n4_spot():
    # [DERIVED] one n=4 spot check on a non-standard word
    lam = parse_weight("2w1+2w2+2w3", n=4)
    assert is_integral(lam)
    for word in [(1, 2, 1, 3, 2, 1), (3, 2, 3, 1, 2, 3)]:
        assert tuple(nu(lam, word)) == tuple(nu_vee(lam, word))


def test_conjecture_check_report():
    lam = parse_weight("2w1+5w2", n=3)
    r = conjecture_check(lam, (2, 1, 2))
    assert r["equal"] is True
    assert r["nu"] == [2, 3, 2] and r["nu_vee"] == [2, 3, 2]
    assert r["errors"] == []
    # non-integral weights report the failure instead of raising
    r = conjecture_check(DominantWeight((6, 3, -2)), (2, 1, 2))
    assert r["integral"] is False
    assert r["equal"] is None
    assert any("NotIntegral" in e for e in r["errors"])


def test_sweep_small():
    reports, failures = sweep(3, 2, words=[(2, 1, 2)], workers=1)
    assert len(reports) == 9
    # failures are exactly the non-integral weights in this range
    assert all(any("NotIntegral" in e for e in r["errors"]) for r in failures)
    ok = [r for r in reports if r["equal"] is True]
    assert all(r["integral"] for r in ok)
    assert ok, "at least the integral cases must verify"
    # deterministic order
    reports2, _ = sweep(3, 2, words=[(2, 1, 2)], workers=1)
    assert [r["lambda"] for r in reports2] == [r["lambda"] for r in reports]
