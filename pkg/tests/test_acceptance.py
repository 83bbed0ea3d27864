"""The acceptance gate: one test and one printed pass/fail line per criterion.

Each criterion carries its own wall-clock budget; exceeding it fails the
test.  The result lines are collected by conftest and re-printed in a
terminal summary section, so they survive pytest's output capture.
"""

import functools
import subprocess
import sys
import time
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path

import conftest

from flagtrop.conjecture import sweep
from flagtrop.puiseux_crit import expand_critical_point, residual_report
from flagtrop.sections import borel_weil_valuations, nu, omega_inv
from flagtrop.superpot import nu_vee, string_polytope
from flagtrop.tropsolve import count_grid_solutions, ideal_filling, solve_tropical
from flagtrop.weights import DominantWeight, parse_weight, rho

F = Fraction

POINTS_RHO3 = {
    (0, 0, 0),
    (0, 1, 0),
    (0, 2, 1),
    (0, 1, 1),
    (1, 1, 0),
    (1, 0, 0),
    (1, 2, 1),
    (2, 1, 0),
}


def emit(line):
    print(line, flush=True)
    conftest.acceptance_lines.append(line)


def criterion(num, desc, limit):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper():
            t0 = time.perf_counter()
            try:
                fn()
                dt = time.perf_counter() - t0
                assert dt < limit, f"took {dt:.1f}s, budget {limit}s"
            except BaseException:
                dt = time.perf_counter() - t0
                emit(f"criterion {num}: FAIL ({dt:.1f}s) {desc}")
                raise
            emit(f"criterion {num}: PASS ({dt:.1f}s) {desc}")
        return wrapper
    return deco


@criterion(1, "tropical point (7,5,0): arrows (1,2,1,3,2,2) exact", 1)
def test_criterion_1_tropical_fixture():
    tp = solve_tropical(DominantWeight((7, 5, 0)))
    letters = tp.sigma_letters()
    assert letters == (F(1), F(2), F(1), F(3), F(2), F(2))
    assert all(isinstance(x, Fraction) for x in letters)


@criterion(2, "filling (6,3,-2): (3/2,13/6,13/6), not integral", 1)
def test_criterion_2_nonintegral_filling():
    f = ideal_filling(DominantWeight((6, 3, -2)))
    assert f[(1, 2)] == F(3, 2)
    assert f[(1, 3)] == F(13, 6)
    assert f[(2, 3)] == F(13, 6)
    assert f.is_integral() is False


@criterion(3, "Puiseux (3,1,0) K=8: b-arrow coefficients to 1e-9", 10)
def test_criterion_3_puiseux_expansion():
    e = expand_critical_point(DominantWeight((3, 1, 0)), K=8)
    b = e.arrow_series_by_letter()[1]
    expect = [1, F(-1, 2), F(3, 8), F(-5, 16), F(35, 128)]
    for step, c in enumerate(expect):
        got = b.coefficient(F(5, 6) + F(step, 3))
        assert abs(got - float(c)) < 1e-9
    assert residual_report(e) < 1e-9


@criterion(4, "string polytope rho, i=(212): 6 inequalities, 8 points", 1)
def test_criterion_4_string_polytope():
    sp = string_polytope(rho(3), (2, 1, 2))
    data = sp.to_json()
    assert len(data["A"]) == 6
    assert set(sp.lattice_points()) == POINTS_RHO3


@criterion(5, "section-space valuations rho, i=(212): same 8 points", 30)
def test_criterion_5_borel_weil():
    assert set(borel_weil_valuations(rho(3), (2, 1, 2))) == POINTS_RHO3


@criterion(6, "fixture 2w1+5w2, i=(212): nu = nu_vee = (2,3,2)", 30)
def test_criterion_6_conjecture_fixture():
    lam = parse_weight("2w1+5w2", n=3)
    w = omega_inv(lam, (2, 1, 2))
    assert w.terms == {(1, 3, 3): F(-1), (2, 3, 2): F(-1)}
    assert tuple(nu(lam, (2, 1, 2))) == (2, 3, 2)
    assert tuple(nu_vee(lam, (2, 1, 2))) == (2, 3, 2)


@criterion(7, "sweep: n=3 coeffs<=4 both words; n=4 coeffs<=2 all 16 words", 1800)
def test_criterion_7_sweep():
    allowed = ("NotIntegral", "NotSubtractionFree", "LowestWeightAmbiguous")
    unsupported = []
    for n, max_coeff in ((3, 4), (4, 2)):
        reports, failures = sweep(n, max_coeff, workers=1)
        for r in reports:
            if r["equal"] is True:
                continue
            # every non-verified case must be an explicitly recognized
            # domain failure, never a silent inequality
            assert r["equal"] is None, f"inequality at {r['lambda']} {r['word']}"
            assert any(a in e for e in r["errors"] for a in allowed), r
            if any(a in e for e in r["errors"] for a in allowed[1:]):
                unsupported.append(r)
        assert all(r in reports for r in failures)
    for r in unsupported:  # listed explicitly, not counted as pass
        emit(
            f"criterion 7: unsupported case lambda={r['lambda']} "
            f"word={r['word']}: {r['errors']}"
        )


@criterion(8, "property suites: 9 invariants x 200 generated cases", 600)
def test_criterion_8_property_suites():
    target = Path(__file__).with_name("test_properties.py")
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
         str(target)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "9 passed" in proc.stdout


@criterion(9, "uniqueness probe: one grid solution per lift with entries <= 4", 300)
def test_criterion_9_uniqueness_probe():
    for lift in combinations_with_replacement(range(4, -1, -1), 3):
        count, _solutions = count_grid_solutions(DominantWeight(lift))
        assert count == 1, f"{lift}: {count} grid solutions"
