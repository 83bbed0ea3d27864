"""Comparing the two lattice points: nu (sections) versus nu_vee (mirror).

conjecture_check produces a JSON-able report for one (weight, word) pair;
sweep runs a grid of fundamental coefficients over many reduced words in
a worker pool, collecting failures instead of stopping at the first one.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product

from .errors import FlagtropError
from .rationals import rat, rat_str
from .sections import nu, omega_inv
from .superpot import nu_vee
from .tropsolve import is_integral
from .weights import DominantWeight, reduced_words


def _num(x):
    x = rat(x)
    return int(x) if x.denominator == 1 else rat_str(x)


def conjecture_check(lam: DominantWeight, word):
    """One report: nu, nu_vee, equality, and any domain errors hit."""
    coeffs = [_num(c) for c in lam.fundamental_coefficients()]
    report = {
        "n": lam.n,
        "lambda": coeffs,
        "word": list(word),
        "integral": is_integral(lam),
        "nu": None,
        "nu_vee": None,
        "omega_inv": None,
        "equal": None,
        "errors": [],
    }
    try:
        report["nu_vee"] = [_num(x) for x in nu_vee(lam, word)]
    except FlagtropError as err:
        report["errors"].append(f"nu_vee: {type(err).__name__}: {err}")
    try:
        report["omega_inv"] = repr(omega_inv(lam, word))
        report["nu"] = [_num(x) for x in nu(lam, word)]
    except FlagtropError as err:
        report["errors"].append(f"nu: {type(err).__name__}: {err}")
    if report["nu"] is not None and report["nu_vee"] is not None:
        report["equal"] = report["nu"] == report["nu_vee"]
    return report


def _sweep_case(args):
    n, coeffs, word = args
    lam = DominantWeight.from_fundamental(n, [Fraction(c) for c in coeffs])
    return conjecture_check(lam, word)


def sweep(n, max_coeff, words=None, workers=None):
    """Grid sweep over fundamental coefficients 0..max_coeff and words.

    Returns (reports, failures): reports sorted by (coefficients, word);
    failures are the reports with errors or an inequality.  Never
    fail-fast: every case is attempted.
    """
    if words is None:
        words = reduced_words(n)
    words = [tuple(w) for w in words]
    cases = sorted(
        (n, coeffs, word)
        for coeffs in product(range(max_coeff + 1), repeat=n - 1)
        for word in words
    )
    if workers is not None and workers <= 1:
        reports = [_sweep_case(c) for c in cases]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_sweep_case, cases, chunksize=1))
    failures = [r for r in reports if r["errors"] or r["equal"] is False]
    return reports, failures
