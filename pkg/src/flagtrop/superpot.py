"""Mirror-side charts, the superpotential, string polytopes, and nu_vee.

The superpotential W sends b = u1 w0 q^{-1} u2 to chi(u1) + chi(u2).  In
the chart x_{-i} (built from a reduced word i through the twist map) W
expands as a positive Laurent polynomial; replacing + by min and (q, z)
by (lambda, c) tropicalizes it into the string polytope inequalities.
nu_vee is the valuation vector of the critical point's z-coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .errors import (
    DivisionByZeroSeries,
    NotInBigCell,
    NoConvergence,
    NotSubtractionFree,
    PrecisionExhausted,
)
from .groups import (
    chi,
    complete_arrows,
    eta_inv,
    gauss_factorize,
    hw_from_minors,
    kappa_values,
    peel_x_minus,
    phi,
    theta_M,
    theta_M_factors,
    twist,
    vertex_coordinates,
    wt_readout,
    x_minus_word,
)
from .laurent import LaurentPoly, RatFunc, ratfunc_expand_positive
from .linalg import Mat, inv_elem
from .puiseux_crit import expand_critical_point
from .quiver import build_quiver
from .rationals import rat
from .tropsolve import solve_tropical
from .weights import DominantWeight, weyl_dim


# ---------------------------------------------------------------------------
# the superpotential in a word chart


def chart_x_minus(word, n, q_vals, z_vals, one):
    """The chart matrix Phi(q, eta(x_{-i}(z))) over any field."""
    u_pre = x_minus_word(n, word, z_vals, one)
    u1 = twist(u_pre)
    b, _u2 = phi(q_vals, u1)
    return b


_W_CACHE = {}


def superpotential_in_chart(n, word):
    """W as a RatFunc in (q1..qn, z1..zN); cached per (n, word)."""
    key = (n, tuple(word))
    if key in _W_CACHE:
        return _W_CACHE[key]
    N = len(word)
    variables = tuple(f"q{i}" for i in range(1, n + 1)) + tuple(
        f"z{k}" for k in range(1, N + 1)
    )
    one = RatFunc.constant(1, variables)
    qs = [RatFunc.var(f"q{i}", variables) for i in range(1, n + 1)]
    zs = [RatFunc.var(f"z{k}", variables) for k in range(1, N + 1)]
    u1 = twist(x_minus_word(n, word, zs, one))
    _b, u2 = phi(qs, u1)
    W = chi(u1) + chi(u2)
    _W_CACHE[key] = W
    return W


@dataclass(frozen=True)
class TropicalForm:
    """One affine form <z_exp, c> + <q_exp, lambda> of the tropicalized W."""

    q_exp: tuple
    z_exp: tuple

    def constant(self, lam: DominantWeight):
        return sum(
            (k * l for k, l in zip(self.q_exp, lam.lift)), Fraction(0)
        )

    def value(self, lam, c):
        return self.constant(lam) + sum(
            (k * rat(x) for k, x in zip(self.z_exp, c)), Fraction(0)
        )


def superpotential_tropical(n, word):
    """The affine forms of trop(W): one per monomial of the expansion."""
    W = superpotential_in_chart(n, word)
    terms = ratfunc_expand_positive(W)
    forms = []
    seen = set()
    for exp, _c in terms:
        q_exp, z_exp = tuple(exp[:n]), tuple(exp[n:])
        if (q_exp, z_exp) in seen:
            continue
        seen.add((q_exp, z_exp))
        forms.append(TropicalForm(q_exp, z_exp))
    return forms


# ---------------------------------------------------------------------------
# string polytopes


class StringPolytope:
    """{c : all tropical forms >= 0} instantiated at a dominant lambda."""

    def __init__(self, lam: DominantWeight, word, forms):
        self.lam = lam
        self.word = tuple(word)
        self.N = len(self.word)
        self.forms = forms
        self.inequalities = [
            (tuple(f.z_exp), f.constant(lam)) for f in forms
        ]
        self._points = None

    def contains(self, c):
        return all(
            const + sum((k * rat(x) for k, x in zip(coefs, c)), Fraction(0)) >= 0
            for coefs, const in self.inequalities
        )

    def _bounds(self):
        """Per-coordinate integer bounds from the inequalities (LP relax)."""
        import numpy as np
        from scipy.optimize import linprog

        A = np.array(
            [[-float(k) for k in coefs] for coefs, _ in self.inequalities]
        )
        b = np.array([float(const) for _, const in self.inequalities])
        lo, hi = [], []
        for k in range(self.N):
            c = np.zeros(self.N)
            c[k] = 1.0
            bounds = [(None, None)] * self.N
            rmin = linprog(c, A_ub=A, b_ub=b, bounds=bounds, method="highs")
            rmax = linprog(-c, A_ub=A, b_ub=b, bounds=bounds, method="highs")
            if not (rmin.success and rmax.success):
                raise NoConvergence("string polytope is unbounded or infeasible")
            lo.append(ceil(round(rmin.fun, 9)))
            hi.append(floor(round(-rmax.fun, 9)))
        return lo, hi

    def lattice_points(self):
        """All integer points, by DFS with interval pruning."""
        if self._points is not None:
            return self._points
        lo, hi = self._bounds()
        ineqs = [
            ([Fraction(k) for k in coefs], const)
            for coefs, const in self.inequalities
        ]
        out = []
        point = [0] * self.N

        def feasible_window(depth):
            # each form: assigned part + best case over unassigned
            for coefs, const in ineqs:
                best = const
                for k in range(self.N):
                    if k < depth:
                        best += coefs[k] * point[k]
                    elif coefs[k] > 0:
                        best += coefs[k] * hi[k]
                    elif coefs[k] < 0:
                        best += coefs[k] * lo[k]
                if best < 0:
                    return False
            return True

        def dfs(depth):
            if depth == self.N:
                out.append(tuple(point))
                return
            for v in range(lo[depth], hi[depth] + 1):
                point[depth] = v
                if feasible_window(depth + 1):
                    dfs(depth + 1)
            point[depth] = 0

        dfs(0)
        self._points = sorted(out)
        return self._points

    def to_json(self):
        return {
            "word": list(self.word),
            "A": [[int(k) for k in coefs] for coefs, _ in self.inequalities],
            "b": [str(const) for _, const in self.inequalities],
            "lattice_points": [list(p) for p in self.lattice_points()],
        }


def string_polytope(lam: DominantWeight, word) -> StringPolytope:
    forms = superpotential_tropical(lam.n, word)
    return StringPolytope(lam, word, forms)


# ---------------------------------------------------------------------------
# hw / W / wt readouts


def hw_W_wt_chart(n, z):
    """Chart form: (kappa products, sum of arrow values, diagonal ratios)."""
    hw = kappa_values(n, z)
    W = None
    for v in z.values():
        W = v if W is None else W + v
    xv = vertex_coordinates(n, z)
    q = build_quiver(n)
    zetas = []
    for i in range(1, n + 2):
        acc = None
        for v in (q.diagonal(i) if i <= n else []):
            acc = xv[v] if acc is None else acc * xv[v]
        zetas.append(acc)
    wt = []
    for i in range(n):
        zi, zi1 = zetas[i], zetas[i + 1]
        wt.append(zi if zi1 is None else zi * inv_elem(zi1))
    return hw, W, wt


def hw_W_wt_matrix(b: Mat):
    """Matrix form via Gauss factorization: (q, chi(u1)+chi(u2), wt)."""
    u1, q, u2 = gauss_factorize(b)
    return q, chi(u1) + chi(u2), wt_readout(b)


def hw_W_wt(x, n=None):
    if isinstance(x, Mat):
        return hw_W_wt_matrix(x)
    return hw_W_wt_chart(n, x)


# ---------------------------------------------------------------------------
# chart transition (theta_M composed with the inverse word chart)

_TRANSITION_CACHE = {}


def arrow_var(a):
    (ti, tj), (hi, hj) = a.tail, a.head
    return f"z{ti}{tj}_{hi}{hj}"


class ChartTransition:
    """(x_{-i})^{-1} o theta_M as RatFuncs in the independent arrow vars."""

    def __init__(self, n, word, variables, q_funcs, z_funcs):
        self.n = n
        self.word = tuple(word)
        self.variables = variables
        self.q_funcs = q_funcs
        self.z_funcs = z_funcs

    def trop_z(self, sigma_by_var):
        """Min-plus evaluation of each z-coordinate at arrow valuations."""
        vals = [rat(sigma_by_var[v]) for v in self.variables]

        def trop(p: LaurentPoly):
            return min(
                sum((k * s for k, s in zip(e, vals)), Fraction(0))
                for e, _c in ratfunc_expand_positive(RatFunc.from_poly(p))
            )

        return [trop(f.num) - trop(f.den) for f in self.z_funcs]


def chart_transition_symbolic(n, word) -> ChartTransition:
    key = (n, tuple(word))
    if key in _TRANSITION_CACHE:
        return _TRANSITION_CACHE[key]
    q = build_quiver(n)
    indep = q.independent_arrows()
    variables = tuple(arrow_var(a) for a in indep)
    vals = {
        (a.tail, a.head): RatFunc.var(arrow_var(a), variables) for a in indep
    }
    z = complete_arrows(q, vals)
    _b, u1, qk, _u2 = theta_M_factors(n, z)
    c = eta_inv(u1)
    zs = peel_x_minus(c, word)
    for f in zs:
        # must be subtraction-free for the tropical evaluation to be valid
        ratfunc_expand_positive(RatFunc.from_poly(f.num))
        ratfunc_expand_positive(RatFunc.from_poly(f.den))
    t = ChartTransition(n, word, variables, qk, zs)
    _TRANSITION_CACHE[key] = t
    return t


# ---------------------------------------------------------------------------
# nu_vee: valuations of the critical point in a word chart


def sigma_by_variable(lam: DominantWeight):
    tp = solve_tropical(lam)
    return {arrow_var(a): tp.sigma[a] for a in tp.quiver.arrows}, tp


def nu_vee(lam: DominantWeight, word, numeric_fallback=True):
    """Valuations of the z-coordinates of the critical point in chart x_{-i}."""
    try:
        t = chart_transition_symbolic(lam.n, word)
        sig, _tp = sigma_by_variable(lam)
        return tuple(t.trop_z(sig))
    except NotSubtractionFree:
        if not numeric_fallback:
            raise
        return tuple(nu_vee_numeric(lam, word))


def chart_invert(word, b: Mat):
    """Numeric inverse of the word chart: b -> (q diagonal list, z list)."""
    u1, qv, _u2 = gauss_factorize(b)
    c = eta_inv(u1)
    zs = peel_x_minus(c, word)
    return qv, zs


def nu_vee_numeric(lam: DominantWeight, word, K=8, max_K=32):
    """Puiseux-expansion route: expand p_lambda, build theta_M, invert."""
    from .puiseux import cancellation_to_zero

    n = lam.n
    while True:
        try:
            e = expand_critical_point(lam, K=K)
            z = {
                (a.tail, a.head): e.arrow_series(a) for a in e.quiver.arrows
            }
            with cancellation_to_zero():
                b = theta_M(n, z)
                _qv, zs = chart_invert(word, b)
            return [s.val() for s in zs]
        except (PrecisionExhausted, DivisionByZeroSeries, NotInBigCell):
            # cancellation ate through the window; retry with more terms
            # (a genuine singularity keeps failing and raises at the cap)
            if K >= max_K:
                raise
            K *= 2


# ---------------------------------------------------------------------------


def lattice_count_matches_dimension(lam: DominantWeight, word) -> bool:
    sp = string_polytope(lam, word)
    return len(sp.lattice_points()) == weyl_dim(lam)
