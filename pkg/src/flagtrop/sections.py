"""Flag-variety sections in word charts, the canonical section, and nu.

Sections of the line bundle attached to a dominant weight trivialize over
the unipotent chart y_{i_1}(x_1)...y_{i_N}(x_N) by dividing out the lowest
weight section; the resulting functions are spanned by products of
column-initial minors of the chart matrix.  nu reads off the exponent of
the lexicographically maximal monomial (x_1 > x_2 > ... > x_N).

The canonical section is assembled from one factor f_P per parabolic in
the chain decomposition of the weight.  Each f_P is the ratio of the
toric volume form on G/P (inverted) by the lowest weight section, pulled
back to the chart through the projection G/B -> G/P.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from math import floor

from .errors import (
    LowestWeightAmbiguous,
    NoSolution,
    NotIntegral,
    ZeroSection,
)
from .groups import _eval_sympy, y_word
from .laurent import LaurentPoly, RatFunc
from .rationals import rat
from .tropsolve import chain_decomposition, is_integral
from .weights import (
    DominantWeight,
    ParabolicType,
    lambda_P,
    positive_subexpression,
    weyl_dim,
)


def x_variables(N):
    return tuple(f"x{t}" for t in range(1, N + 1))


_Y_CACHE = {}


def y_chart_matrix(n, word):
    """y_{i_1}(x_1)...y_{i_N}(x_N) over RatFunc in x1..xN; cached."""
    key = (n, tuple(word))
    if key not in _Y_CACHE:
        variables = x_variables(len(word))
        xs = [RatFunc.var(v, variables) for v in variables]
        one = RatFunc.constant(1, variables)
        _Y_CACHE[key] = y_word(n, word, xs, one)
    return _Y_CACHE[key]


def monomial_weight(n, word, e):
    """Torus weight of the chart monomial x^e, as a zero-sum vector.

    The variable x_t sits in matrix slot (i_t+1, i_t), so it carries the
    weight eps_{i_t+1} - eps_{i_t}.
    """
    v = [0] * n
    for i, k in zip(word, e):
        v[i] += k
        v[i - 1] -= k
    return tuple(v)


# ---------------------------------------------------------------------------
# the span of chart functions of global sections

# Dividing a section by the lowest weight section and restricting to the
# chart gives a polynomial in x.  Running over a basis of the dual Weyl
# module, these polynomials are exactly the products of minors
# det(Y[T, {1..k}]), one k-subset T of rows for each fundamental-weight
# tensor factor.  Each such product is weight homogeneous, so elimination
# can be done block by block.


def _dict_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(p + q for p, q in zip(ea, eb))
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            elif e in out:
                del out[e]
    return out


class SectionSpace:
    """Chart-function model of the section space of a dominant weight."""

    def __init__(self, lam: DominantWeight, word):
        self.lam = lam
        self.n = lam.n
        self.word = tuple(word)
        self.N = len(self.word)
        coeffs = lam.fundamental_coefficients()
        self.coeffs = []
        for m in coeffs:
            m = rat(m)
            if m.denominator != 1 or m < 0:
                raise NotIntegral(f"{lam!r} has non-integral coefficients")
            self.coeffs.append(int(m))
        self._minors = {}
        self._blocks = {}  # weight key -> list of descriptors
        self._pivots = {}  # weight key -> {lead exponent: poly dict}
        self._build_descriptors()

    # -- generators ----------------------------------------------------

    def _minor(self, k, T):
        """det of rows T, first k columns of the chart matrix, as a dict."""
        key = (k, T)
        if key not in self._minors:
            Y = y_chart_matrix(self.n, self.word)
            sub = [[Y.rows[r][c] for c in range(k)] for r in T]
            from .linalg import Mat

            d = Mat(sub).det()
            assert d.den.is_constant
            scale = Fraction(1) / d.den.constant_value()
            self._minors[key] = {
                e: c * scale for e, c in d.num.align(x_variables(self.N)).terms.items()
            }
        return self._minors[key]

    def _build_descriptors(self):
        per_factor = []
        for k, m in enumerate(self.coeffs, start=1):
            if m == 0:
                continue
            subsets = list(combinations(range(self.n), k))
            per_factor.append((k, list(combinations_with_replacement(subsets, m))))
        for choice in product(*(c for _k, c in per_factor)):
            v = [0] * self.n
            factors = []
            for (k, _c), picked in zip(per_factor, choice):
                for T in picked:
                    factors.append((k, T))
                    for r in T:
                        v[r] += 1
                    for c in range(k):
                        v[c] -= 1
            self._blocks.setdefault(tuple(v), []).append(tuple(factors))

    def _materialize(self, factors):
        poly = {(0,) * self.N: Fraction(1)}
        for k, T in factors:
            poly = _dict_mul(poly, self._minor(k, T))
        return poly

    # -- elimination ---------------------------------------------------

    @staticmethod
    def _reduce(poly, pivots):
        poly = dict(poly)
        while poly:
            lead = max(poly)
            if lead not in pivots:
                return poly, lead
            piv = pivots[lead]
            scale = poly[lead] / piv[lead]
            for e, c in piv.items():
                v = poly.get(e, 0) - scale * c
                if v:
                    poly[e] = v
                elif e in poly:
                    del poly[e]
        return poly, None

    def _block_pivots(self, wkey):
        if wkey not in self._pivots:
            pivots = {}
            for factors in self._blocks.get(wkey, []):
                poly, lead = self._reduce(self._materialize(factors), pivots)
                if lead is not None:
                    pivots[lead] = poly
            self._pivots[wkey] = pivots
        return self._pivots[wkey]

    # -- queries -------------------------------------------------------

    def contains(self, poly: LaurentPoly) -> bool:
        """Is the chart polynomial the restriction of a global section?"""
        terms = poly.align(x_variables(self.N)).terms
        if not terms:
            return True
        keys = {monomial_weight(self.n, self.word, e) for e in terms}
        if len(keys) != 1:
            return False
        pivots = self._block_pivots(keys.pop())
        rem, lead = self._reduce(dict(terms), pivots)
        return lead is None

    def valuation_image(self):
        """All achievable lex-max exponents, one per basis section."""
        out = []
        for wkey in self._blocks:
            out.extend(self._block_pivots(wkey))
        return sorted(out)

    @property
    def dimension(self):
        return len(self.valuation_image())


_SPACE_CACHE = {}


def section_space(lam: DominantWeight, word) -> SectionSpace:
    key = (lam, tuple(word))
    if key not in _SPACE_CACHE:
        _SPACE_CACHE[key] = SectionSpace(lam, word)
    return _SPACE_CACHE[key]


def borel_weil_valuations(lam: DominantWeight, word):
    """The image of the section valuation: one lattice point per basis vector."""
    points = section_space(lam, word).valuation_image()
    if len(points) != weyl_dim(lam):
        raise NoSolution(
            f"valuation image has {len(points)} points, expected {weyl_dim(lam)}"
        )
    return points


# ---------------------------------------------------------------------------
# parabolic charts and the projection G/B -> G/P


def chart_positions(n, word, p: ParabolicType):
    """(J, K): s-dot positions (from the positive subexpression for w_P)
    and the complementary coordinate positions, both 0-based."""
    J = set(positive_subexpression(n, word, p.w_P()))
    K = [t for t in range(len(word)) if t not in J]
    return J, K


def chart_torus_weights(n, word, p: ParabolicType):
    """Torus weight of each chart coordinate on G/P, as zero-sum vectors.

    Pushing t^{-1} through the chart product turns y_i(u) into
    y_i(u t_i/t_{i+1}) and gets its indices permuted by each s-dot factor
    it crosses, so the coordinate at a y-position with letter i scales by
    the character eps_{sigma(i+1)} - eps_{sigma(i)}.
    """
    J, _K = chart_positions(n, word, p)
    sigma = list(range(1, n + 1))
    out = []
    for t, i in enumerate(word):
        if t in J:
            sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
        else:
            v = [0] * n
            v[sigma[i] - 1] += 1
            v[sigma[i - 1] - 1] -= 1
            out.append(tuple(v))
    return out


def _sym_chart(n, word, J, coords):
    """Sympy product of y_{i_t}(coord) factors with s-dots at positions J.

    The s-dot representative here is ((0,1),(-1,0)); the resulting chart
    coordinates carry the signs the rest of the section formulas expect.
    """
    import sympy

    A = sympy.eye(n)
    it = iter(coords)
    for t, i in enumerate(word):
        g = sympy.eye(n)
        if t in J:
            g[i - 1, i - 1] = 0
            g[i, i] = 0
            g[i - 1, i] = 1
            g[i, i - 1] = -1
        else:
            g[i, i - 1] = next(it)
        A = A * g
    return A


def _below_block_entries(p: ParabolicType):
    """0-based (row, col) entries that vanish on the parabolic."""
    block_of = {}
    for bi, block in enumerate(p.levi_blocks()):
        for r in block:
            block_of[r - 1] = bi
    return [
        (r, c)
        for r in range(p.n)
        for c in range(r)
        if block_of[r] != block_of[c]
    ]


_PI_CACHE = {}


def pi_P_chart(n, word, p: ParabolicType):
    """The projection G/B -> G/P in word-chart coordinates.

    Returns one RatFunc in x1..xN per G/P chart coordinate (in position
    order).  Solved once per (word, parabolic) by clearing the
    below-Levi-block entries of A(u)^{-1} Y(x).
    """
    key = (n, tuple(word), p.I_P)
    if key in _PI_CACHE:
        return _PI_CACHE[key]
    N = len(word)
    variables = x_variables(N)
    J, K = chart_positions(n, word, p)
    if not p.I_P:
        funcs = [RatFunc.var(v, variables) for v in variables]
    else:
        import sympy

        xs = sympy.symbols([f"x{t}" for t in range(1, N + 1)])
        us = sympy.symbols([f"u{t + 1}" for t in K])
        Y = _sym_chart(n, word, set(), xs)
        A = _sym_chart(n, word, J, us)
        M = A.inv() * Y
        eqs = [
            sympy.together(M[r, c]) for r, c in _below_block_entries(p)
        ]
        sols = sympy.solve(eqs, list(us), dict=True)
        if len(sols) != 1 or len(sols[0]) != len(us):
            raise NoSolution(
                f"projection chart for I_P={sorted(p.I_P)} did not solve uniquely"
            )
        env = {v: RatFunc.var(v, variables) for v in variables}
        one = RatFunc.constant(1, variables)
        funcs = [
            _eval_sympy(sympy.together(sols[0][u]), env, one) for u in us
        ]
    _PI_CACHE[key] = funcs
    return funcs


# ---------------------------------------------------------------------------
# the factor f_P


def _nonneg_solutions(cols, target):
    """All nonnegative-integer combinations of cols summing to target."""
    import numpy as np
    from scipy.optimize import linprog

    m = len(cols)
    target = [rat(x) for x in target]
    if m == 0:
        return [()] if all(x == 0 for x in target) else []
    A = np.array([[float(c[r]) for c in cols] for r in range(len(target))])
    b = np.array([float(x) for x in target])
    his = []
    for k in range(m):
        c = np.zeros(m)
        c[k] = -1.0
        r = linprog(c, A_eq=A, b_eq=b, bounds=[(0, None)] * m, method="highs")
        if r.status == 2:  # infeasible
            return []
        if not r.success:
            raise NoSolution("candidate exponent set is unbounded")
        his.append(floor(round(-r.fun, 6)))
    # coordinates no later column can still change must already be settled
    touched_after = [set() for _ in range(m + 1)]
    for k in range(m - 1, -1, -1):
        touched_after[k] = touched_after[k + 1] | {
            r for r in range(len(target)) if cols[k][r] != 0
        }
    out = []
    pick = [0] * m

    def dfs(k, remaining):
        if any(
            remaining[r] != 0
            for r in range(len(remaining))
            if r not in touched_after[k]
        ):
            return
        if k == m:
            out.append(tuple(pick))
            return
        col = cols[k]
        for v in range(his[k] + 1):
            pick[k] = v
            dfs(k + 1, [x - v * y for x, y in zip(remaining, col)])
        pick[k] = 0

    dfs(0, list(target))
    return out


_LW_CACHE = {}


def _lowering_fields(n, word, p: ParabolicType):
    """The vector field of each y_j(s) left action on the G/P chart.

    Returns (u symbols, one component list per simple index).
    """
    key = (n, tuple(word), p.I_P)
    if key in _LW_CACHE:
        return _LW_CACHE[key]
    import sympy

    J, K = chart_positions(n, word, p)
    us = sympy.symbols([f"u{t + 1}" for t in K])
    vs = sympy.symbols([f"v{t + 1}" for t in K])
    s = sympy.Symbol("s")
    A = _sym_chart(n, word, J, us)
    Av = _sym_chart(n, word, J, vs)
    entries = _below_block_entries(p)
    fields = []
    for j in range(1, n):
        yj = sympy.eye(n)
        yj[j, j - 1] = s
        M = Av.inv() * yj * A
        sols = sympy.solve(
            [sympy.together(M[r, c]) for r, c in entries], list(vs), dict=True
        )
        if len(sols) != 1 or len(sols[0]) != len(vs):
            raise NoSolution(
                f"lowering flow for I_P={sorted(p.I_P)} did not solve uniquely"
            )
        fields.append(
            [sympy.diff(sympy.together(sols[0][v]), s).subs(s, 0) for v in vs]
        )
    _LW_CACHE[key] = (us, fields)
    return us, fields


def _is_lowest_weight_wedge(us, fields, exps):
    """Is u^exps times the coordinate polyvector killed by all lowerings?

    The Lie derivative of m * (d/du-wedge) along v is
    (v(m) - m div(v)) * (d/du-wedge).
    """
    import sympy

    m = sympy.Integer(1)
    for u, e in zip(us, exps):
        m = m * u**e
    for v in fields:
        lie = sum(vk * sympy.diff(m, uk) for vk, uk in zip(v, us)) - m * sum(
            sympy.diff(vk, uk) for vk, uk in zip(v, us)
        )
        if sympy.simplify(lie) != 0:
            return False
    return True


_FP_CACHE = {}


def f_P_polynomial(n, word, p: ParabolicType) -> LaurentPoly:
    """The chart polynomial of the G/P volume-form section factor.

    Candidates are monomials u^b in the G/P chart coordinates whose torus
    weight is minus the parabolic weight; the complementary monomial
    u^(1-b) times the coordinate polyvector must be an actual lowest
    weight section, which pins down b.  The winner is pulled back to the
    unipotent chart on the full flag variety.
    """
    key = (n, tuple(word), p.I_P)
    if key in _FP_CACHE:
        return _FP_CACHE[key]
    chis = chart_torus_weights(n, word, p)
    lamP = lambda_P(p)
    target = [-x for x in lamP.zero_sum_lift()]
    candidates = _nonneg_solutions(chis, target)
    us, fields = _lowering_fields(n, word, p)
    winners = [
        b
        for b in candidates
        if _is_lowest_weight_wedge(us, fields, [1 - bk for bk in b])
    ]
    if not winners:
        raise NoSolution(
            f"no lowest-weight candidate survives for I_P={sorted(p.I_P)}"
        )
    if len(winners) > 1:
        raise LowestWeightAmbiguous(
            f"{len(winners)} lowest-weight candidates for I_P={sorted(p.I_P)}, "
            f"word {tuple(word)}"
        )
    funcs = pi_P_chart(n, word, p)
    variables = x_variables(len(word))
    F = RatFunc.constant(1, variables)
    for bk, f in zip(winners[0], funcs):
        F = F * f**bk
    if not (F.den.is_constant and all(k >= 0 for k in F.num.min_exponents())):
        raise NoSolution(
            f"section factor for I_P={sorted(p.I_P)} is not regular on the chart"
        )
    scale = Fraction(1) / F.den.constant_value()
    poly = F.num.align(variables) * LaurentPoly.constant(scale, variables)
    _FP_CACHE[key] = poly
    return poly


# ---------------------------------------------------------------------------
# the canonical section and nu


def omega_inv(lam: DominantWeight, word) -> LaurentPoly:
    """Chart polynomial of the canonical section: product of f_P factors."""
    if not is_integral(lam):
        raise NotIntegral(f"{lam!r} has a non-integral critical point")
    variables = x_variables(len(word))
    acc = LaurentPoly.constant(1, variables)
    for p, c in chain_decomposition(lam):
        c = rat(c)
        if c.denominator != 1:
            raise NotIntegral(f"chain coefficient {c} is not an integer")
        acc = acc * f_P_polynomial(lam.n, word, p) ** int(c)
    return acc


def nu(lam: DominantWeight, word):
    """Valuation of the canonical section: its lex-max exponent."""
    poly = omega_inv(lam, word)
    if poly.is_zero:
        raise ZeroSection("canonical section vanishes identically")
    e, _c = poly.lex_max_term()
    return tuple(e)
