"""Puiseux expansion of the critical point in the special chart.

The tropical solver fixes the exact leading exponents; layer-by-layer
convex minimization fixes the leading coefficients; a triangular family
of positive-definite linear systems fixes the higher coefficients.  The
vertex coordinate at v is x_v = d_v t^{delta_v} (1 + sum_k x_{v,k} t^{k/M}),
with stars pinned to t^{lambda_i} exactly.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import NoConvergence
from .puiseux import PuiseuxSeries
from .rationals import rat_str, recognize_rational
from .tropsolve import TropicalPoint, solve_tropical
from .weights import DominantWeight


def solve_layer_minimum(arrows, interior, boundary, tol=1e-12, max_iter=200):
    """Minimize sum over arrows of d_head/d_tail in the interior variables.

    `arrows`: iterable of Arrow; `interior`: list of vertices to solve for;
    `boundary`: dict vertex -> positive value for the remaining endpoints.
    Damped Newton in logarithmic coordinates (the objective is strictly
    convex there); returns dict vertex -> positive float.
    """
    interior = list(interior)
    if not interior:
        return {}
    idx = {v: i for i, v in enumerate(interior)}
    m = len(interior)
    logs = {v: float(np.log(x)) for v, x in boundary.items()}
    init = float(np.mean(list(logs.values()))) if logs else 0.0
    y = np.full(m, init)

    terms = []  # (head index or None, tail index or None, log-const)
    for a in arrows:
        h, t = a.head, a.tail
        const = 0.0
        hi = idx.get(h)
        ti = idx.get(t)
        if hi is None:
            const += logs[h]
        if ti is None:
            const -= logs[t]
        terms.append((hi, ti, const))

    def objective(yv):
        tot = 0.0
        for hi, ti, c in terms:
            e = c + (yv[hi] if hi is not None else 0.0) - (
                yv[ti] if ti is not None else 0.0
            )
            tot += np.exp(e)
        return tot

    for _ in range(max_iter):
        g = np.zeros(m)
        H = np.zeros((m, m))
        for hi, ti, c in terms:
            e = c + (y[hi] if hi is not None else 0.0) - (
                y[ti] if ti is not None else 0.0
            )
            val = np.exp(e)
            vec = np.zeros(m)
            if hi is not None:
                vec[hi] += 1.0
            if ti is not None:
                vec[ti] -= 1.0
            g += val * vec
            H += val * np.outer(vec, vec)
        if np.linalg.norm(g) <= tol:
            return {v: float(np.exp(y[idx[v]])) for v in interior}
        try:
            step = np.linalg.solve(H, -g)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(f"singular Hessian in layer solve: {exc}")
        f0 = objective(y)
        alpha = 1.0
        while alpha > 1e-12 and objective(y + alpha * step) > f0:
            alpha *= 0.5
        if alpha <= 1e-12:
            raise NoConvergence("line search failed in layer solve")
        y = y + alpha * step
    raise NoConvergence("layer minimum: max iterations reached")


def layer_gradient(arrows, interior, values):
    """Exact gradient of the layer objective at `values` (all vertices)."""
    g = {v: 0.0 for v in interior}
    for a in arrows:
        r = values[a.head] / values[a.tail]
        if a.head in g:
            g[a.head] += r / values[a.head]
        if a.tail in g:
            g[a.tail] -= r / values[a.tail]
    return g


class CriticalExpansion:
    """Truncated Puiseux data of the critical point."""

    def __init__(self, lam: DominantWeight, tropical: TropicalPoint, d, coeffs, K):
        self.lam = lam
        self.tropical = tropical
        self.quiver = tropical.quiver
        self.M = tropical.grid_denominator
        self.d = d  # vertex -> float leading coefficient
        self.coeffs = coeffs  # vertex -> list [1.0, x_{v,1}, ..., x_{v,K}]
        self.K = K

    def vertex_series(self, v) -> PuiseuxSeries:
        delta = self.tropical.delta[v]
        if v in set(self.quiver.stars):
            return PuiseuxSeries.t_power(delta, self.M)
        body = [self.d[v] * c for c in self.coeffs[v]]
        upper = delta + Fraction(self.K + 1, self.M)
        return PuiseuxSeries(self.M, delta, body, upper=upper)

    def arrow_series(self, a) -> PuiseuxSeries:
        return self.vertex_series(a.head) / self.vertex_series(a.tail)

    def arrow_series_by_letter(self):
        """n=3 convenience: series for the arrows (a..f)."""
        return [self.arrow_series(a) for a in self.quiver.letter_arrows()]

    def to_json(self):
        return {
            "lambda": self.lam.to_json(),
            "grid_denominator": self.M,
            "truncation_order": self.K,
            "vertices": {
                f"v{i}{j}": self.vertex_series((i, j)).to_json()
                for (i, j) in self.quiver.vertices
            },
            "arrows": {
                a.name: self.arrow_series(a).to_json() for a in self.quiver.arrows
            },
        }


def expand_critical_point(lam: DominantWeight, K=8, tol=1e-12) -> CriticalExpansion:
    tp = solve_tropical(lam)
    q = tp.quiver
    M = tp.grid_denominator
    stars = set(q.stars)

    # -- leading coefficients, one convex problem per layer ------------
    d = {v: 1.0 for v in stars}
    for kappa, verts, arrows in tp.layers:
        interior = sorted(verts)
        boundary = {}
        for a in arrows:
            for v in (a.head, a.tail):
                if v not in verts:
                    boundary[v] = d[v]
        sol = solve_layer_minimum(arrows, interior, boundary, tol=tol)
        d.update(sol)

    # -- higher coefficients -------------------------------------------
    # x_{v,k} relative coefficients; z_{a,j} relative arrow coefficients
    xk = {v: [1.0] + [0.0] * K for v in q.vertices}
    za = {a: [1.0] + [0.0] * K for a in q.arrows}
    c_arr = {a: d[a.head] / d[a.tail] for a in q.arrows}
    shift = {}  # arrow -> per-vertex offset (sigma_a - pi(v)) * M at its ends
    star_coeff = {v: [1.0] + [0.0] * K for v in stars}  # stars stay exact
    for v in stars:
        xk[v] = star_coeff[v]

    def z_update(a, j):
        """z_{a,j} = x_{h,j} - x_{t,j} - sum_{i<j} x_{t,i} z_{a,j-i}."""
        s = xk[a.head][j] - xk[a.tail][j]
        for i in range(1, j):
            s -= xk[a.tail][i] * za[a][j - i]
        za[a][j] = s

    layer_list = [
        (kappa, sorted(verts), sorted(arrows, key=lambda a: a.name))
        for kappa, verts, arrows in tp.layers
        if verts
    ]

    for k in range(1, K + 1):
        for kappa, verts, arrows in layer_list:
            idx = {v: i for i, v in enumerate(verts)}
            m = len(verts)
            A = np.zeros((m, m))
            b = np.zeros(m)
            for v in verts:
                row = idx[v]
                for a in q.incoming(v) + q.outgoing(v):
                    sign = 1.0 if a.head == v else -1.0
                    gap = (tp.sigma[a] - tp.pi[v]) * M
                    assert gap.denominator == 1
                    j = k - int(gap)
                    if j < 0:
                        continue
                    ca = sign * c_arr[a]
                    if j == k:
                        # z_{a,k} = x_{h,k} - x_{t,k} - lower; lower is known
                        lower = 0.0
                        for i in range(1, k):
                            lower -= xk[a.tail][i] * za[a][k - i]
                        for w, sgn in ((a.head, 1.0), (a.tail, -1.0)):
                            if w in idx:
                                A[row, idx[w]] += ca * sgn
                            else:
                                lower += sgn * xk[w][k]
                        b[row] -= ca * lower
                    else:
                        # fully known contribution z_{a,j}
                        b[row] -= ca * za[a][j]
            # positive-definiteness check per the quadratic-form argument
            try:
                np.linalg.cholesky((A + A.T) / 2.0)
            except np.linalg.LinAlgError as exc:
                raise NoConvergence(f"order-{k} system not positive definite: {exc}")
            sol = np.linalg.solve(A, b)
            for v in verts:
                xk[v][k] = float(sol[idx[v]])
        # orders are complete for this k across all layers: refresh z
        for a in q.arrows:
            z_update(a, k)

    coeffs = {v: xk[v] for v in q.vertices}
    return CriticalExpansion(lam, tp, d, coeffs, K)


def residual_report(e: CriticalExpansion) -> float:
    """Max |coefficient| of the critical equations over the joint window."""
    worst = 0.0
    q = e.quiver
    for v in q.bullets:
        acc = {}
        window = None
        for a in q.incoming(v) + q.outgoing(v):
            sign = 1.0 if a.head == v else -1.0
            s = e.arrow_series(a)
            if s.upper is not None:
                window = s.upper if window is None else min(window, s.upper)
            for k, c in enumerate(s.coeffs):
                exp = s.lead + Fraction(k, s.M)
                acc[exp] = acc.get(exp, 0.0) + sign * c
        for exp, c in acc.items():
            if window is None or exp < window:
                worst = max(worst, abs(c))
    return worst


def check_path_identity(e: CriticalExpansion, i, tol=1e-9) -> bool:
    """Numerically check zeta_{i-1} zeta_{i+1} = zeta_i^2 around diagonal i.

    zeta_i is the product of the vertex coordinates along diagonal D_i;
    the identity expresses weight-zero-ness of the critical point.
    """
    q = e.quiver
    if not (2 <= i <= q.n - 1):
        return True

    def zeta(j):
        out = PuiseuxSeries.constant(1.0, e.M)
        for v in q.diagonal(j):
            out = out * e.vertex_series(v)
        return out

    lhs = zeta(i - 1) * zeta(i + 1)
    rhs = zeta(i) * zeta(i)
    return lhs.close_to(rhs, tol=tol)


def series_pretty(s: PuiseuxSeries, max_den=1024, tol=1e-9) -> str:
    """Render with small-denominator rational recognition (display only)."""
    if s.is_zero:
        return "0"
    bits = []
    for k, c in enumerate(s.coeffs):
        if c == 0.0:
            continue
        e = s.lead + Fraction(k, s.M)
        r = recognize_rational(c, max_den=max_den, tol=tol)
        cs = rat_str(r) if r is not None else f"{c:.12g}"
        if e == 0:
            bits.append(cs)
        elif cs == "1":
            bits.append(f"t^({rat_str(e)})")
        else:
            bits.append(f"{cs} t^({rat_str(e)})")
    out = " + ".join(bits).replace("+ -", "- ")
    if s.upper is not None:
        out += f" + O(t^({rat_str(s.upper)}))"
    return out
