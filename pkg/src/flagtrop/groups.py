"""SL_n / PGL_n matrix constructions behind the charts.

Everything is generic over the entry field: Fractions for plain numerics,
RatFunc for symbolic work, PuiseuxSeries for expansions.  Torus elements
are kept as explicit diagonal lifts and compared projectively.

Conventions: x_i(z) is upper (entry (i, i+1) = z), y_i(z) is lower,
s_dot(i) = x_i(-1) y_i(1) x_i(-1), w0_dot is the product of s_dot along
the standard longest word.  The big cell Z consists of lower-triangular
matrices b = u1 w0_dot q^{-1} u2 with u1, u2 upper unipotent.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .errors import FactorizationAmbiguity, NotInBigCell
from .linalg import Mat, inv_elem, is_zero_elem, ldu, lu_unipotent_upper, ul_unipotent_lower
from .weights import standard_word

# ---------------------------------------------------------------------------
# generators


def _embed2(n, i, block, one):
    """Place a 2x2 block at rows/cols (i-1, i) of the identity (1-based i)."""
    m = Mat.identity(n, one)
    for a in range(2):
        for b in range(2):
            m.rows[i - 1 + a][i - 1 + b] = block[a][b]
    return m


def x_i(n, i, z, one):
    zero = one * 0
    return _embed2(n, i, [[one, z], [zero, one]], one)


def y_i(n, i, z, one):
    zero = one * 0
    return _embed2(n, i, [[one, zero], [z, one]], one)


def coroot(n, i, z, one):
    zero = one * 0
    return _embed2(n, i, [[z, zero], [zero, inv_elem(z)]], one)


def s_dot(n, i, one):
    zero = one * 0
    return _embed2(n, i, [[zero, -one], [one, zero]], one)


def x_minus(n, i, z, one):
    """x_{-i}(z) = y_i(z) alpha_i^vee(1/z): 2x2 block ((1/z, 0), (1, z))."""
    zero = one * 0
    return _embed2(n, i, [[inv_elem(z), zero], [one, z]], one)


def w0_dot(n, one):
    m = Mat.identity(n, one)
    for i in standard_word(n):
        m = m @ s_dot(n, i, one)
    return m


def y_word(n, word, xs, one):
    """y_{i_1}(x_1) ... y_{i_N}(x_N)."""
    m = Mat.identity(n, one)
    for i, x in zip(word, xs):
        m = m @ y_i(n, i, x, one)
    return m


def x_minus_word(n, word, zs, one):
    m = Mat.identity(n, one)
    for i, z in zip(word, zs):
        m = m @ x_minus(n, i, z, one)
    return m


def chi(u: Mat):
    """Sum of the superdiagonal entries (principal character)."""
    out = None
    for i in range(u.n - 1):
        x = u.rows[i][i + 1]
        out = x if out is None else out + x
    return out


# ---------------------------------------------------------------------------
# the big-cell parametrization b = u1 w0 q^{-1} u2


def phi(q_diag, u1: Mat):
    """(q, u1) -> (b, u2): the unique u2 making u1 w0 q^{-1} u2 lower."""
    n = u1.n
    one = u1.rows[0][0]
    qinv = Mat.identity(n, one)
    for k in range(n):
        qinv.rows[k][k] = inv_elem(q_diag[k])
    m0 = u1 @ w0_dot(n, one) @ qinv
    L, U = lu_unipotent_upper(m0)
    return L, U.inverse()


def gauss_factorize(b: Mat):
    """b -> (u1, q, u2) with b = u1 w0_dot q^{-1} u2, q a diagonal list."""
    n = b.n
    one = None
    for r in b.rows:
        for x in r:
            if not is_zero_elem(x):
                one = x * inv_elem(x)
                break
        if one is not None:
            break
    w0 = w0_dot(n, one)
    g = w0.inverse() @ b
    L, D, U = ldu(g)
    q = [inv_elem(D.rows[k][k]) for k in range(n)]
    u1 = w0 @ L @ w0.inverse()
    for i in range(n):
        for j in range(n):
            expect_zero = i > j
            if expect_zero and not is_zero_elem(u1.rows[i][j]):
                raise NotInBigCell("conjugated factor is not upper unipotent")
    return u1, q, U


def corner_minor(b: Mat, k):
    """Bottom-left k x k minor (rows n-k+1..n, cols 1..k)."""
    n = b.n
    return b.minor(list(range(n - k, n)), list(range(k)))


def hw_from_minors(b: Mat):
    """hw_k = Delta_{k-1}/Delta_k with Delta_k the bottom-left k x k minor."""
    n = b.n
    one = None
    for r in b.rows:
        for x in r:
            if not is_zero_elem(x):
                one = x * inv_elem(x)
                break
        if one is not None:
            break
    deltas = [one] + [corner_minor(b, k) for k in range(1, n + 1)]
    for k in range(1, n + 1):
        if is_zero_elem(deltas[k]):
            raise NotInBigCell(f"corner minor {k} vanishes")
    return [deltas[k - 1] * inv_elem(deltas[k]) for k in range(1, n + 1)]


def wt_readout(b: Mat):
    """wt(b) projectively: wt_i = 1 / b_{n+1-i, n+1-i}."""
    n = b.n
    return [inv_elem(b.rows[n - 1 - i][n - 1 - i]) for i in range(n)]


# ---------------------------------------------------------------------------
# twist map and its inverse


def twist(b: Mat):
    """eta: b -> [(w0 b^T)^{-1}]_+ (upper-unipotent Gauss factor)."""
    n = b.n
    one = b.rows[0][0] * inv_elem(b.rows[0][0])
    g = (w0_dot(n, one) @ b.transpose()).inverse()
    _, _, U = ldu(g)
    return U


def eta_inv(u1: Mat):
    """Inverse twist: the b in B_- with corner minors of w0 and twist(b)=u1.

    h = ((u1 w0)^{-1})^T factors as U_h L_h; b = d L_h with the diagonal d
    pinned by Delta_k(b) = Delta_k(w0_dot).
    """
    n = u1.n
    one = u1.rows[0][0]
    w0 = w0_dot(n, one)
    h = (u1 @ w0).inverse().transpose()
    _, Lh = ul_unipotent_lower(h)
    # solve for d: prod_{i>n-k} d_i = Delta_k(w0) / Delta_k(L_h)
    prods = [one]
    for k in range(1, n + 1):
        mk = corner_minor(Lh, k)
        if is_zero_elem(mk):
            raise NotInBigCell(f"corner minor {k} of the unipotent factor vanishes")
        prods.append(corner_minor(w0, k) * inv_elem(mk))
    d = [prods[k] * inv_elem(prods[k - 1]) for k in range(n, 0, -1)]
    b = Mat(Lh.rows)
    for i in range(n):
        b.rows[i] = [d[i] * x for x in Lh.rows[i]]
    return b


# ---------------------------------------------------------------------------
# factoring a lower unipotent along a reduced word (cached formulas)

_FACTOR_CACHE = {}


def factor_formulas(n, word):
    """Sympy expressions m_k(e_jk) with y_word(word, m) matching entries e_jk.

    Solved once per (n, word) by greedy elimination: repeatedly find an
    entry equation linear in a single remaining unknown.
    """
    key = (n, tuple(word))
    if key in _FACTOR_CACHE:
        return _FACTOR_CACHE[key]
    N = len(word)
    ms = [sympy.Symbol(f"m{k}") for k in range(N)]
    es = {(i, j): sympy.Symbol(f"e{i}_{j}") for i in range(n) for j in range(i)}
    P = sympy.eye(n)
    for i, m in zip(word, ms):
        g = sympy.eye(n)
        g[i, i - 1] = m
        P = P * g
    equations = [
        sympy.Eq(P[i, j], es[(i, j)]) for i in range(n) for j in range(i)
    ]
    solutions = sympy.solve(equations, ms, dict=True)
    if len(solutions) != 1:
        raise FactorizationAmbiguity(
            f"factorization along {tuple(word)} has {len(solutions)} branches"
        )
    solved = solutions[0]
    if set(solved) != set(ms):
        raise FactorizationAmbiguity(
            f"factorization along {tuple(word)} is underdetermined"
        )
    out = [sympy.together(solved[m]) for m in ms]
    _FACTOR_CACHE[key] = out
    return out


def _eval_sympy(expr, env, one):
    """Evaluate a sympy expression over an arbitrary field."""
    if expr.is_Symbol:
        return env[expr.name]
    if expr.is_Integer:
        return one * int(expr)
    if expr.is_Rational:
        return one * Fraction(int(expr.p), int(expr.q))
    if expr.is_Add:
        out = None
        for a in expr.args:
            v = _eval_sympy(a, env, one)
            out = v if out is None else out + v
        return out
    if expr.is_Mul:
        out = None
        for a in expr.args:
            v = _eval_sympy(a, env, one)
            out = v if out is None else out * v
        return out
    if expr.is_Pow:
        base, k = expr.args
        k = int(k)
        v = _eval_sympy(base, env, one)
        if k < 0:
            return inv_elem(v) ** (-k)
        return v ** k
    raise ValueError(f"unsupported sympy node {expr.func}")


def factor_lower_unipotent(b: Mat, word):
    """Return m_1..m_N with y_word(word, m) = b (b lower unipotent)."""
    n = b.n
    one = b.rows[0][0]
    env = {f"e{i}_{j}": b.rows[i][j] for i in range(n) for j in range(i)}
    return [_eval_sympy(f, env, one) for f in factor_formulas(n, word)]


def peel_x_minus(b: Mat, word, check=True, close_tol=1e-9):
    """Write b = x_{-i_1}(z_1) ... x_{-i_N}(z_N); return the z list.

    b must be lower triangular; the unipotent part is factored along the
    word and the torus bookkeeping x_{-i}(z) = y_i(z) alpha_i^vee(1/z)
    converts the y-arguments to z's.  The accumulated coroot product must
    reproduce the diagonal of b exactly (symbolic) or closely (numeric).
    """
    n = b.n
    one = b.rows[0][0] * inv_elem(b.rows[0][0])
    t = [b.rows[k][k] for k in range(n)]
    tinv = [inv_elem(x) for x in t]
    nlow = Mat([[b.rows[i][j] * tinv[j] for j in range(n)] for i in range(n)])
    ms = factor_lower_unipotent(nlow, word)
    tau = [one] * n
    zs = []
    for i, m in zip(word, ms):
        z = m * tau[i - 1] * inv_elem(tau[i])
        zs.append(z)
        zi = inv_elem(z)
        tau[i - 1] = tau[i - 1] * zi
        tau[i] = tau[i] * z
    if check:
        # tau must equal diag(b) exactly (corner-minor normalization)
        for k in range(n):
            diff_ok = _elems_agree(tau[k], t[k], close_tol)
            if not diff_ok:
                raise NotInBigCell("torus bookkeeping mismatch in peeling")
    return zs


def _elems_agree(a, b, tol):
    if hasattr(a, "close_to"):
        return a.close_to(b, tol=tol)
    return a == b


# ---------------------------------------------------------------------------
# the special chart theta_M


def _kappa_path(n, i):
    """Arrow pairs of a path v_nn -> v_ii: left along row n, up column i."""
    path = []
    for j in range(n, i, -1):
        path.append(((n, j), (n, j - 1)))
    for r in range(n, i, -1):
        path.append(((r, i), (r - 1, i)))
    return path


def kappa_values(n, z):
    """kappa_i = product of arrow values along a path v_nn -> v_ii."""
    one = None
    for v in z.values():
        one = v * inv_elem(v)
        break
    out = []
    for i in range(1, n + 1):
        acc = one
        for tail, head in _kappa_path(n, i):
            acc = acc * z[(tail, head)]
        out.append(acc)
    return out


def vertex_coordinates(n, z):
    """x_v = product of arrow values along a path v_nn -> v (x_{v_nn}=1)."""
    one = None
    for v in z.values():
        one = v * inv_elem(v)
        break
    out = {}
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            # path: left along row n to column j, then up column j to row i
            acc = one
            for c in range(n, j, -1):
                acc = acc * z[((n, c), (n, c - 1))]
            for r in range(n, i, -1):
                acc = acc * z[((r, j), (r - 1, j))]
            out[(i, j)] = acc
    return out


def theta_vertical_order(n):
    """Vertical arrows in chart product order: per column, bottom to top."""
    out = []
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            out.append(((i + 1, j), (i, j)))
    return out


def theta_M(n, z):
    """The chart matrix: Phi(kappa(z), x_{i0}(vertical arrow values)).

    z maps (tail, head) vertex pairs to field elements for every arrow
    (use complete_arrows to fill dependent horizontals first).
    """
    one = None
    for v in z.values():
        one = v * inv_elem(v)
        break
    word = standard_word(n)
    order = theta_vertical_order(n)
    u = Mat.identity(n, one)
    for i, (tail, head) in zip(word, order):
        u = u @ x_i(n, i, z[(tail, head)], one)
    b, _u2 = phi(kappa_values(n, z), u)
    return b


def theta_M_factors(n, z):
    """(b, u1, q, u2) of the chart point (b = u1 w0 q^{-1} u2)."""
    one = None
    for v in z.values():
        one = v * inv_elem(v)
        break
    word = standard_word(n)
    order = theta_vertical_order(n)
    u = Mat.identity(n, one)
    for i, (tail, head) in zip(word, order):
        u = u @ x_i(n, i, z[(tail, head)], one)
    q = kappa_values(n, z)
    b, u2 = phi(q, u)
    return b, u, q, u2


def complete_arrows(quiver, independent_values):
    """Fill the dependent horizontal arrows from box relations.

    independent_values maps (tail, head) for every vertical and bottom-row
    horizontal arrow; boxes give z_a4 = z_a1 z_a2 / z_a3 walking upward.
    """
    z = dict(independent_values)
    # boxes with lower rows first so a1 is always known when we reach a4
    for a1, a2, a3, a4 in sorted(quiver.boxes, key=lambda b: -b[0].tail[0]):
        k1 = (a1.tail, a1.head)
        k2 = (a2.tail, a2.head)
        k3 = (a3.tail, a3.head)
        z[(a4.tail, a4.head)] = z[k1] * z[k2] * inv_elem(z[k3])
    return z
