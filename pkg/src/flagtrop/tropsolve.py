"""Exact solver for the tropical critical point and its combinatorics.

The layered algorithm: put the weight lift on the stars, then repeatedly
take all directed paths between already-resolved vertices avoiding used
arrows, freeze the arrows of every slope-minimizing path at the minimum
slope, and propagate vertex values.  The resulting vertex/arrow values
satisfy the min-in = min-out conditions exactly (rational arithmetic).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch, NotDominant, NotIdeal
from .quiver import Quiver, build_quiver
from .rationals import lcm_denominator, rat, rat_str
from .weights import DominantWeight, ParabolicType, lambda_P, positive_roots


class TropicalPoint:
    """Vertex values delta, arrow values sigma, bullet minima pi."""

    def __init__(self, quiver: Quiver, delta, layers=None):
        self.quiver = quiver
        self.delta = dict(delta)
        self.sigma = {
            a: self.delta[a.head] - self.delta[a.tail] for a in quiver.arrows
        }
        self.pi = {}
        for v in quiver.bullets:
            mi = min(self.sigma[a] for a in quiver.incoming(v))
            mo = min(self.sigma[a] for a in quiver.outgoing(v))
            if mi != mo:
                raise NotIdeal(f"min-in {mi} != min-out {mo} at vertex {v}")
            self.pi[v] = mi
        self.layers = layers  # list of (kappa, V_bullets, arrows) or None

    @property
    def grid_denominator(self):
        return lcm_denominator(self.sigma.values())

    def star_lift(self):
        return tuple(self.delta[(i, i)] for i in range(1, self.quiver.n + 1))

    def sigma_letters(self):
        """For n=3: the six arrow values in the order (a..f)."""
        return tuple(self.sigma[a] for a in self.quiver.letter_arrows())

    def to_json(self):
        return {
            "n": self.quiver.n,
            "delta": {f"v{i}{j}": rat_str(x) for (i, j), x in sorted(self.delta.items())},
            "sigma": {a.name: rat_str(s) for a, s in sorted(self.sigma.items(), key=lambda kv: kv[0].name)},
            "pi": {f"v{i}{j}": rat_str(x) for (i, j), x in sorted(self.pi.items())},
        }


def check_eq52(quiver: Quiver, delta) -> bool:
    """Do the vertex values satisfy min-in = min-out at every bullet?"""
    for v in quiver.bullets:
        mi = min(delta[a.head] - delta[a.tail] for a in quiver.incoming(v))
        mo = min(delta[a.head] - delta[a.tail] for a in quiver.outgoing(v))
        if mi != mo:
            return False
    return True


def solve_tropical(lam: DominantWeight) -> TropicalPoint:
    q = build_quiver(lam.n)
    delta = {(i, i): lam.lift[i - 1] for i in range(1, lam.n + 1)}
    resolved = set(q.stars)
    assigned = {}  # arrow -> sigma
    layers = []
    prev_kappa = None
    while len(assigned) < len(q.arrows):
        paths = q.enumerate_paths(resolved, forbidden_arrows=assigned.keys())
        assert paths, "no admissible paths but unassigned arrows remain"
        slopes = [
            (delta[p.end] - delta[p.start]) / p.length for p in paths
        ]
        kappa = min(slopes)
        assert prev_kappa is None or kappa > prev_kappa, (
            "layer slopes failed to strictly increase"
        )
        new_arrows, new_vertices = set(), set()
        for p, s in zip(paths, slopes):
            if s == kappa:
                new_arrows.update(p.arrows)
                new_vertices.update(v for v in p.vertices() if v not in resolved)
        for a in new_arrows:
            assigned[a] = kappa
        # propagate vertex values along the freshly frozen arrows
        changed = True
        while changed:
            changed = False
            for a in new_arrows:
                t_known, h_known = a.tail in delta, a.head in delta
                if t_known and not h_known:
                    delta[a.head] = delta[a.tail] + kappa
                    changed = True
                elif h_known and not t_known:
                    delta[a.tail] = delta[a.head] - kappa
                    changed = True
                elif t_known and h_known:
                    assert delta[a.head] - delta[a.tail] == kappa, (
                        f"inconsistent propagation at {a}"
                    )
        assert all(v in delta for v in new_vertices), "propagation incomplete"
        resolved.update(new_vertices)
        layers.append((kappa, frozenset(new_vertices), frozenset(new_arrows)))
        prev_kappa = kappa
    return TropicalPoint(q, delta, layers=layers)


# ---------------------------------------------------------------------------
# Ideal fillings


class IdealFilling:
    """Upper-triangular array {n_ij} with the ideal max-property."""

    def __init__(self, n, entries):
        self.n = n
        self.entries = {k: rat(v) for k, v in entries.items()}
        for i, j in positive_roots(n):
            if (i, j) not in self.entries:
                raise DimensionMismatch(f"missing entry ({i},{j})")
            if self.entries[(i, j)] < 0:
                raise NotIdeal(f"negative entry at ({i},{j})")
        for i, j in positive_roots(n):
            if j - i >= 2:
                expect = max(self.entries[(i + 1, j)], self.entries[(i, j - 1)])
                if self.entries[(i, j)] != expect:
                    raise NotIdeal(
                        f"n_{i}{j} = {self.entries[(i, j)]} != "
                        f"max(n_{i+1}{j}, n_{i}{j-1}) = {expect}"
                    )

    def __getitem__(self, key):
        return self.entries[key]

    def __eq__(self, other):
        return isinstance(other, IdealFilling) and self.entries == other.entries

    def first_diagonal(self):
        return tuple(self.entries[(i, i + 1)] for i in range(1, self.n))

    def weight(self) -> DominantWeight:
        lift = [Fraction(0)] * self.n
        for (i, j), v in self.entries.items():
            lift[i - 1] += v
            lift[j - 1] -= v
        return DominantWeight(lift)

    def is_integral(self):
        return all(v.denominator == 1 for v in self.entries.values())

    def rows(self):
        """Row-major upper triangle as nested lists (JSON shape)."""
        return [
            [rat_str(self.entries[(i, j)]) for j in range(i + 1, self.n + 1)]
            for i in range(1, self.n)
        ]

    def pretty(self):
        width = max(len(rat_str(v)) for v in self.entries.values())
        lines = []
        for i in range(1, self.n):
            pad = " " * ((width + 1) * (i - 1))
            cells = " ".join(
                rat_str(self.entries[(i, j)]).rjust(width)
                for j in range(i + 1, self.n + 1)
            )
            lines.append(pad + cells)
        return "\n".join(lines)

    def to_json(self):
        return self.rows()


def ideal_filling(lam: DominantWeight) -> IdealFilling:
    tp = solve_tropical(lam)
    entries = {(i, j): tp.pi[(j, i)] for i, j in positive_roots(lam.n)}
    f = IdealFilling(lam.n, entries)
    assert f.weight() == lam, "filling weight mismatch"
    return f


def filling_to_tropical(f: IdealFilling) -> TropicalPoint:
    """Inverse bijection: vertex values from horizontal/vertical hook sums.

    Output carries the zero-sum lift on the stars.
    """
    n = f.n
    q = build_quiver(n)
    delta = {}
    for r, c in q.vertices:  # vertex v_rc corresponds to n-index pair (c, r)
        i, j = c, r
        hh = sum((f.entries[(i, k)] for k in range(j + 1, n + 1)), Fraction(0))
        hv = sum((f.entries[(k, j)] for k in range(1, i)), Fraction(0))
        delta[(r, c)] = hh - hv
    return TropicalPoint(q, delta)


def is_integral(lam: DominantWeight) -> bool:
    return ideal_filling(lam).is_integral()


# ---------------------------------------------------------------------------
# Chain decomposition into parabolic weights


def chain_decomposition(lam: DominantWeight):
    """Ordered [(ParabolicType, coefficient)] with sum c_P lambda_P = lam."""
    f = ideal_filling(lam)
    n = lam.n
    active = set(range(1, n))
    chain = []
    m_prev = Fraction(0)
    while active:
        m = min(f.entries[(i, i + 1)] for i in active)
        c = m - m_prev
        if c > 0:
            chain.append((ParabolicType(n, set(range(1, n)) - active), c))
        active = {i for i in active if f.entries[(i, i + 1)] > m}
        m_prev = m
    acc = [Fraction(0)] * n
    for p, c in chain:
        lp = lambda_P(p).zero_sum_lift()
        acc = [a + c * x for a, x in zip(acc, lp)]
    assert DominantWeight(acc) == lam, "chain reconstruction failed"
    return chain


# ---------------------------------------------------------------------------
# FFL polytope


def dyck_paths(n):
    """All root sequences with simple endpoints and unit up/right steps."""
    out = []

    def extend(seq):
        i, j = seq[-1]
        if j == i + 1:
            out.append(tuple(seq))
        nxt = []
        if i + 1 < j:
            nxt.append((i + 1, j))
        if j + 1 <= n:
            nxt.append((i, j + 1))
        for step in nxt:
            seq.append(step)
            extend(seq)
            seq.pop()

    for k in range(1, n):
        extend([(k, k + 1)])
    return out


def ffl_check(lam: DominantWeight, point, report=False):
    """Membership of a point of R^{Delta+} in the FFL polytope of lam.

    `point`: dict {(i,j): value} or sequence ordered like positive_roots(n).
    Returns bool, or (bool, violations) when report=True.
    """
    n = lam.n
    roots = positive_roots(n)
    if not isinstance(point, dict):
        if len(point) != len(roots):
            raise DimensionMismatch(
                f"point has {len(point)} coordinates, expected {len(roots)}"
            )
        point = dict(zip(roots, point))
    if set(point) != set(roots):
        raise DimensionMismatch("point keys do not match the positive roots")
    m = lam.fundamental_coefficients()
    violations = []
    for r, v in point.items():
        if rat(v) < 0:
            violations.append(("nonnegativity", r, rat_str(rat(v))))
    for p in dyck_paths(n):
        i = p[0][0]
        j = p[-1][0]
        total = sum((rat(point[b]) for b in p), Fraction(0))
        bound = sum(m[i - 1 : j], Fraction(0))
        if total > bound:
            violations.append(
                ("dyck", tuple(p), f"{rat_str(total)} > {rat_str(bound)}")
            )
    ok = not violations
    return (ok, violations) if report else ok


# ---------------------------------------------------------------------------
# Uniqueness probe (exhaustive grid search at small rank)


def count_grid_solutions(lam: DominantWeight, grid_denominator=None):
    """Exhaustively count vertex assignments on the grid (1/M)Z inside the
    box [0, l1 - ln] solving the min-in = min-out conditions.

    Uses the canonical lift.  Intended for n = 3 probes.
    """
    lift = lam.canonical_lift()
    n = lam.n
    q = build_quiver(n)
    tp = solve_tropical(DominantWeight(lift))
    M = grid_denominator or tp.grid_denominator
    span = lift[0] - lift[-1]
    steps = int(span * M)
    values = [Fraction(k, M) for k in range(steps + 1)]
    bullets = q.bullets
    delta = {(i, i): lift[i - 1] for i in range(1, n + 1)}
    count = 0
    found = []

    def search(idx):
        nonlocal count
        if idx == len(bullets):
            if check_eq52(q, delta):
                count += 1
                found.append({v: delta[v] for v in bullets})
            return
        v = bullets[idx]
        for val in values:
            delta[v] = val
            search(idx + 1)
        del delta[v]

    search(0)
    return count, found
